#pragma once

#include <stdexcept>
#include <string>

#include "fancohom/cohomology.hpp"

namespace fancohom {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Fan files: { "rank": r, "rays": [[int, ...], ...], "cones": [[ray index,
 * ...], ...] } with the maximal cones listed by 0-based ray index and the
 * zero cone implicit.  Emission is canonical (rays in the fan's own order,
 * indices ascending, cone lists sorted), so saving a loaded fan reproduces
 * the bytes. */
Fan fan_from_json(const std::string& text);
std::string fan_to_json(const Fan& f);

Fan load_fan(const std::string& path);
void save_fan(const Fan& f, const std::string& path);

/** One-line description, e.g. "complete simplicial, r=2, f-vector (1,3,3)". */
std::string fan_summary(const Fan& f);

/* Cohomology tables and verification reports, as JSON documents with stable
 * key order or as plain text.  Table entries are keyed "p,q" and only the
 * nonzero groups are listed; the Betti row is optional so the caller can
 * withhold it when its hypotheses are not met. */
std::string table_report_json(const CohomologyTable& t, int p_low, int p_high,
                              bool with_betti, const std::string& note = "");
std::string table_report_text(const CohomologyTable& t, int p_low, int p_high,
                              bool with_betti, const std::string& note = "");

std::string verify_report_json(const Report& rep);
std::string verify_report_text(const Report& rep);

/** Degree ranks, coboundary matrices and per-degree block layout. */
std::string complex_json(const CochainComplex& c);

}  // namespace fancohom
