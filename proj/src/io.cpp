#include "fancohom/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace fancohom {

namespace {

using ordered = nlohmann::ordered_json;

bool fits_int64(const Integer& x) {
    static const Integer lo(std::numeric_limits<long long>::min());
    static const Integer hi(std::numeric_limits<long long>::max());
    return x >= lo && x <= hi;
}

long long to_int64(const Integer& x, const char* what) {
    if (!fits_int64(x)) throw IoError(std::string(what) + " does not fit in 64 bits");
    return x.convert_to<long long>();
}

long long read_int(const ordered& v, const std::string& where) {
    if (!v.is_number_integer())
        throw IoError("fan file: " + where + " is not an integer");
    if (v.is_number_unsigned() &&
        v.get<unsigned long long>() >
            static_cast<unsigned long long>(std::numeric_limits<long long>::max()))
        throw IoError("fan file: " + where + " does not fit in 64 bits");
    return v.get<long long>();
}

const ordered& field(const ordered& doc, const char* name) {
    if (!doc.contains(name))
        throw IoError(std::string("fan file: missing field \"") + name + "\"");
    return doc.at(name);
}

std::string verdict_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "hypothesis_violation";
    }
}

ordered matrix_rows(const IntMat& m, const char* what) {
    ordered rows = ordered::array();
    for (Index i = 0; i < m.rows(); ++i) {
        ordered row = ordered::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(to_int64(m(i, j), what));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Fan fan_from_json(const std::string& text) {
    ordered doc;
    try {
        doc = ordered::parse(text);
    } catch (const ordered::exception& e) {
        throw IoError(std::string("fan file: ") + e.what());
    }
    if (!doc.is_object()) throw IoError("fan file: top level is not an object");

    long long rank = read_int(field(doc, "rank"), "\"rank\"");
    if (rank < 1 || rank > 64)
        throw IoError("fan file: \"rank\" must be between 1 and 64");

    const ordered& jrays = field(doc, "rays");
    if (!jrays.is_array()) throw IoError("fan file: \"rays\" is not an array");
    std::vector<IntVec> rays;
    for (size_t i = 0; i < jrays.size(); ++i) {
        const ordered& row = jrays[i];
        std::string where = "rays[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != static_cast<size_t>(rank))
            throw IoError("fan file: " + where + " is not an array of " +
                          std::to_string(rank) + " integers");
        IntVec v(rank);
        for (size_t k = 0; k < row.size(); ++k)
            v[static_cast<Index>(k)] =
                Integer(read_int(row[k], where + "[" + std::to_string(k) + "]"));
        rays.push_back(std::move(v));
    }

    const ordered& jcones = field(doc, "cones");
    if (!jcones.is_array()) throw IoError("fan file: \"cones\" is not an array");
    std::vector<std::vector<IntVec>> maximal;
    for (size_t i = 0; i < jcones.size(); ++i) {
        const ordered& lst = jcones[i];
        std::string where = "cones[" + std::to_string(i) + "]";
        if (!lst.is_array())
            throw IoError("fan file: " + where + " is not an array of ray indices");
        std::vector<IntVec> gens;
        for (size_t k = 0; k < lst.size(); ++k) {
            long long idx = read_int(lst[k], where + "[" + std::to_string(k) + "]");
            if (idx < 0 || idx >= static_cast<long long>(rays.size()))
                throw IoError("fan file: " + where + " refers to missing ray " +
                              std::to_string(idx));
            gens.push_back(rays[static_cast<size_t>(idx)]);
        }
        maximal.push_back(std::move(gens));
    }

    return Fan::from_maximal(static_cast<Index>(rank), maximal);
}

std::string fan_to_json(const Fan& f) {
    ordered doc;
    doc["rank"] = static_cast<long long>(f.ambient_rank());

    ordered jrays = ordered::array();
    std::map<std::string, long long> ray_index;
    for (Index i : f.by_dim(1)) {
        const Cone& c = f.cone(i);
        ordered row = ordered::array();
        for (Index k = 0; k < f.ambient_rank(); ++k)
            row.push_back(to_int64(c.rays[0][k], "ray coordinate"));
        ray_index[c.key()] = static_cast<long long>(jrays.size());
        jrays.push_back(std::move(row));
    }
    doc["rays"] = std::move(jrays);

    std::vector<std::vector<long long>> lists;
    for (Index m : f.maximal_indices()) {
        const Cone& c = f.cone(m);
        if (c.dim == 0) continue;  // the fan {0} has no cones to list
        std::vector<long long> ids;
        for (const IntVec& ray : c.rays)
            ids.push_back(ray_index.at(make_cone(f.ambient_rank(), {ray}).key()));
        std::sort(ids.begin(), ids.end());
        lists.push_back(std::move(ids));
    }
    std::sort(lists.begin(), lists.end());
    ordered jcones = ordered::array();
    for (const auto& l : lists) jcones.push_back(l);
    doc["cones"] = std::move(jcones);

    return doc.dump() + "\n";
}

Fan load_fan(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return fan_from_json(buf.str());
    } catch (const IoError& e) {
        throw IoError(path + ": " + e.what());
    }
}

void save_fan(const Fan& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << fan_to_json(f);
    if (!out.good()) throw IoError("failed while writing " + path);
}

std::string fan_summary(const Fan& f) {
    std::ostringstream os;
    bool complete = f.is_complete();
    bool simplicial = f.is_simplicial();
    if (complete && simplicial) os << "complete simplicial";
    else if (complete) os << "complete";
    else if (simplicial) os << "simplicial";
    else os << "general";
    os << ", r=" << f.ambient_rank() << ", f-vector (";
    std::vector<long long> fv = f.f_vector();
    for (size_t i = 0; i < fv.size(); ++i) os << (i ? "," : "") << fv[i];
    os << ")";
    return os.str();
}

std::string table_report_json(const CohomologyTable& t, int p_low, int p_high,
                              bool with_betti, const std::string& note) {
    ordered doc;
    doc["regime"] = "cohomology";
    doc["verdict"] = "pass";
    doc["rank"] = static_cast<long long>(t.ambient_rank);
    ordered table = ordered::object();
    for (int p = p_low; p <= p_high; ++p)
        for (int q = 0; q <= static_cast<int>(t.ambient_rank); ++q) {
            const CohomologyGroup& g = t.group(p, q);
            if (g.is_zero()) continue;
            ordered cell;
            cell["rank"] = static_cast<long long>(g.free_rank);
            ordered tor = ordered::array();
            for (const Integer& x : g.torsion) tor.push_back(to_int64(x, "torsion order"));
            cell["torsion"] = std::move(tor);
            table[std::to_string(p) + "," + std::to_string(q)] = std::move(cell);
        }
    doc["table"] = std::move(table);
    if (with_betti) {
        ordered betti = ordered::array();
        for (long long b : betti_numbers(t)) betti.push_back(b);
        doc["betti"] = std::move(betti);
    }
    if (!note.empty()) doc["note"] = note;
    return doc.dump(2) + "\n";
}

std::string table_report_text(const CohomologyTable& t, int p_low, int p_high,
                              bool with_betti, const std::string& note) {
    const int r = static_cast<int>(t.ambient_rank);
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> head(1);
    for (int q = 0; q <= r; ++q) head.push_back("q=" + std::to_string(q));
    grid.push_back(std::move(head));
    for (int p = p_low; p <= p_high; ++p) {
        std::vector<std::string> row{"p=" + std::to_string(p)};
        for (int q = 0; q <= r; ++q) row.push_back(to_string(t.group(p, q)));
        grid.push_back(std::move(row));
    }
    std::vector<size_t> width(grid[0].size(), 0);
    for (const auto& row : grid)
        for (size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());

    std::ostringstream os;
    os << "cohomology table, r=" << r << "\n";
    for (const auto& row : grid) {
        for (size_t j = 0; j < row.size(); ++j) {
            os << row[j];
            if (j + 1 < row.size()) os << std::string(width[j] - row[j].size() + 2, ' ');
        }
        os << "\n";
    }
    if (with_betti) {
        os << "betti (";
        std::vector<long long> b = betti_numbers(t);
        for (size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
        os << ")\n";
    }
    if (!note.empty()) os << "note: " << note << "\n";
    return os.str();
}

std::string verify_report_json(const Report& rep) {
    ordered doc;
    doc["regime"] = rep.regime;
    doc["verdict"] = verdict_string(rep.verdict);
    if (!rep.hypothesis_note.empty()) doc["hypothesis_note"] = rep.hypothesis_note;
    ordered checks = ordered::array();
    for (const CheckLine& c : rep.checks) {
        ordered jc;
        jc["name"] = c.name;
        jc["ok"] = c.ok;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        checks.push_back(std::move(jc));
    }
    doc["checks"] = std::move(checks);
    return doc.dump(2) + "\n";
}

std::string verify_report_text(const Report& rep) {
    std::ostringstream os;
    os << "regime: " << rep.regime << "\n";
    if (rep.verdict == Verdict::hypothesis_violation) {
        os << "hypothesis violation: " << rep.hypothesis_note << "\n";
        os << "verdict: HYPOTHESIS VIOLATION\n";
        return os.str();
    }
    for (const CheckLine& c : rep.checks) {
        os << (c.ok ? "  ok    " : "  FAIL  ") << c.name;
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << "\n";
    }
    os << "verdict: " << (rep.verdict == Verdict::pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string complex_json(const CochainComplex& c) {
    ordered doc;
    doc["rank"] = static_cast<long long>(c.ambient_rank);
    doc["p"] = c.p;
    ordered ranks = ordered::array();
    for (int q = 0; q < c.degrees(); ++q) ranks.push_back(static_cast<long long>(c.rank(q)));
    doc["ranks"] = std::move(ranks);
    ordered diffs = ordered::array();
    for (int q = 0; q + 1 < c.degrees(); ++q)
        diffs.push_back(matrix_rows(c.d[static_cast<size_t>(q)], "coboundary entry"));
    doc["differentials"] = std::move(diffs);
    ordered blocks = ordered::array();
    for (int q = 0; q < c.degrees(); ++q) {
        ordered level = ordered::array();
        const auto& cones = c.cones[static_cast<size_t>(q)];
        const auto& offsets = c.offsets[static_cast<size_t>(q)];
        for (size_t i = 0; i < cones.size(); ++i) {
            Index next = (i + 1 < cones.size()) ? offsets[i + 1] : c.rank(q);
            ordered jb;
            jb["cone"] = static_cast<long long>(cones[i]);
            jb["offset"] = static_cast<long long>(offsets[i]);
            jb["columns"] = static_cast<long long>(next - offsets[i]);
            level.push_back(std::move(jb));
        }
        blocks.push_back(std::move(level));
    }
    doc["blocks"] = std::move(blocks);
    return doc.dump(2) + "\n";
}

}  // namespace fancohom
