#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fancohom/fan.hpp"

namespace fancohom {

/* Seeded corpus generators.  Every draw goes through a mt19937_64 owned by
 * the call, so a corpus is reproducible from its seed alone. */

/** Simplicial cones of rank up to `max_rank` with up to min(rank, 5) rays. */
std::vector<Cone> random_simplicial_cones(std::uint64_t seed, int count,
                                          Index max_rank = 5);

/** Complete simplicial rank-2 fan: iterated stellar subdivision of the
 *  projective plane fan. */
Fan random_complete_rank2_fan(std::uint64_t seed, int subdivisions);

/** Simplicial fan grown by greedy insertion of random small cones. */
Fan random_simplicial_fan(std::uint64_t seed, Index rank, int attempts);

struct FuzzFailure {
    std::uint64_t seed = 0;
    std::string property;
    std::string fan_json;
};

struct FuzzReport {
    int fans = 0;
    int checks = 0;
    std::vector<FuzzFailure> failures;
    bool ok() const { return failures.empty(); }
};

/* Property sweep over `count` random simplicial fans of the given rank:
 * the coboundary squares to zero, contraction blocks do not depend on the
 * choice of lift, the interior product satisfies the graded Leibniz rule,
 * Smith and Gaussian ranks agree with the Euler count, and cohomology is
 * invariant under input reordering and unimodular coordinate changes. */
FuzzReport run_property_suite(std::uint64_t seed, int count, Index rank);

}  // namespace fancohom
