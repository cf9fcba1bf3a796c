#pragma once

#include <string>
#include <vector>

#include "fancohom/lattice.hpp"

namespace fancohom {

struct ConeError : std::runtime_error {
    explicit ConeError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * A strongly convex rational polyhedral cone in N = Z^ambient.
 *
 * Normal form: `rays` holds exactly the primitive generators of the extreme
 * rays, sorted lexicographically, so equal cones compare equal memberwise.
 * The H-description is split into `span_normals` (a canonical basis of the
 * annihilator of the linear span, cutting out span(c) as equations) and
 * `facet_normals` (one inequality per facet, valid on the span).  For the
 * zero cone both ray and facet lists are empty and the span equations cut
 * out the origin.
 */
struct Cone {
    Index ambient = 0;
    std::vector<IntVec> rays;
    int dim = 0;
    bool simplicial = true;
    std::vector<IntVec> facet_normals;
    std::vector<IntVec> span_normals;

    bool is_zero() const { return rays.empty(); }
    bool contains(const IntVec& x) const;
    /** Canonical string key: ray matrix entries; equal iff cones are equal. */
    std::string key() const;
    bool operator==(const Cone& other) const { return key() == other.key() && ambient == other.ambient; }
};

/**
 * Builds the cone generated by `gens`: deduplicates and primitivizes the
 * generators, drops non-extreme ones, computes dimension, facet and span
 * normals, and the simplicial flag.  Rejects zero generators and cones
 * containing a line.  An empty generator list yields the zero cone.
 */
Cone make_cone(Index ambient, const std::vector<IntVec>& gens);

Cone zero_cone(Index ambient);

/** All faces of c, including the zero cone and c itself. */
std::vector<Cone> faces(const Cone& c);

/**
 * Extreme-ray description of {x : E x = 0, <a, x> >= 0 for all a in
 * inequalities} computed by incremental halfspace insertion with exact
 * integer pivots.  `lineality` spans the largest linear subspace contained
 * in the solution set; `rays` are primitive extreme generators modulo that
 * subspace.
 */
struct DoubleDescription {
    std::vector<IntVec> lineality;
    std::vector<IntVec> rays;
};

DoubleDescription double_description(Index ambient,
                                     const std::vector<IntVec>& equalities,
                                     const std::vector<IntVec>& inequalities);

/** Intersection of two cones in the same ambient lattice. */
Cone intersect(const Cone& a, const Cone& b);

}  // namespace fancohom
