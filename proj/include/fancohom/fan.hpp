#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fancohom/cone.hpp"

namespace fancohom {

struct FanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* A finite rational fan: a set of strongly convex cones closed under taking
 * faces, any two meeting in a common face.  Cones are stored sorted by
 * (dimension, ray matrix lex order), so indices are a canonical enumeration
 * and by_dim(q) lists each dimension contiguously. */
class Fan {
public:
    static Fan from_maximal(Index ambient, const std::vector<std::vector<IntVec>>& maximal);
    static Fan from_cones(Index ambient, const std::vector<Cone>& cones);

    Index ambient_rank() const { return ambient_; }
    Index size() const { return static_cast<Index>(cones_.size()); }
    const Cone& cone(Index i) const { return cones_.at(static_cast<size_t>(i)); }
    const std::vector<Cone>& cones() const { return cones_; }

    int max_dim() const;
    const std::vector<Index>& by_dim(int d) const;
    std::vector<long long> f_vector() const;

    std::optional<Index> find(const Cone& c) const;
    bool is_face(Index i, Index j) const;  // cone i is a face of cone j
    const std::vector<Index>& faces_of(Index i) const;
    std::vector<Index> facets_of(Index i) const;
    std::vector<Index> cofacets_of(Index i) const;
    std::vector<Index> maximal_indices() const;
    std::vector<Index> star(Index i) const;  // cones having cone i as a face

    bool is_complete() const;
    bool is_simplicial() const;

private:
    Index ambient_ = 0;
    std::vector<Cone> cones_;
    std::map<std::string, Index> index_;
    std::vector<std::vector<Index>> by_dim_;
    std::vector<std::vector<Index>> faces_;

    void finish(std::vector<Cone> cones);
};

Fan apply_unimodular(const Fan& f, const IntMat& g);

/* sigma < tau with dim tau = dim sigma + 1.  The image of tau in
 * N/(N cap R sigma) is a ray; `normal_class` is its primitive generator in
 * quotient coordinates and `lift` a fixed integral preimage in N. */
struct FacetIncidence {
    Index sigma = 0;
    Index tau = 0;
    IntVec normal_class;
    IntVec lift;
};
FacetIncidence facet_incidence(const Fan& f, Index sigma, Index tau);

/* Star of a ray collapsed along it: the image fan in N/(N cap R rho),
 * with the projection matrix and the star-to-quotient index correspondence. */
struct QuotientFan {
    Fan fan;
    IntMat projection;          // (r - dim rho) x r
    std::vector<Index> star;    // indices into the source fan, canonical order
    std::vector<Index> image;   // image[j] = index in `fan` of the image of star[j]
};
QuotientFan quotient_fan(const Fan& f, Index rho);

bool support_convex(const Fan& f);

/* Fan whose support is the whole space, obtained by coning the boundary of a
 * convex-support fan to one new ray. */
struct Completion {
    Fan fan;
    IntVec rho;  // generator of the added ray
};
Completion complete_from_convex(const Fan& f);

/* Fans over the graph of the piecewise linear function with value eta[i] on
 * the i-th ray of the base fan (rays in canonical order).  `flat` holds the
 * graph cones themselves, `upper` adds the cones over them, `full` closes up
 * with the cones below.  `rho` is the index in `full` of the downward ray. */
struct GraphFans {
    Fan flat;
    Fan upper;
    Fan full;
    Index rho = 0;
};
GraphFans graph_fans(const Fan& base, const std::vector<Integer>& eta);

Fan projective_space_fan(int r);
Fan hirzebruch_fan(const Integer& a);
Fan product_fan(const Fan& a, const Fan& b);
Fan gamma_fan(Index ambient, const std::vector<IntVec>& gens);

}  // namespace fancohom
