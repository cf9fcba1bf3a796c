#pragma once

#include <vector>

#include "fancohom/exterior.hpp"
#include "fancohom/fan.hpp"

namespace fancohom {

struct ComplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* The p-th cochain complex of a fan: C^q is the direct sum, over the
 * q-dimensional cones sigma, of Lambda^(p-q) of the sublattice of functionals
 * vanishing on sigma, for 0 <= q <= p.  The coboundary acts blockwise by
 * interior products with the primitive class of tau in N/(N cap R sigma). */

struct ComplexBlock {
    Index row_cone = 0;    // fan index, dimension q + 1
    Index col_cone = 0;    // fan index, dimension q
    Index row_offset = 0;
    Index col_offset = 0;
    Index rows = 0;
    Index cols = 0;
};

struct CochainComplex {
    Index ambient_rank = 0;
    int p = 0;
    std::vector<Index> ranks;                 // ranks[q], q = 0..p
    std::vector<IntMat> d;                    // d[q] : C^q -> C^(q+1), q = 0..p-1
    std::vector<std::vector<Index>> cones;    // cones[q]: fan indices in block order
    std::vector<std::vector<Index>> offsets;  // offsets[q][i]: block start inside C^q
    std::vector<std::vector<ComplexBlock>> blocks;

    int degrees() const { return static_cast<int>(ranks.size()); }
    Index rank(int q) const {
        return (q < 0 || q >= degrees()) ? 0 : ranks[static_cast<size_t>(q)];
    }
    /** d[q] padded with empty matrices outside 0..p-1. */
    IntMat differential(int q) const;
};

/**
 * Build the complex for the fan, or for the sub- or quotient complex carried
 * by a subset of its cones (`only`, ascending fan indices) when the subset is
 * closed upward or downward under the face relation.
 */
CochainComplex build_ishida(const Fan& f, int p, const std::vector<Index>* only = nullptr);

/* Blockwise short exact sequence splitting a fan's complex along the star of
 * a ray: star cones give a subcomplex, the other cones the quotient. */
struct SubcomplexSequence {
    CochainComplex star;
    CochainComplex full;
    CochainComplex remainder;
    std::vector<IntMat> inclusion;    // inclusion[q] : star.C^q -> full.C^q
    std::vector<IntMat> restriction;  // restriction[q] : full.C^q -> remainder.C^q
};
SubcomplexSequence subcomplex_sequence(const Fan& f, Index rho, int p);

/* Degree shifting isomorphism onto the star subcomplex: the complex of the
 * collapsed star fan, one exterior degree and one cohomological degree down,
 * maps isomorphically onto the star part via pullback along the projection. */
struct ShiftIso {
    QuotientFan quotient;
    CochainComplex source;          // complex of quotient.fan at p - 1
    CochainComplex target;          // star part of the fan's complex at p
    std::vector<IntMat> maps;       // maps[q] : source.C^(q-1) -> target.C^q, q = 0..p
};
ShiftIso star_shift_iso(const Fan& f, Index rho, int p);

}  // namespace fancohom
