#pragma once

#include <vector>

#include "fancohom/cohomology.hpp"

namespace fancohom {

struct GridEntry {
    Index phi = 0;    // fan index of the big cone, dimension r - i
    Index sigma = 0;  // fan index of the face, dimension j
    Index offset = 0;
    Index dim = 0;
};

/* First quadrant double complex attached to a simplicial fan.  The summand of
 * K^(i,j) at a pair sigma < phi with dim phi = r - i and dim sigma = j is
 * Lambda^(p-j) of the functionals vanishing on sigma, tensored with the dual
 * orientation line of phi.  Horizontal arrows drop to facets of phi through
 * orientation ratios, vertical arrows are the coboundary contractions; the
 * two anticommute, so d' + d'' squares to zero on the total complex.  The
 * orientation ratios need not be integers, so everything is stored over Q. */
struct DoubleComplex {
    Index ambient_rank = 0;
    int p = 0;
    std::vector<std::vector<Index>> sizes;                 // [i][j], i <= r, j <= p
    std::vector<std::vector<std::vector<GridEntry>>> entries;
    std::vector<std::vector<RatMat>> horizontal_d;         // (i,j) -> (i+1,j)
    std::vector<std::vector<RatMat>> vertical_d;           // (i,j) -> (i,j+1)

    Index size(int i, int j) const;
    RatMat horizontal(int i, int j) const;  // zero map outside the stored grid
    RatMat vertical(int i, int j) const;
};

/**
 * Build the double complex.  The three identities (d')^2 = 0, (d'')^2 = 0
 * and d'd'' + d''d' = 0 are checked exactly on every cell before the result
 * is returned.
 */
DoubleComplex build_double_complex(const Fan& f, int p);

/**
 * The ratio c with n wedge gen(psi) = c gen(phi), where gen is the wedge of
 * the primitive ray generators in lex order and n the lifted facet class of
 * phi over psi.  Both sides span the same line in Lambda^k(Q^r), which is
 * re-checked entry by entry.
 */
Rational orientation_coefficient(const Fan& f, Index psi, Index phi);

/** Dimensions of the total complex, degree k = i + j running 0 .. r + p. */
std::vector<Index> total_sizes(const DoubleComplex& k);

/** Assembled differential d' + d'' from total degree `degree` to the next. */
RatMat total_differential(const DoubleComplex& k, int degree);

/** Cohomology dimensions of the total complex over Q. */
std::vector<Index> total_cohomology_ranks(const DoubleComplex& k);

/* For a complete simplicial fan: rows of the double complex are exact except
 * against the full-dimensional cones, columns are exact except in the bottom
 * row, and the total complex has the cohomology of the fan's own complex. */
Report verify_double_complex(const Fan& f, const VerifyOptions& opt = {});

}  // namespace fancohom
