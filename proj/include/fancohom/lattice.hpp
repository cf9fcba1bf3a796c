#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace fancohom {

// Expression templates stay off so the scalars behave as plain value types
// inside Eigen expressions.
using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

using IntMat = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

struct LatticeError : std::runtime_error {
    explicit LatticeError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Row-style Hermite normal form: h = u * a with u unimodular, h in row
 * echelon form with positive pivots and entries above each pivot reduced
 * into [0, pivot).  The pair (h, u) is uniquely determined by a up to the
 * non-pivot rows of u; the computation is deterministic.
 */
struct HermiteForm {
    IntMat h;
    IntMat u;
    std::vector<Index> pivot_columns;

    Index rank() const { return static_cast<Index>(pivot_columns.size()); }
};

HermiteForm hermite_form(const IntMat& a);

/**
 * Smith normal form: u * a * v = d with u, v unimodular and d diagonal with
 * nonnegative entries satisfying d(0,0) | d(1,1) | ...  Both the identity
 * u*a*v = d and the divisibility chain are re-checked exactly before the
 * result is returned.
 */
struct SmithForm {
    IntMat u;
    IntMat d;
    IntMat v;

    /** Nonzero diagonal entries, in divisibility order. */
    std::vector<Integer> invariant_factors() const;
    Index rank() const;
};

SmithForm smith_form(const IntMat& a);

/**
 * Basis of the integer kernel {x in Z^n : a x = 0}, returned as the columns
 * of an n x k matrix.  The kernel of an integer matrix is always a saturated
 * sublattice, so the columns extend to a basis of Z^n.  The columns are the
 * Hermite basis of the kernel lattice, so the result does not depend on the
 * elimination order; in particular the kernel of a coordinate projection
 * comes out as the remaining coordinate axes in order.
 */
IntMat kernel_basis(const IntMat& a);

/** Exact rank via Hermite elimination over Z. */
Index integer_rank(const IntMat& a);

/**
 * Rank over Q by plain fraction-full Gaussian elimination.  Deliberately
 * independent of the Hermite/Smith routines; used as a cross-check.
 */
Index rational_rank(const IntMat& a);
Index rational_rank(const RatMat& a);

/**
 * Saturation: basis of (Q-span of the rows) intersected with Z^n, returned
 * as rows in canonical (Hermite) form.  An empty input yields a 0 x n
 * result.
 */
IntMat saturate_rows(const IntMat& rows);

/**
 * Projection of Z^n onto Z^(n-k) whose kernel is exactly the row span of
 * `saturated_rows` (k independent rows spanning a saturated sublattice;
 * anything else is rejected, since the quotient would have torsion or the
 * kernel would be too small).  The returned (n-k) x n matrix is surjective
 * and canonical; collapsing the span of trailing coordinate axes projects
 * onto the leading coordinates.
 */
IntMat quotient_projection(Index ambient, const IntMat& saturated_rows);

/** v divided by the gcd of its entries; rejects the zero vector. */
IntVec primitive(const IntVec& v);

/**
 * Exact integer solution of a x = b, if one exists.  When the columns of a
 * are independent the solution is unique.
 */
std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b);

/** Canonical (Hermite) basis, as rows, of the row span of `rows`. */
IntMat row_basis(const IntMat& rows);

/** Canonical basis, as rows, of {m : <m, v> = 0 for every row v of `rows`}. */
IntMat annihilator_basis(const IntMat& rows);

/** Exact determinant (fraction-free elimination); the empty matrix gives 1. */
Integer determinant(const IntMat& a);

bool is_zero(const IntMat& a);
bool is_zero(const RatMat& a);

Integer content(const IntVec& v);                 // gcd of entries (>= 0)
long long binomial(int n, int k);                  // 0 outside 0 <= k <= n
bool lex_less(const IntVec& a, const IntVec& b);   // entrywise lexicographic

IntMat rows_to_matrix(Index ambient, const std::vector<IntVec>& rows);
std::vector<IntVec> matrix_to_rows(const IntMat& m);
std::vector<IntVec> matrix_to_columns(const IntMat& m);

}  // namespace fancohom
