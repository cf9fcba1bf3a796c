#pragma once

#include <vector>

#include "fancohom/lattice.hpp"

namespace fancohom {

/* Coordinates on exterior powers of a free lattice Z^n always refer to the
 * basis e_S = e_{s1} ^ ... ^ e_{sk} indexed by the k-subsets S of {0..n-1}
 * in lexicographic order. */

std::vector<std::vector<int>> k_subsets(int n, int k);

long long wedge_dim(Index n, int k);

/** Coordinates of v_1 ^ ... ^ v_k for the rows v_i of `vectors` (k x n). */
IntVec wedge_coordinates(const IntMat& vectors);

/** Matrix of the induced map on k-th exterior powers: entries are the k x k
 *  minors of `a`.  Shape C(rows,k) x C(cols,k). */
IntMat wedge_compound(const IntMat& a, int k);

/**
 * Interior product with an element whose pairing with the i-th basis vector
 * is values(i), applied to an element of the k-th exterior power given by
 * `coords`.  Result lies in the (k-1)-st exterior power.
 */
IntVec interior_product_coords(const IntVec& values, int k, const IntVec& coords);

/** Coordinates of a ^ b, for a of degree k and b of degree l over Z^n. */
IntVec wedge_product_coords(int n, int k, const IntVec& a, int l, const IntVec& b);

/** Integer matrix c with sub = c * super, rows expressed row by row. */
IntMat basis_change(const IntMat& sub, const IntMat& super);

/**
 * Matrix, in wedge coordinates, of the interior product with `with` as a map
 * Lambda^k(source lattice) -> Lambda^(k-1)(target lattice).  The lattices are
 * given by their basis rows; the target must contain every contracted value.
 */
IntMat contraction_block(const IntMat& source_basis, const IntMat& target_basis,
                         const IntVec& with, int k);

}  // namespace fancohom
