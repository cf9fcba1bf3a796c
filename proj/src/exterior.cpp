#include "fancohom/exterior.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fancohom {

namespace {

std::map<std::vector<int>, Index> subset_index(const std::vector<std::vector<int>>& subsets) {
    std::map<std::vector<int>, Index> out;
    for (size_t i = 0; i < subsets.size(); ++i) out[subsets[i]] = static_cast<Index>(i);
    return out;
}

IntMat submatrix(const IntMat& a, const std::vector<int>& rows, const std::vector<int>& cols) {
    IntMat out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            out(static_cast<Index>(i), static_cast<Index>(j)) = a(rows[i], cols[j]);
    return out;
}

}  // namespace

std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<size_t>(i)] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++cur[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
    }
    return out;
}

long long wedge_dim(Index n, int k) {
    return binomial(static_cast<int>(n), k);
}

IntVec wedge_coordinates(const IntMat& vectors) {
    const int k = static_cast<int>(vectors.rows());
    const int n = static_cast<int>(vectors.cols());
    auto subsets = k_subsets(n, k);
    IntVec out(static_cast<Index>(subsets.size()));
    std::vector<int> all_rows;
    for (int i = 0; i < k; ++i) all_rows.push_back(i);
    for (size_t s = 0; s < subsets.size(); ++s)
        out(static_cast<Index>(s)) = determinant(submatrix(vectors, all_rows, subsets[s]));
    return out;
}

IntMat wedge_compound(const IntMat& a, int k) {
    auto row_sets = k_subsets(static_cast<int>(a.rows()), k);
    auto col_sets = k_subsets(static_cast<int>(a.cols()), k);
    IntMat out(static_cast<Index>(row_sets.size()), static_cast<Index>(col_sets.size()));
    for (size_t i = 0; i < row_sets.size(); ++i)
        for (size_t j = 0; j < col_sets.size(); ++j)
            out(static_cast<Index>(i), static_cast<Index>(j)) =
                determinant(submatrix(a, row_sets[i], col_sets[j]));
    return out;
}

IntVec interior_product_coords(const IntVec& values, int k, const IntVec& coords) {
    const int n = static_cast<int>(values.size());
    if (k < 1) throw LatticeError("interior_product_coords: degree must be at least 1");
    auto src = k_subsets(n, k);
    auto dst = k_subsets(n, k - 1);
    if (coords.size() != static_cast<Index>(src.size()))
        throw LatticeError("interior_product_coords: coordinate length mismatch");
    auto dst_index = subset_index(dst);
    IntVec out = IntVec::Zero(static_cast<Index>(dst.size()));
    for (size_t s = 0; s < src.size(); ++s) {
        if (coords(static_cast<Index>(s)) == 0) continue;
        for (size_t pos = 0; pos < src[s].size(); ++pos) {
            std::vector<int> rest = src[s];
            rest.erase(rest.begin() + static_cast<long>(pos));
            Integer term = values(src[s][pos]) * coords(static_cast<Index>(s));
            if (pos % 2 == 1) term = -term;
            out(dst_index.at(rest)) += term;
        }
    }
    return out;
}

IntVec wedge_product_coords(int n, int k, const IntVec& a, int l, const IntVec& b) {
    auto sa = k_subsets(n, k);
    auto sb = k_subsets(n, l);
    auto sc = k_subsets(n, k + l);
    if (a.size() != static_cast<Index>(sa.size()) || b.size() != static_cast<Index>(sb.size()))
        throw LatticeError("wedge_product_coords: coordinate length mismatch");
    auto c_index = subset_index(sc);
    IntVec out = IntVec::Zero(static_cast<Index>(sc.size()));
    for (size_t i = 0; i < sa.size(); ++i) {
        if (a(static_cast<Index>(i)) == 0) continue;
        for (size_t j = 0; j < sb.size(); ++j) {
            if (b(static_cast<Index>(j)) == 0) continue;
            std::vector<int> merged = sa[i];
            merged.insert(merged.end(), sb[j].begin(), sb[j].end());
            long inversions = 0;
            bool overlap = false;
            for (size_t x = 0; x < merged.size() && !overlap; ++x)
                for (size_t y = x + 1; y < merged.size(); ++y) {
                    if (merged[x] == merged[y]) { overlap = true; break; }
                    if (merged[x] > merged[y]) ++inversions;
                }
            if (overlap) continue;
            std::sort(merged.begin(), merged.end());
            Integer term = a(static_cast<Index>(i)) * b(static_cast<Index>(j));
            if (inversions % 2 == 1) term = -term;
            out(c_index.at(merged)) += term;
        }
    }
    return out;
}

IntMat basis_change(const IntMat& sub, const IntMat& super) {
    IntMat out(sub.rows(), super.rows());
    IntMat st = super.transpose();
    for (Index i = 0; i < sub.rows(); ++i) {
        auto c = solve_integer(st, IntVec(sub.row(i).transpose()));
        if (!c) throw LatticeError("basis_change: row not in the target lattice");
        out.row(i) = c->transpose();
    }
    return out;
}

IntMat contraction_block(const IntMat& source_basis, const IntMat& target_basis,
                         const IntVec& with, int k) {
    const Index a = source_basis.rows();
    if (k < 1) throw LatticeError("contraction_block: degree must be at least 1");
    if (k > static_cast<int>(a))
        return IntMat(static_cast<Index>(wedge_dim(target_basis.rows(), k - 1)), 0);
    IntVec values = IntVec::Zero(a);
    for (Index i = 0; i < a; ++i)
        for (Index j = 0; j < source_basis.cols(); ++j)
            values(i) += source_basis(i, j) * with(j);

    // Express the target wedge basis inside the source one, then solve the
    // contracted source coordinates back into target coordinates.
    IntMat change = wedge_compound(IntMat(basis_change(target_basis, source_basis).transpose()),
                                   k - 1);
    const Index cols = static_cast<Index>(wedge_dim(a, k));
    IntMat out(change.cols(), cols);
    IntVec unit = IntVec::Zero(cols);
    for (Index j = 0; j < cols; ++j) {
        unit(j) = 1;
        IntVec contracted = interior_product_coords(values, k, unit);
        unit(j) = 0;
        auto y = solve_integer(change, contracted);
        if (!y) throw LatticeError("contraction_block: value escapes the target lattice");
        out.col(j) = *y;
    }
    return out;
}

}  // namespace fancohom
