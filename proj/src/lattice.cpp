#include "fancohom/lattice.hpp"

#include <algorithm>

namespace fancohom {

namespace {

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

/* Locate, among rows rr..m-1 of column c, a nonzero entry of minimal
 * absolute value (lowest row index on ties).  Returns -1 if the column is
 * zero below rr. */
Index min_abs_row(const IntMat& h, Index rr, Index c) {
    Index best = -1;
    Integer best_abs = 0;
    for (Index i = rr; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Integer a = abs_int(h(i, c));
        if (best < 0 || a < best_abs) {
            best = i;
            best_abs = a;
        }
    }
    return best;
}

void swap_rows(IntMat& h, IntMat& u, Index i, Index j) {
    if (i == j) return;
    h.row(i).swap(h.row(j));
    u.row(i).swap(u.row(j));
}

void add_row_multiple(IntMat& h, IntMat& u, Index dst, Index src, const Integer& f) {
    if (f == 0) return;
    h.row(dst) += f * h.row(src);
    u.row(dst) += f * u.row(src);
}

void negate_row(IntMat& h, IntMat& u, Index i) {
    h.row(i) = -h.row(i);
    u.row(i) = -u.row(i);
}

}  // namespace

HermiteForm hermite_form(const IntMat& a) {
    const Index m = a.rows(), n = a.cols();
    HermiteForm out;
    out.h = a;
    out.u = IntMat::Identity(m, m);
    Index rr = 0;
    for (Index c = 0; c < n && rr < m; ++c) {
        // Euclid on the column: reduce until one nonzero entry remains.
        for (;;) {
            Index piv = min_abs_row(out.h, rr, c);
            if (piv < 0) break;
            swap_rows(out.h, out.u, rr, piv);
            bool clean = true;
            for (Index i = rr + 1; i < m; ++i) {
                if (out.h(i, c) == 0) continue;
                Integer q = out.h(i, c) / out.h(rr, c);  // truncated division
                add_row_multiple(out.h, out.u, i, rr, -q);
                if (out.h(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (out.h(rr, c) == 0) continue;
        if (out.h(rr, c) < 0) negate_row(out.h, out.u, rr);
        // Reduce entries above the pivot into [0, pivot).
        const Integer& p = out.h(rr, c);
        for (Index i = 0; i < rr; ++i) {
            Integer q = out.h(i, c) / p;
            if (out.h(i, c) - q * p < 0) q -= 1;  // floor division
            add_row_multiple(out.h, out.u, i, rr, -q);
        }
        out.pivot_columns.push_back(c);
        ++rr;
    }
    return out;
}

namespace {

void swap_cols(IntMat& d, IntMat& v, Index i, Index j) {
    if (i == j) return;
    d.col(i).swap(d.col(j));
    v.col(i).swap(v.col(j));
}

void add_col_multiple(IntMat& d, IntMat& v, Index dst, Index src, const Integer& f) {
    if (f == 0) return;
    d.col(dst) += f * d.col(src);
    v.col(dst) += f * v.col(src);
}

/* Position of a nonzero entry of minimal absolute value in the submatrix
 * with corner (t, t), or (-1, -1) if it is zero. */
std::pair<Index, Index> min_abs_entry(const IntMat& d, Index t) {
    std::pair<Index, Index> best{-1, -1};
    Integer best_abs = 0;
    for (Index i = t; i < d.rows(); ++i)
        for (Index j = t; j < d.cols(); ++j) {
            if (d(i, j) == 0) continue;
            Integer a = d(i, j) < 0 ? Integer(-d(i, j)) : d(i, j);
            if (best.first < 0 || a < best_abs) {
                best = {i, j};
                best_abs = a;
            }
        }
    return best;
}

}  // namespace

std::vector<Integer> SmithForm::invariant_factors() const {
    std::vector<Integer> out;
    Index k = std::min(d.rows(), d.cols());
    for (Index i = 0; i < k; ++i)
        if (d(i, i) != 0) out.push_back(d(i, i));
    return out;
}

Index SmithForm::rank() const {
    return static_cast<Index>(invariant_factors().size());
}

SmithForm smith_form(const IntMat& a) {
    const Index m = a.rows(), n = a.cols();
    SmithForm out;
    out.d = a;
    out.u = IntMat::Identity(m, m);
    out.v = IntMat::Identity(n, n);
    IntMat& d = out.d;

    const Index k = std::min(m, n);
    for (Index t = 0; t < k; ++t) {
        for (;;) {
            auto [pi, pj] = min_abs_entry(d, t);
            if (pi < 0) break;  // submatrix exhausted
            swap_rows(d, out.u, t, pi);
            swap_cols(d, out.v, t, pj);
            bool dirty = false;
            for (Index i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                add_row_multiple(d, out.u, i, t, -Integer(d(i, t) / d(t, t)));
                if (d(i, t) != 0) dirty = true;
            }
            for (Index j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                add_col_multiple(d, out.v, j, t, -Integer(d(t, j) / d(t, t)));
                if (d(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // Row and column are clear; enforce divisibility of the rest.
            bool fixed = false;
            for (Index i = t + 1; i < m && !fixed; ++i)
                for (Index j = t + 1; j < n && !fixed; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        add_row_multiple(d, out.u, t, i, Integer(1));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (d(t, t) < 0) negate_row(d, out.u, t);
    }

    if (!is_zero(IntMat(out.u * a * out.v - d))) throw LatticeError("smith_form: identity check failed");
    for (Index t = 0; t + 1 < k; ++t) {
        if (d(t, t) == 0 && d(t + 1, t + 1) != 0)
            throw LatticeError("smith_form: zero before nonzero on diagonal");
        if (d(t, t) != 0 && d(t + 1, t + 1) % d(t, t) != 0)
            throw LatticeError("smith_form: divisibility chain broken");
    }
    return out;
}

IntMat kernel_basis(const IntMat& a) {
    const Index m = a.rows(), n = a.cols();
    if (n == 0) return IntMat(0, 0);
    IntMat at = a.transpose();
    if (m == 0) at.resize(n, 0);  // kernel of an empty map is everything
    HermiteForm hf = hermite_form(at);
    const Index r = hf.rank();
    IntMat out(n, n - r);
    for (Index i = r; i < n; ++i) out.col(i - r) = hf.u.row(i).transpose();
    // The transform rows depend on the elimination order, so normalize to the
    // canonical Hermite basis of the kernel lattice.
    if (out.cols() > 0) out = hermite_form(IntMat(out.transpose())).h.transpose();
    return out;
}

Index integer_rank(const IntMat& a) { return hermite_form(a).rank(); }

Index rational_rank(const IntMat& a) {
    RatMat w(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) w(i, j) = Rational(a(i, j));
    return rational_rank(w);
}

Index rational_rank(const RatMat& a) {
    RatMat w = a;
    const Index m = w.rows(), n = w.cols();
    Index rank = 0;
    for (Index c = 0; c < n && rank < m; ++c) {
        Index piv = -1;
        for (Index i = rank; i < m; ++i)
            if (w(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        w.row(piv).swap(w.row(rank));
        for (Index i = rank + 1; i < m; ++i) {
            if (w(i, c) == 0) continue;
            Rational f = w(i, c) / w(rank, c);
            w.row(i) -= f * w.row(rank);
        }
        ++rank;
    }
    return rank;
}

IntMat row_basis(const IntMat& rows) {
    HermiteForm hf = hermite_form(rows);
    return hf.h.topRows(hf.rank());
}

IntMat annihilator_basis(const IntMat& rows) {
    return row_basis(IntMat(kernel_basis(rows).transpose()));
}

Integer determinant(const IntMat& a) {
    if (a.rows() != a.cols()) throw LatticeError("determinant: matrix must be square");
    const Index n = a.rows();
    if (n == 0) return 1;
    IntMat m = a;
    Integer sign = 1, prev = 1;
    for (Index k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            Index p = -1;
            for (Index i = k + 1; i < n; ++i)
                if (m(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            m.row(k).swap(m.row(p));
            sign = -sign;
        }
        for (Index i = k + 1; i < n; ++i)
            for (Index j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

IntMat saturate_rows(const IntMat& rows) {
    const Index n = rows.cols();
    if (rows.rows() == 0) return IntMat(0, n);
    // Orthogonal complement twice: Sat(L) = ker(ker(L .)^T).
    IntMat w = kernel_basis(rows);          // n x (n - rank)
    IntMat sat = kernel_basis(IntMat(w.transpose()));  // n x rank
    return row_basis(IntMat(sat.transpose()));
}

IntMat quotient_projection(Index ambient, const IntMat& saturated_rows) {
    const Index k = saturated_rows.rows();
    if (saturated_rows.cols() != ambient)
        throw LatticeError("quotient_projection: row length does not match ambient rank");
    if (k > 0) {
        SmithForm sf = smith_form(saturated_rows);
        if (sf.rank() != k)
            throw LatticeError("quotient_projection: rows are dependent");
        for (const Integer& f : sf.invariant_factors())
            if (f != 1)
                throw LatticeError("quotient_projection: sublattice is not saturated");
    }
    IntMat w = kernel_basis(saturated_rows.rows() == 0
                                ? IntMat(IntMat::Zero(0, ambient))
                                : saturated_rows);
    return w.transpose();  // (ambient - k) x ambient, surjective
}

IntVec primitive(const IntVec& v) {
    Integer g = content(v);
    if (g == 0) throw LatticeError("primitive: zero vector");
    IntVec out = v;
    for (Index i = 0; i < out.size(); ++i) out(i) /= g;
    return out;
}

std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b) {
    const Index m = a.rows(), n = a.cols();
    if (b.size() != m) throw LatticeError("solve_integer: size mismatch");
    IntMat at = a.transpose();
    if (n == 0) at.resize(0, m);
    HermiteForm hf = hermite_form(at);  // hf.h = hf.u * a^T, so a * hf.u^T = hf.h^T
    IntVec rhs = b;
    IntVec y = IntVec::Zero(n);
    for (Index j = 0; j < hf.rank(); ++j) {
        Index pc = hf.pivot_columns[j];
        const Integer& p = hf.h(j, pc);
        if (rhs(pc) % p != 0) return std::nullopt;
        y(j) = rhs(pc) / p;
        rhs -= y(j) * hf.h.row(j).transpose();
    }
    if (!is_zero(IntMat(rhs))) return std::nullopt;
    return IntVec(hf.u.transpose() * y);
}

bool is_zero(const IntMat& a) {
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) return false;
    return true;
}

bool is_zero(const RatMat& a) {
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) return false;
    return true;
}

Integer content(const IntVec& v) {
    Integer g = 0;
    for (Index i = 0; i < v.size(); ++i) g = boost::multiprecision::gcd(g, v(i));
    return g;
}

long long binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long out = 1;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

bool lex_less(const IntVec& a, const IntVec& b) {
    for (Index i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a(i) < b(i)) return true;
        if (a(i) > b(i)) return false;
    }
    return a.size() < b.size();
}

IntMat rows_to_matrix(Index ambient, const std::vector<IntVec>& rows) {
    IntMat out(static_cast<Index>(rows.size()), ambient);
    for (Index i = 0; i < out.rows(); ++i) {
        if (rows[i].size() != ambient)
            throw LatticeError("rows_to_matrix: inconsistent vector length");
        out.row(i) = rows[i].transpose();
    }
    return out;
}

std::vector<IntVec> matrix_to_rows(const IntMat& m) {
    std::vector<IntVec> out;
    out.reserve(m.rows());
    for (Index i = 0; i < m.rows(); ++i) out.push_back(m.row(i).transpose());
    return out;
}

std::vector<IntVec> matrix_to_columns(const IntMat& m) {
    std::vector<IntVec> out;
    out.reserve(m.cols());
    for (Index j = 0; j < m.cols(); ++j) out.push_back(m.col(j));
    return out;
}

}  // namespace fancohom
