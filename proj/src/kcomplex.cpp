#include "fancohom/kcomplex.hpp"

#include <map>
#include <sstream>
#include <utility>

namespace fancohom {

namespace {

IntMat annihilator_rows(const Fan& f, Index i) {
    return rows_to_matrix(f.ambient_rank(), f.cone(i).span_normals);
}

void add_check(Report& rep, const std::string& name, bool ok, const std::string& detail = "") {
    rep.checks.push_back(CheckLine{name, ok, detail});
}

Report reject(const std::string& regime, const std::string& note) {
    Report rep;
    rep.regime = regime;
    rep.verdict = Verdict::hypothesis_violation;
    rep.hypothesis_note = note;
    return rep;
}

void settle(Report& rep) {
    rep.verdict = Verdict::pass;
    for (const CheckLine& c : rep.checks)
        if (!c.ok) rep.verdict = Verdict::fail;
}

}  // namespace

Index DoubleComplex::size(int i, int j) const {
    if (i < 0 || j < 0 || i >= static_cast<int>(sizes.size())) return 0;
    const auto& row = sizes[static_cast<size_t>(i)];
    if (j >= static_cast<int>(row.size())) return 0;
    return row[static_cast<size_t>(j)];
}

RatMat DoubleComplex::horizontal(int i, int j) const {
    if (i >= 0 && j >= 0 && i < static_cast<int>(horizontal_d.size()) &&
        j < static_cast<int>(horizontal_d[static_cast<size_t>(i)].size()))
        return horizontal_d[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return RatMat::Zero(size(i + 1, j), size(i, j));
}

RatMat DoubleComplex::vertical(int i, int j) const {
    if (i >= 0 && j >= 0 && i < static_cast<int>(vertical_d.size()) &&
        j < static_cast<int>(vertical_d[static_cast<size_t>(i)].size()))
        return vertical_d[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return RatMat::Zero(size(i, j + 1), size(i, j));
}

Rational orientation_coefficient(const Fan& f, Index psi, Index phi) {
    const FacetIncidence inc = facet_incidence(f, psi, phi);
    const Cone& small = f.cone(psi);
    const Cone& big = f.cone(phi);
    if (!small.simplicial || !big.simplicial)
        throw ComplexError("orientation_coefficient: both cones must be simplicial");

    const Index r = f.ambient_rank();
    std::vector<IntVec> lifted;
    lifted.reserve(small.rays.size() + 1);
    lifted.push_back(inc.lift);
    for (const IntVec& ray : small.rays) lifted.push_back(ray);

    const IntVec numer = wedge_coordinates(rows_to_matrix(r, lifted));
    const IntVec denom = wedge_coordinates(rows_to_matrix(r, big.rays));

    Rational c = 0;
    bool found = false;
    for (Index t = 0; t < denom.size() && !found; ++t)
        if (denom(t) != 0) {
            c = Rational(numer(t)) / Rational(denom(t));
            found = true;
        }
    if (!found) throw ComplexError("orientation_coefficient: degenerate generator");
    for (Index t = 0; t < denom.size(); ++t)
        if (Rational(numer(t)) != c * Rational(denom(t)))
            throw ComplexError("orientation_coefficient: wedges are not proportional");
    return c;
}

DoubleComplex build_double_complex(const Fan& f, int p) {
    if (p < 0) throw ComplexError("double complex: negative exterior degree");
    if (!f.is_simplicial()) throw ComplexError("double complex: the fan must be simplicial");

    const int r = static_cast<int>(f.ambient_rank());
    DoubleComplex K;
    K.ambient_rank = r;
    K.p = p;
    const size_t I = static_cast<size_t>(r) + 1;
    const size_t J = static_cast<size_t>(p) + 1;
    K.sizes.assign(I, std::vector<Index>(J, 0));
    K.entries.assign(I, std::vector<std::vector<GridEntry>>(J));

    // Offsets of the (phi, sigma) summands, cell by cell.
    std::vector<std::vector<std::map<std::pair<Index, Index>, size_t>>> where(
        I, std::vector<std::map<std::pair<Index, Index>, size_t>>(J));

    for (int i = 0; i <= r; ++i) {
        for (Index phi : f.by_dim(r - i)) {
            for (Index sigma : f.faces_of(phi)) {
                const int j = f.cone(sigma).dim;
                if (j > p) continue;
                const Index dim = wedge_dim(f.ambient_rank() - j, p - j);
                if (dim == 0) continue;
                auto& cell = K.entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
                where[static_cast<size_t>(i)][static_cast<size_t>(j)][{phi, sigma}] =
                    cell.size();
                cell.push_back(GridEntry{phi, sigma,
                                         K.sizes[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                         dim});
                K.sizes[static_cast<size_t>(i)][static_cast<size_t>(j)] += dim;
            }
        }
    }

    K.horizontal_d.assign(I, std::vector<RatMat>(J));
    K.vertical_d.assign(I, std::vector<RatMat>(J));
    for (int i = 0; i <= r; ++i)
        for (int j = 0; j <= p; ++j) {
            RatMat down = RatMat::Zero(K.size(i + 1, j), K.size(i, j));
            RatMat over = RatMat::Zero(K.size(i, j + 1), K.size(i, j));
            const auto& cell = K.entries[static_cast<size_t>(i)][static_cast<size_t>(j)];

            for (const GridEntry& e : cell) {
                // Horizontal: every facet of phi still containing sigma.
                if (i + 1 <= r)
                    for (Index psi : f.facets_of(e.phi)) {
                        if (!f.is_face(e.sigma, psi)) continue;
                        const auto& lookup =
                            where[static_cast<size_t>(i) + 1][static_cast<size_t>(j)];
                        const auto hit = lookup.find({psi, e.sigma});
                        if (hit == lookup.end())
                            throw ComplexError("double complex: missing facet summand");
                        const GridEntry& t =
                            K.entries[static_cast<size_t>(i) + 1][static_cast<size_t>(j)]
                                     [hit->second];
                        Rational scalar = orientation_coefficient(f, psi, e.phi);
                        if (j % 2 != 0) scalar = -scalar;
                        for (Index s = 0; s < e.dim; ++s)
                            down(t.offset + s, e.offset + s) = scalar;
                    }

                // Vertical: coboundary contraction inside phi.
                if (j + 1 <= p)
                    for (Index tau : f.faces_of(e.phi)) {
                        if (f.cone(tau).dim != j + 1) continue;
                        if (!f.is_face(e.sigma, tau)) continue;
                        const auto& lookup =
                            where[static_cast<size_t>(i)][static_cast<size_t>(j) + 1];
                        const auto hit = lookup.find({e.phi, tau});
                        if (hit == lookup.end())
                            throw ComplexError("double complex: missing face summand");
                        const GridEntry& t =
                            K.entries[static_cast<size_t>(i)][static_cast<size_t>(j) + 1]
                                     [hit->second];
                        const FacetIncidence inc = facet_incidence(f, e.sigma, tau);
                        const IntMat block =
                            contraction_block(annihilator_rows(f, e.sigma),
                                              annihilator_rows(f, tau), inc.lift, p - j);
                        for (Index row = 0; row < block.rows(); ++row)
                            for (Index col = 0; col < block.cols(); ++col)
                                over(t.offset + row, e.offset + col) =
                                    Rational(block(row, col));
                    }
            }
            K.horizontal_d[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(down);
            K.vertical_d[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(over);
        }

    // The two squares and the mixed square must vanish identically.
    for (int i = 0; i <= r; ++i)
        for (int j = 0; j <= p; ++j) {
            if (!is_zero(RatMat(K.horizontal(i + 1, j) * K.horizontal(i, j))))
                throw ComplexError("double complex: horizontal square is nonzero");
            if (!is_zero(RatMat(K.vertical(i, j + 1) * K.vertical(i, j))))
                throw ComplexError("double complex: vertical square is nonzero");
            if (!is_zero(RatMat(K.vertical(i + 1, j) * K.horizontal(i, j) +
                                K.horizontal(i, j + 1) * K.vertical(i, j))))
                throw ComplexError("double complex: the differentials do not anticommute");
        }
    return K;
}

std::vector<Index> total_sizes(const DoubleComplex& k) {
    const int top = static_cast<int>(k.ambient_rank) + k.p;
    std::vector<Index> out(static_cast<size_t>(top) + 1, 0);
    for (int i = 0; i <= static_cast<int>(k.ambient_rank); ++i)
        for (int j = 0; j <= k.p; ++j) out[static_cast<size_t>(i + j)] += k.size(i, j);
    return out;
}

RatMat total_differential(const DoubleComplex& k, int degree) {
    const int r = static_cast<int>(k.ambient_rank);
    auto offsets_at = [&](int deg) {
        std::map<std::pair<int, int>, Index> offs;
        Index at = 0;
        for (int i = 0; i <= r; ++i) {
            const int j = deg - i;
            if (j < 0 || j > k.p) continue;
            if (k.size(i, j) == 0) continue;
            offs[{i, j}] = at;
            at += k.size(i, j);
        }
        return std::make_pair(offs, at);
    };
    const auto [src, src_total] = offsets_at(degree);
    const auto [dst, dst_total] = offsets_at(degree + 1);

    RatMat d = RatMat::Zero(dst_total, src_total);
    for (const auto& [cell, off] : src) {
        const auto [i, j] = cell;
        const RatMat down = k.horizontal(i, j);
        if (down.rows() > 0) {
            const auto hit = dst.find({i + 1, j});
            if (hit != dst.end())
                d.block(hit->second, off, down.rows(), down.cols()) = down;
        }
        const RatMat over = k.vertical(i, j);
        if (over.rows() > 0) {
            const auto hit = dst.find({i, j + 1});
            if (hit != dst.end())
                d.block(hit->second, off, over.rows(), over.cols()) = over;
        }
    }
    return d;
}

std::vector<Index> total_cohomology_ranks(const DoubleComplex& k) {
    const int top = static_cast<int>(k.ambient_rank) + k.p;
    const std::vector<Index> sizes = total_sizes(k);
    std::vector<RatMat> d;
    d.reserve(static_cast<size_t>(top) + 1);
    for (int deg = 0; deg <= top; ++deg) d.push_back(total_differential(k, deg));
    for (int deg = 0; deg + 1 <= top; ++deg)
        if (!is_zero(RatMat(d[static_cast<size_t>(deg) + 1] * d[static_cast<size_t>(deg)])))
            throw ComplexError("double complex: total differential square is nonzero");

    std::vector<Index> h(static_cast<size_t>(top) + 1, 0);
    Index previous_rank = 0;
    for (int deg = 0; deg <= top; ++deg) {
        const Index rank = rational_rank(d[static_cast<size_t>(deg)]);
        h[static_cast<size_t>(deg)] = sizes[static_cast<size_t>(deg)] - rank - previous_rank;
        previous_rank = rank;
    }
    return h;
}

Report verify_double_complex(const Fan& f, const VerifyOptions& opt) {
    Report rep;
    rep.regime = "double complex";
    if (!f.is_simplicial()) return reject(rep.regime, "the fan is not simplicial");
    if (!f.is_complete()) return reject(rep.regime, "the fan is not complete");

    const int r = static_cast<int>(f.ambient_rank());
    bool rows_ok = true;
    bool cols_ok = true;
    bool total_ok = true;
    bool euler_ok = true;
    std::vector<Integer> diagonal;
    for (int p = 0; p <= r; ++p) {
        const DoubleComplex K = build_double_complex(f, p);
        const CochainComplex ishida = build_ishida(f, p);

        for (int j = 0; j <= p; ++j) {
            Index previous_rank = 0;
            for (int i = 0; i <= r; ++i) {
                const Index rank = rational_rank(RatMat(K.horizontal(i, j)));
                const Index h = K.size(i, j) - rank - previous_rank;
                previous_rank = rank;
                const Index expected = (i == 0) ? ishida.rank(j) : 0;
                if (h != expected) rows_ok = false;
            }
        }

        for (int i = 0; i <= r; ++i) {
            Index previous_rank = 0;
            for (int j = 0; j <= p; ++j) {
                const Index rank = rational_rank(RatMat(K.vertical(i, j)));
                const Index h = K.size(i, j) - rank - previous_rank;
                previous_rank = rank;
                const Index expected =
                    (j == 0) ? static_cast<Index>(f.by_dim(r - i).size()) * binomial(i, p)
                             : 0;
                if (h != expected) cols_ok = false;
            }
        }

        const std::vector<Index> total = total_cohomology_ranks(K);
        const std::vector<CohomologyGroup> groups = cohomology_groups(ishida);
        for (size_t k = 0; k < total.size(); ++k) {
            const Index expected =
                k < groups.size() ? groups[k].free_rank : 0;
            if (total[k] != expected) total_ok = false;
        }
        diagonal.push_back(p < static_cast<int>(total.size())
                               ? Integer(static_cast<long long>(total[static_cast<size_t>(p)]))
                               : Integer(0));

        Integer chi = 0;
        const std::vector<Index> sizes = total_sizes(K);
        for (size_t k = 0; k < sizes.size(); ++k) {
            if (k % 2 == 0)
                chi += Integer(static_cast<long long>(sizes[k]));
            else
                chi -= Integer(static_cast<long long>(sizes[k]));
        }
        if (chi != euler_oracle(f, p, opt.flip_euler_sign)) euler_ok = false;
    }

    add_check(rep, "rows are exact away from the full-dimensional column", rows_ok);
    add_check(rep, "columns are exact away from the bottom row", cols_ok);
    add_check(rep, "the total complex recovers the fan cohomology", total_ok,
              "h^p from the total complex for p = 0.." + std::to_string(r) + ": " +
                  [&] {
                      std::ostringstream out;
                      for (size_t t = 0; t < diagonal.size(); ++t) {
                          if (t) out << ", ";
                          out << diagonal[t];
                      }
                      return out.str();
                  }());
    add_check(rep, "Euler characteristics match the face count oracle", euler_ok);
    settle(rep);
    return rep;
}

}  // namespace fancohom
