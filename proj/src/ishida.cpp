#include "fancohom/ishida.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fancohom {

namespace {

IntMat ann_basis(const Fan& f, Index i) {
    return rows_to_matrix(f.ambient_rank(), f.cone(i).span_normals);
}

}  // namespace

IntMat CochainComplex::differential(int q) const {
    if (q >= 0 && q < static_cast<int>(d.size())) return d[static_cast<size_t>(q)];
    return IntMat(rank(q + 1), rank(q));
}

CochainComplex build_ishida(const Fan& f, int p, const std::vector<Index>* only) {
    CochainComplex c;
    c.ambient_rank = f.ambient_rank();
    c.p = p;
    if (p < 0) return c;

    const int r = static_cast<int>(f.ambient_rank());
    std::set<Index> allowed;
    if (only) allowed.insert(only->begin(), only->end());

    c.cones.resize(static_cast<size_t>(p) + 1);
    c.offsets.resize(static_cast<size_t>(p) + 1);
    c.ranks.assign(static_cast<size_t>(p) + 1, 0);
    for (int q = 0; q <= p; ++q) {
        Index off = 0;
        const Index bs = static_cast<Index>(wedge_dim(r - q, p - q));
        for (Index i : f.by_dim(q)) {
            if (only && !allowed.count(i)) continue;
            c.cones[static_cast<size_t>(q)].push_back(i);
            c.offsets[static_cast<size_t>(q)].push_back(off);
            off += bs;
        }
        c.ranks[static_cast<size_t>(q)] = off;
    }

    c.d.resize(static_cast<size_t>(p));
    c.blocks.resize(static_cast<size_t>(p));
    for (int q = 0; q < p; ++q) {
        const auto& cols = c.cones[static_cast<size_t>(q)];
        const auto& rows = c.cones[static_cast<size_t>(q) + 1];
        IntMat m = IntMat::Zero(c.ranks[static_cast<size_t>(q) + 1], c.ranks[static_cast<size_t>(q)]);
        for (size_t ci = 0; ci < cols.size(); ++ci)
            for (size_t ri = 0; ri < rows.size(); ++ri) {
                if (!f.is_face(cols[ci], rows[ri])) continue;
                FacetIncidence inc = facet_incidence(f, cols[ci], rows[ri]);
                IntMat block = contraction_block(ann_basis(f, cols[ci]), ann_basis(f, rows[ri]),
                                                 inc.lift, p - q);
                ComplexBlock cb;
                cb.row_cone = rows[ri];
                cb.col_cone = cols[ci];
                cb.row_offset = c.offsets[static_cast<size_t>(q) + 1][ri];
                cb.col_offset = c.offsets[static_cast<size_t>(q)][ci];
                cb.rows = block.rows();
                cb.cols = block.cols();
                m.block(cb.row_offset, cb.col_offset, cb.rows, cb.cols) = block;
                c.blocks[static_cast<size_t>(q)].push_back(cb);
            }
        c.d[static_cast<size_t>(q)] = m;
    }

    for (int q = 0; q + 1 < p; ++q)
        if (!is_zero(IntMat(c.d[static_cast<size_t>(q) + 1] * c.d[static_cast<size_t>(q)])))
            throw ComplexError("build_ishida: coboundary does not square to zero");
    return c;
}

SubcomplexSequence subcomplex_sequence(const Fan& f, Index rho, int p) {
    if (f.cone(rho).dim != 1)
        throw ComplexError("subcomplex_sequence: rho must be a ray");
    std::vector<Index> star = f.star(rho);
    std::set<Index> in_star(star.begin(), star.end());
    std::vector<Index> rest;
    for (Index i = 0; i < f.size(); ++i)
        if (!in_star.count(i)) rest.push_back(i);

    SubcomplexSequence s;
    s.star = build_ishida(f, p, &star);
    s.full = build_ishida(f, p);
    s.remainder = build_ishida(f, p, &rest);

    for (int q = 0; q <= p; ++q) {
        const auto& full_cones = s.full.cones[static_cast<size_t>(q)];
        auto pos_of = [&](Index cone_index) {
            auto it = std::find(full_cones.begin(), full_cones.end(), cone_index);
            if (it == full_cones.end())
                throw ComplexError("subcomplex_sequence: cone missing from full complex");
            return static_cast<size_t>(it - full_cones.begin());
        };
        const Index bs = static_cast<Index>(
            wedge_dim(f.ambient_rank() - q, p - q));

        IntMat inc = IntMat::Zero(s.full.rank(q), s.star.rank(q));
        for (size_t i = 0; i < s.star.cones[static_cast<size_t>(q)].size(); ++i) {
            size_t fp = pos_of(s.star.cones[static_cast<size_t>(q)][i]);
            for (Index t = 0; t < bs; ++t)
                inc(s.full.offsets[static_cast<size_t>(q)][fp] + t,
                    s.star.offsets[static_cast<size_t>(q)][i] + t) = 1;
        }
        IntMat res = IntMat::Zero(s.remainder.rank(q), s.full.rank(q));
        for (size_t i = 0; i < s.remainder.cones[static_cast<size_t>(q)].size(); ++i) {
            size_t fp = pos_of(s.remainder.cones[static_cast<size_t>(q)][i]);
            for (Index t = 0; t < bs; ++t)
                res(s.remainder.offsets[static_cast<size_t>(q)][i] + t,
                    s.full.offsets[static_cast<size_t>(q)][fp] + t) = 1;
        }
        s.inclusion.push_back(inc);
        s.restriction.push_back(res);
    }

    for (int q = 0; q <= p; ++q) {
        if (s.star.rank(q) + s.remainder.rank(q) != s.full.rank(q))
            throw ComplexError("subcomplex_sequence: ranks do not add up");
        if (!is_zero(IntMat(s.restriction[static_cast<size_t>(q)] *
                            s.inclusion[static_cast<size_t>(q)])))
            throw ComplexError("subcomplex_sequence: composite is not zero");
        if (q < p) {
            IntMat lhs = s.full.d[static_cast<size_t>(q)] * s.inclusion[static_cast<size_t>(q)];
            IntMat rhs = s.inclusion[static_cast<size_t>(q) + 1] * s.star.d[static_cast<size_t>(q)];
            if (!is_zero(IntMat(lhs - rhs)))
                throw ComplexError("subcomplex_sequence: inclusion is not a chain map");
            IntMat lhs2 = s.remainder.d[static_cast<size_t>(q)] * s.restriction[static_cast<size_t>(q)];
            IntMat rhs2 = s.restriction[static_cast<size_t>(q) + 1] * s.full.d[static_cast<size_t>(q)];
            if (!is_zero(IntMat(lhs2 - rhs2)))
                throw ComplexError("subcomplex_sequence: restriction is not a chain map");
        }
    }
    return s;
}

ShiftIso star_shift_iso(const Fan& f, Index rho, int p) {
    if (p < 1) throw ComplexError("star_shift_iso: p must be at least 1");
    if (f.cone(rho).dim != 1)
        throw ComplexError("star_shift_iso: rho must be a ray");

    ShiftIso iso;
    iso.quotient = quotient_fan(f, rho);
    iso.source = build_ishida(iso.quotient.fan, p - 1);
    std::vector<Index> star = iso.quotient.star;
    iso.target = build_ishida(f, p, &star);

    // star cone index -> its image cone index in the quotient fan
    std::map<Index, Index> image_of;
    for (size_t j = 0; j < iso.quotient.star.size(); ++j)
        image_of[iso.quotient.star[j]] = iso.quotient.image[j];

    for (int q = 0; q <= p; ++q) {
        IntMat m = IntMat::Zero(iso.target.rank(q), iso.source.rank(q - 1));
        if (q >= 1) {
            const auto& tcones = iso.target.cones[static_cast<size_t>(q)];
            const auto& scones = iso.source.cones[static_cast<size_t>(q) - 1];
            for (size_t ti = 0; ti < tcones.size(); ++ti) {
                Index qc = image_of.at(tcones[ti]);
                auto it = std::find(scones.begin(), scones.end(), qc);
                if (it == scones.end())
                    throw ComplexError("star_shift_iso: image cone missing from source");
                size_t si = static_cast<size_t>(it - scones.begin());

                IntMat abar = ann_basis(iso.quotient.fan, qc);
                IntMat pulled = abar * iso.quotient.projection;
                IntMat t = basis_change(pulled, ann_basis(f, tcones[ti]));
                IntMat h = hermite_form(t).h;
                if (!is_zero(IntMat(h - IntMat::Identity(t.rows(), t.cols()))))
                    throw ComplexError("star_shift_iso: change of basis is not unimodular");
                IntMat block = wedge_compound(IntMat(t.transpose()), p - q);
                m.block(iso.target.offsets[static_cast<size_t>(q)][ti],
                        iso.source.offsets[static_cast<size_t>(q) - 1][si],
                        block.rows(), block.cols()) = block;
            }
        }
        iso.maps.push_back(m);
    }

    for (int q = 0; q <= p; ++q) {
        // the maps are square and unimodular blockwise; check commutation
        if (iso.target.rank(q) != iso.source.rank(q - 1))
            throw ComplexError("star_shift_iso: rank mismatch");
        if (q < p) {
            IntMat lhs = iso.target.d[static_cast<size_t>(q)] * iso.maps[static_cast<size_t>(q)];
            IntMat rhs = iso.maps[static_cast<size_t>(q) + 1] * iso.source.differential(q - 1);
            if (!is_zero(IntMat(lhs - rhs)))
                throw ComplexError("star_shift_iso: map does not commute with coboundaries");
        }
    }
    return iso;
}

}  // namespace fancohom
