#include "fancohom/cone.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace fancohom {

namespace {

Integer pair_with(const IntVec& functional, const IntVec& x) {
    Integer s = 0;
    for (Index i = 0; i < functional.size(); ++i) s += functional(i) * x(i);
    return s;
}

std::string vec_key(const IntVec& v) {
    std::ostringstream os;
    for (Index i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v(i).str();
    }
    return os.str();
}

/* Extremality of x in the cone cut out by `equalities` plus the processed
 * inequalities: the constraints tight at x must leave exactly span(lineality)
 * + Qx free. */
bool extreme_ray(const IntVec& x, Index ambient, Index lineality_dim,
                 const std::vector<IntVec>& equalities,
                 const std::vector<IntVec>& processed) {
    std::vector<IntVec> tight = equalities;
    for (const IntVec& a : processed)
        if (pair_with(a, x) == 0) tight.push_back(a);
    IntMat t = rows_to_matrix(ambient, tight);
    return integer_rank(t) == ambient - lineality_dim - 1;
}

}  // namespace

DoubleDescription double_description(Index ambient,
                                     const std::vector<IntVec>& equalities,
                                     const std::vector<IntVec>& inequalities) {
    DoubleDescription dd;
    dd.lineality = matrix_to_columns(kernel_basis(rows_to_matrix(ambient, equalities)));
    std::vector<IntVec> processed;

    for (const IntVec& a : inequalities) {
        // A lineality generator with nonzero value absorbs the cut.
        Index cut = -1;
        for (size_t i = 0; i < dd.lineality.size(); ++i)
            if (pair_with(a, dd.lineality[i]) != 0) { cut = static_cast<Index>(i); break; }
        std::vector<IntVec> candidates;
        if (cut >= 0) {
            IntVec l0 = dd.lineality[cut];
            Integer al0 = pair_with(a, l0);
            if (al0 < 0) { l0 = -l0; al0 = -al0; }
            std::vector<IntVec> new_lin;
            for (size_t i = 0; i < dd.lineality.size(); ++i) {
                if (static_cast<Index>(i) == cut) continue;
                const IntVec& l = dd.lineality[i];
                new_lin.push_back(primitive(IntVec(al0 * l - pair_with(a, l) * l0)));
            }
            candidates.push_back(l0);
            for (const IntVec& r : dd.rays) {
                IntVec proj = al0 * r - pair_with(a, r) * l0;
                if (content(proj) != 0) candidates.push_back(primitive(proj));
            }
            dd.lineality = new_lin;
        } else {
            std::vector<IntVec> pos, neg;
            for (const IntVec& r : dd.rays) {
                Integer s = pair_with(a, r);
                if (s > 0) pos.push_back(r);
                else if (s < 0) neg.push_back(r);
                else candidates.push_back(r);
            }
            for (const IntVec& r : pos) candidates.push_back(r);
            for (const IntVec& p : pos)
                for (const IntVec& n : neg) {
                    IntVec w = pair_with(a, p) * n - pair_with(a, n) * p;
                    if (content(w) != 0) candidates.push_back(primitive(w));
                }
        }
        processed.push_back(a);

        std::set<std::string> seen;
        std::vector<IntVec> kept;
        for (const IntVec& r : candidates) {
            if (!seen.insert(vec_key(r)).second) continue;
            if (extreme_ray(r, ambient, static_cast<Index>(dd.lineality.size()), equalities, processed))
                kept.push_back(r);
        }
        dd.rays = kept;
    }
    return dd;
}

bool Cone::contains(const IntVec& x) const {
    for (const IntVec& s : span_normals)
        if (pair_with(s, x) != 0) return false;
    for (const IntVec& u : facet_normals)
        if (pair_with(u, x) < 0) return false;
    return true;
}

std::string Cone::key() const {
    std::ostringstream os;
    for (const IntVec& r : rays) os << vec_key(r) << ';';
    return os.str();
}

Cone zero_cone(Index ambient) {
    Cone c;
    c.ambient = ambient;
    c.dim = 0;
    c.simplicial = true;
    for (Index i = 0; i < ambient; ++i) {
        IntVec e = IntVec::Zero(ambient);
        e(i) = 1;
        c.span_normals.push_back(e);
    }
    return c;
}

Cone make_cone(Index ambient, const std::vector<IntVec>& gens) {
    std::vector<IntVec> prim;
    std::set<std::string> seen;
    for (const IntVec& g : gens) {
        if (g.size() != ambient) throw ConeError("make_cone: generator length mismatch");
        if (content(g) == 0) throw ConeError("make_cone: zero generator");
        IntVec p = primitive(g);
        if (seen.insert(vec_key(p)).second) prim.push_back(p);
    }
    if (prim.empty()) return zero_cone(ambient);

    IntMat rmat = rows_to_matrix(ambient, prim);
    IntMat span_basis = saturate_rows(rmat);  // d x ambient
    const Index d = span_basis.rows();

    Cone c;
    c.ambient = ambient;
    c.dim = static_cast<int>(d);
    c.span_normals = matrix_to_rows(annihilator_basis(rmat));

    // Coordinates of the generators inside the span lattice.
    std::vector<IntVec> coords;
    for (const IntVec& v : prim) {
        auto x = solve_integer(IntMat(span_basis.transpose()), v);
        if (!x) throw ConeError("make_cone: generator escapes its saturated span");
        coords.push_back(*x);
    }

    // Facet normals of the (now full-dimensional) cone = extreme rays of its dual.
    DoubleDescription dual = double_description(d, {}, coords);
    if (!dual.lineality.empty()) throw ConeError("make_cone: internal dual lineality");
    IntMat dual_rays = rows_to_matrix(d, dual.rays);
    if (integer_rank(dual_rays) != d)
        throw ConeError("make_cone: generators span a line (cone not strongly convex)");

    // Keep only extreme generators: tight facets must cut down to one ray.
    std::vector<IntVec> extreme;
    for (size_t i = 0; i < prim.size(); ++i) {
        std::vector<IntVec> tight;
        for (const IntVec& u : dual.rays)
            if (pair_with(u, coords[i]) == 0) tight.push_back(u);
        if (integer_rank(rows_to_matrix(d, tight)) == d - 1) extreme.push_back(prim[i]);
    }
    std::sort(extreme.begin(), extreme.end(), lex_less);
    c.rays = extreme;
    c.simplicial = static_cast<Index>(extreme.size()) == d;

    // Lift each dual extreme ray u to an ambient functional m: <m, b_j> = u_j.
    for (const IntVec& u : dual.rays) {
        auto m = solve_integer(span_basis, u);
        if (!m) throw ConeError("make_cone: facet normal lift failed");
        c.facet_normals.push_back(*m);
    }
    std::sort(c.facet_normals.begin(), c.facet_normals.end(), lex_less);
    return c;
}

std::vector<Cone> faces(const Cone& c) {
    if (c.is_zero()) return {c};
    std::vector<Cone> out;
    if (c.simplicial) {
        const size_t n = c.rays.size();
        for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
            std::vector<IntVec> sub;
            for (size_t i = 0; i < n; ++i)
                if (mask & (1ul << i)) sub.push_back(c.rays[i]);
            out.push_back(make_cone(c.ambient, sub));
        }
        return out;
    }
    // General pointed cone: faces are intersections of facets, identified by
    // their sets of incident extreme rays.
    std::vector<std::set<size_t>> facet_sets;
    for (const IntVec& u : c.facet_normals) {
        std::set<size_t> s;
        for (size_t i = 0; i < c.rays.size(); ++i)
            if (pair_with(u, c.rays[i]) == 0) s.insert(i);
        facet_sets.push_back(s);
    }
    std::set<std::set<size_t>> closed;
    std::set<size_t> full;
    for (size_t i = 0; i < c.rays.size(); ++i) full.insert(i);
    closed.insert(full);
    std::vector<std::set<size_t>> queue{full};
    while (!queue.empty()) {
        std::set<size_t> s = queue.back();
        queue.pop_back();
        for (const auto& f : facet_sets) {
            std::set<size_t> t;
            std::set_intersection(s.begin(), s.end(), f.begin(), f.end(),
                                  std::inserter(t, t.begin()));
            if (closed.insert(t).second) queue.push_back(t);
        }
    }
    for (const auto& s : closed) {
        std::vector<IntVec> sub;
        for (size_t i : s) sub.push_back(c.rays[i]);
        out.push_back(make_cone(c.ambient, sub));
    }
    if (std::none_of(out.begin(), out.end(), [](const Cone& f) { return f.is_zero(); }))
        out.push_back(zero_cone(c.ambient));
    return out;
}

Cone intersect(const Cone& a, const Cone& b) {
    if (a.ambient != b.ambient) throw ConeError("intersect: ambient mismatch");
    std::vector<IntVec> eq = a.span_normals;
    eq.insert(eq.end(), b.span_normals.begin(), b.span_normals.end());
    std::vector<IntVec> ineq = a.facet_normals;
    ineq.insert(ineq.end(), b.facet_normals.begin(), b.facet_normals.end());
    DoubleDescription dd = double_description(a.ambient, eq, ineq);
    if (!dd.lineality.empty())
        throw ConeError("intersect: intersection of pointed cones has lineality");
    return make_cone(a.ambient, dd.rays);
}

}  // namespace fancohom
