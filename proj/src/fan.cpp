#include "fancohom/fan.hpp"

#include <algorithm>
#include <set>

namespace fancohom {

namespace {

Integer dot(const IntVec& a, const IntVec& b) {
    Integer s = 0;
    for (Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
    return s;
}

bool cone_order(const Cone& a, const Cone& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    const size_t n = std::min(a.rays.size(), b.rays.size());
    for (size_t i = 0; i < n; ++i) {
        if (lex_less(a.rays[i], b.rays[i])) return true;
        if (lex_less(b.rays[i], a.rays[i])) return false;
    }
    return a.rays.size() < b.rays.size();
}

IntMat ray_matrix(const Cone& c) {
    return rows_to_matrix(c.ambient, c.rays);
}

}  // namespace

void Fan::finish(std::vector<Cone> cones) {
    std::map<std::string, Cone> uniq;
    for (Cone& c : cones) {
        if (c.ambient != ambient_) throw FanError("fan: cone ambient rank mismatch");
        uniq.emplace(c.key(), std::move(c));
    }
    {
        Cone z = zero_cone(ambient_);
        uniq.emplace(z.key(), z);
    }
    cones_.clear();
    for (auto& [k, c] : uniq) cones_.push_back(std::move(c));
    std::sort(cones_.begin(), cones_.end(), cone_order);

    index_.clear();
    for (Index i = 0; i < size(); ++i) index_[cones_[static_cast<size_t>(i)].key()] = i;

    // Face closure, recomputing each cone's faces from its facet structure.
    std::vector<std::set<std::string>> facekeys(cones_.size());
    for (size_t i = 0; i < cones_.size(); ++i)
        for (const Cone& fc : faces(cones_[i])) {
            if (!index_.count(fc.key())) throw FanError("fan: not closed under faces");
            facekeys[i].insert(fc.key());
        }

    faces_.assign(cones_.size(), {});
    for (size_t i = 0; i < cones_.size(); ++i)
        for (Index j = 0; j < size(); ++j)
            if (facekeys[i].count(cones_[static_cast<size_t>(j)].key()))
                faces_[i].push_back(j);

    by_dim_.assign(static_cast<size_t>(max_dim()) + 1, {});
    for (Index i = 0; i < size(); ++i)
        by_dim_[static_cast<size_t>(cones_[static_cast<size_t>(i)].dim)].push_back(i);

    // Any two maximal cones must meet in a common face; faces of compatible
    // cones are then automatically compatible.
    std::vector<Index> maxi = maximal_indices();
    for (size_t a = 0; a < maxi.size(); ++a)
        for (size_t b = a + 1; b < maxi.size(); ++b) {
            Cone w = intersect(cones_[static_cast<size_t>(maxi[a])],
                               cones_[static_cast<size_t>(maxi[b])]);
            if (!facekeys[static_cast<size_t>(maxi[a])].count(w.key()) ||
                !facekeys[static_cast<size_t>(maxi[b])].count(w.key()))
                throw FanError("fan: cones do not meet in a common face");
        }
}

Fan Fan::from_maximal(Index ambient, const std::vector<std::vector<IntVec>>& maximal) {
    if (ambient < 1) throw FanError("fan: ambient rank must be positive");
    Fan f;
    f.ambient_ = ambient;
    std::vector<Cone> all;
    try {
        for (const auto& gens : maximal)
            for (Cone& fc : faces(make_cone(ambient, gens))) all.push_back(std::move(fc));
    } catch (const ConeError& e) {
        throw FanError(std::string("fan: ") + e.what());
    }
    f.finish(std::move(all));
    return f;
}

Fan Fan::from_cones(Index ambient, const std::vector<Cone>& cones) {
    if (ambient < 1) throw FanError("fan: ambient rank must be positive");
    Fan f;
    f.ambient_ = ambient;
    f.finish(cones);
    return f;
}

int Fan::max_dim() const {
    return cones_.empty() ? 0 : cones_.back().dim;
}

const std::vector<Index>& Fan::by_dim(int d) const {
    static const std::vector<Index> empty;
    if (d < 0 || static_cast<size_t>(d) >= by_dim_.size()) return empty;
    return by_dim_[static_cast<size_t>(d)];
}

std::vector<long long> Fan::f_vector() const {
    std::vector<long long> out;
    for (const auto& v : by_dim_) out.push_back(static_cast<long long>(v.size()));
    return out;
}

std::optional<Index> Fan::find(const Cone& c) const {
    if (c.ambient != ambient_) return std::nullopt;
    auto it = index_.find(c.key());
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool Fan::is_face(Index i, Index j) const {
    const auto& fj = faces_.at(static_cast<size_t>(j));
    return std::binary_search(fj.begin(), fj.end(), i);
}

const std::vector<Index>& Fan::faces_of(Index i) const {
    return faces_.at(static_cast<size_t>(i));
}

std::vector<Index> Fan::facets_of(Index i) const {
    std::vector<Index> out;
    for (Index j : faces_of(i))
        if (cone(j).dim == cone(i).dim - 1) out.push_back(j);
    return out;
}

std::vector<Index> Fan::cofacets_of(Index i) const {
    std::vector<Index> out;
    for (Index j = 0; j < size(); ++j)
        if (cone(j).dim == cone(i).dim + 1 && is_face(i, j)) out.push_back(j);
    return out;
}

std::vector<Index> Fan::maximal_indices() const {
    std::vector<Index> out;
    for (Index i = 0; i < size(); ++i) {
        bool proper_face = false;
        for (Index j = 0; j < size() && !proper_face; ++j)
            if (j != i && is_face(i, j)) proper_face = true;
        if (!proper_face) out.push_back(i);
    }
    return out;
}

std::vector<Index> Fan::star(Index i) const {
    std::vector<Index> out;
    for (Index j = 0; j < size(); ++j)
        if (is_face(i, j)) out.push_back(j);
    return out;
}

bool Fan::is_complete() const {
    const int r = static_cast<int>(ambient_);
    if (by_dim(r).empty()) return false;
    for (Index i : by_dim(r - 1))
        if (cofacets_of(i).size() != 2) return false;
    return true;
}

bool Fan::is_simplicial() const {
    for (const Cone& c : cones_)
        if (!c.simplicial) return false;
    return true;
}

Fan apply_unimodular(const Fan& f, const IntMat& g) {
    if (g.rows() != f.ambient_rank() || g.cols() != f.ambient_rank())
        throw FanError("apply_unimodular: matrix shape mismatch");
    IntMat h = hermite_form(g).h;
    IntMat id = IntMat::Identity(g.rows(), g.cols());
    if (!is_zero(IntMat(h - id))) throw FanError("apply_unimodular: matrix is not unimodular");
    std::vector<std::vector<IntVec>> maximal;
    for (Index i : f.maximal_indices()) {
        std::vector<IntVec> gens;
        for (const IntVec& v : f.cone(i).rays) gens.push_back(g * v);
        maximal.push_back(gens);
    }
    return Fan::from_maximal(f.ambient_rank(), maximal);
}

FacetIncidence facet_incidence(const Fan& f, Index sigma, Index tau) {
    const Cone& s = f.cone(sigma);
    const Cone& t = f.cone(tau);
    if (t.dim != s.dim + 1 || !f.is_face(sigma, tau))
        throw FanError("facet_incidence: tau must have sigma as a facet");

    IntMat span = saturate_rows(ray_matrix(s));
    IntMat proj = quotient_projection(f.ambient_rank(), span);

    FacetIncidence inc;
    inc.sigma = sigma;
    inc.tau = tau;
    for (const IntVec& v : t.rays) {
        IntVec img = proj * v;
        if (content(img) == 0) continue;
        IntVec n = primitive(img);
        if (inc.normal_class.size() == 0) inc.normal_class = n;
        else if (!is_zero(IntMat(n - inc.normal_class)))
            throw FanError("facet_incidence: image of tau is not a single ray");
    }
    if (inc.normal_class.size() == 0)
        throw FanError("facet_incidence: tau collapses into sigma");
    auto lift = solve_integer(proj, inc.normal_class);
    if (!lift) throw FanError("facet_incidence: no integral lift");
    inc.lift = *lift;
    return inc;
}

QuotientFan quotient_fan(const Fan& f, Index rho) {
    const Cone& r = f.cone(rho);
    if (r.is_zero()) throw FanError("quotient_fan: rho must be a nonzero cone");
    IntMat span = saturate_rows(ray_matrix(r));
    QuotientFan qf;
    qf.projection = quotient_projection(f.ambient_rank(), span);
    qf.star = f.star(rho);

    std::vector<Cone> images;
    std::set<std::string> seen;
    for (Index i : qf.star) {
        std::vector<IntVec> gens;
        for (const IntVec& v : f.cone(i).rays) {
            IntVec img = qf.projection * v;
            if (content(img) != 0) gens.push_back(img);
        }
        Cone c = make_cone(qf.projection.rows(), gens);
        if (!seen.insert(c.key()).second)
            throw FanError("quotient_fan: star cones do not map injectively");
        images.push_back(std::move(c));
    }
    qf.fan = Fan::from_cones(qf.projection.rows(), images);
    for (const Cone& c : images) qf.image.push_back(*qf.fan.find(c));
    return qf;
}

namespace {

/* Facet normals of the support boundary: for each codimension one cone lying
 * in just one maximal cone, the inequality cutting that maximal cone there. */
std::vector<IntVec> boundary_normals(const Fan& f, std::vector<Index>* boundary_facets) {
    const int r = static_cast<int>(f.ambient_rank());
    std::vector<IntVec> normals;
    for (Index i : f.by_dim(r - 1)) {
        std::vector<Index> up = f.cofacets_of(i);
        if (up.size() != 1) continue;
        const Cone& phi = f.cone(i);
        const Cone& top = f.cone(up[0]);
        bool found = false;
        for (const IntVec& u : top.facet_normals) {
            bool tight = true;
            for (const IntVec& v : phi.rays)
                if (dot(u, v) != 0) { tight = false; break; }
            if (tight) {
                normals.push_back(u);
                if (boundary_facets) boundary_facets->push_back(i);
                found = true;
                break;
            }
        }
        if (!found) throw FanError("boundary_normals: facet normal not found");
    }
    return normals;
}

}  // namespace

bool support_convex(const Fan& f) {
    const int r = static_cast<int>(f.ambient_rank());
    for (Index i : f.maximal_indices())
        if (f.cone(i).dim != r) return false;
    if (f.by_dim(r).empty()) return false;
    std::vector<IntVec> normals = boundary_normals(f, nullptr);
    for (const IntVec& u : normals)
        for (Index i : f.by_dim(1))
            if (dot(u, f.cone(i).rays[0]) < 0) return false;
    return true;
}

Completion complete_from_convex(const Fan& f) {
    if (!support_convex(f)) throw FanError("complete_from_convex: support is not convex");
    if (f.is_complete()) throw FanError("complete_from_convex: fan is already complete");

    IntVec sum = IntVec::Zero(f.ambient_rank());
    for (Index i : f.by_dim(1)) sum += f.cone(i).rays[0];
    if (content(sum) == 0) throw FanError("complete_from_convex: degenerate ray sum");
    IntVec apex = -primitive(sum);
    for (Index i : f.maximal_indices())
        if (f.cone(i).contains(apex))
            throw FanError("complete_from_convex: apex lands inside the support");

    std::vector<Index> bfacets;
    boundary_normals(f, &bfacets);

    // Boundary subfan: every cone lying in some unshared facet.
    std::vector<Cone> all = f.cones();
    for (Index i = 0; i < f.size(); ++i) {
        const Cone& c = f.cone(i);
        bool on_boundary = false;
        for (Index bf : bfacets) {
            const Cone& phi = f.cone(bf);
            bool inside = true;
            for (const IntVec& v : c.rays)
                if (!phi.contains(v)) { inside = false; break; }
            if (inside) { on_boundary = true; break; }
        }
        if (!on_boundary) continue;
        std::vector<IntVec> gens = c.rays;
        gens.push_back(apex);
        all.push_back(make_cone(f.ambient_rank(), gens));
    }

    Completion out{Fan::from_cones(f.ambient_rank(), all), apex};
    if (!out.fan.is_complete())
        throw FanError("complete_from_convex: completion is not complete");
    return out;
}

GraphFans graph_fans(const Fan& base, const std::vector<Integer>& eta) {
    if (!base.is_complete()) throw FanError("graph_fans: base fan must be complete");
    const std::vector<Index>& rays = base.by_dim(1);
    if (eta.size() != rays.size())
        throw FanError("graph_fans: eta must give one value per ray of the base fan");
    const Index rb = base.ambient_rank();

    std::map<std::string, Integer> value;
    for (size_t i = 0; i < rays.size(); ++i)
        value[base.cone(rays[i]).key()] = eta[i];

    auto lift_cone = [&](const Cone& c) {
        std::vector<IntVec> gens;
        for (const IntVec& v : c.rays) {
            Cone rc = make_cone(rb, {v});
            IntVec w(rb + 1);
            w.head(rb) = v;
            w(rb) = value.at(rc.key());
            gens.push_back(w);
        }
        return gens;
    };
    IntVec up = IntVec::Zero(rb + 1);
    up(rb) = 1;
    IntVec down = -up;

    std::vector<std::vector<IntVec>> flat_max, upper_max, full_max;
    for (Index i : base.maximal_indices()) {
        std::vector<IntVec> g = lift_cone(base.cone(i));
        flat_max.push_back(g);
        std::vector<IntVec> gu = g, gd = g;
        gu.push_back(up);
        gd.push_back(down);
        upper_max.push_back(gu);
        full_max.push_back(gu);
        full_max.push_back(gd);
    }

    GraphFans out{Fan::from_maximal(rb + 1, flat_max), Fan::from_maximal(rb + 1, upper_max),
                  Fan::from_maximal(rb + 1, full_max), 0};
    auto rho = out.full.find(make_cone(rb + 1, {down}));
    if (!rho) throw FanError("graph_fans: downward ray missing");
    out.rho = *rho;
    if (!out.full.is_complete()) throw FanError("graph_fans: full fan is not complete");
    return out;
}

Fan projective_space_fan(int r) {
    if (r < 1) throw FanError("projective_space_fan: rank must be positive");
    std::vector<IntVec> rays;
    for (int i = 0; i < r; ++i) {
        IntVec e = IntVec::Zero(r);
        e(i) = 1;
        rays.push_back(e);
    }
    IntVec neg = IntVec::Zero(r);
    for (int i = 0; i < r; ++i) neg(i) = -1;
    rays.push_back(neg);

    std::vector<std::vector<IntVec>> maximal;
    for (int skip = 0; skip <= r; ++skip) {
        std::vector<IntVec> gens;
        for (int i = 0; i <= r; ++i)
            if (i != skip) gens.push_back(rays[static_cast<size_t>(i)]);
        maximal.push_back(gens);
    }
    return Fan::from_maximal(r, maximal);
}

Fan hirzebruch_fan(const Integer& a) {
    IntVec v1(2), v2(2), v3(2), v4(2);
    v1 << 1, 0;
    v2 << 0, 1;
    v3 << -1, a;
    v4 << 0, -1;
    return Fan::from_maximal(2, {{v1, v2}, {v2, v3}, {v3, v4}, {v4, v1}});
}

Fan product_fan(const Fan& a, const Fan& b) {
    const Index ra = a.ambient_rank(), rb = b.ambient_rank();
    std::vector<std::vector<IntVec>> maximal;
    for (Index i : a.maximal_indices())
        for (Index j : b.maximal_indices()) {
            std::vector<IntVec> gens;
            for (const IntVec& v : a.cone(i).rays) {
                IntVec w = IntVec::Zero(ra + rb);
                w.head(ra) = v;
                gens.push_back(w);
            }
            for (const IntVec& v : b.cone(j).rays) {
                IntVec w = IntVec::Zero(ra + rb);
                w.tail(rb) = v;
                gens.push_back(w);
            }
            maximal.push_back(gens);
        }
    return Fan::from_maximal(ra + rb, maximal);
}

Fan gamma_fan(Index ambient, const std::vector<IntVec>& gens) {
    return Fan::from_maximal(ambient, {gens});
}

}  // namespace fancohom
