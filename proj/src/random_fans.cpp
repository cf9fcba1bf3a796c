#include "fancohom/random_fans.hpp"

#include <algorithm>
#include <random>

#include "fancohom/cohomology.hpp"
#include "fancohom/io.hpp"
#include "fancohom/ishida.hpp"

namespace fancohom {

namespace {

using Rng = std::mt19937_64;

long long draw(Rng& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

template <typename T>
void shuffle_draws(Rng& rng, std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[static_cast<size_t>(draw(rng, 0, static_cast<long long>(i) - 1))]);
}

IntVec random_vector(Rng& rng, Index n, long long bound) {
    IntVec v(n);
    for (Index i = 0; i < n; ++i) v[i] = Integer(draw(rng, -bound, bound));
    return v;
}

IntVec random_primitive(Rng& rng, Index n, long long bound) {
    for (;;) {
        IntVec v = random_vector(rng, n, bound);
        for (Index i = 0; i < n; ++i)
            if (v[i] != 0) return primitive(v);
    }
}

std::vector<IntVec> random_independent_rays(Rng& rng, Index rank, Index want,
                                            long long bound) {
    std::vector<IntVec> gens;
    int tries = 0;
    while (static_cast<Index>(gens.size()) < want && tries < 40) {
        ++tries;
        IntVec cand = random_primitive(rng, rank, bound);
        std::vector<IntVec> trial = gens;
        trial.push_back(cand);
        if (rational_rank(rows_to_matrix(rank, trial)) ==
            static_cast<Index>(trial.size()))
            gens = std::move(trial);
    }
    return gens;
}

IntMat random_unimodular(Rng& rng, Index n) {
    IntMat g = IntMat::Identity(n, n);
    for (int step = 0; step < 6; ++step) {
        Index i = static_cast<Index>(draw(rng, 0, n - 1));
        Index j = static_cast<Index>(draw(rng, 0, n - 1));
        switch (draw(rng, 0, 2)) {
            case 0:
                if (i != j) g.row(j) += Integer(draw(rng, 1, 2)) * g.row(i);
                break;
            case 1:
                g.row(i).swap(g.row(j));
                break;
            default:
                g.row(i) = -g.row(i);
        }
    }
    return g;
}

IntMat annihilator(const Fan& f, Index i) {
    return rows_to_matrix(f.ambient_rank(), f.cone(i).span_normals);
}

}  // namespace

std::vector<Cone> random_simplicial_cones(std::uint64_t seed, int count,
                                          Index max_rank) {
    Rng rng(seed);
    std::vector<Cone> out;
    while (static_cast<int>(out.size()) < count) {
        Index rank = static_cast<Index>(draw(rng, 1, max_rank));
        Index want = static_cast<Index>(draw(rng, 0, std::min<Index>(rank, 5)));
        out.push_back(make_cone(rank, random_independent_rays(rng, rank, want, 3)));
    }
    return out;
}

Fan random_complete_rank2_fan(std::uint64_t seed, int subdivisions) {
    Rng rng(seed);
    Fan f = projective_space_fan(2);
    for (int s = 0; s < subdivisions; ++s) {
        const std::vector<Index>& two = f.by_dim(2);
        Index pick = two[static_cast<size_t>(draw(rng, 0, static_cast<long long>(two.size()) - 1))];
        const Cone& c = f.cone(pick);
        IntVec mid = c.rays[0] + c.rays[1];
        mid = primitive(mid);
        std::vector<std::vector<IntVec>> maximal;
        for (Index m : f.maximal_indices())
            if (m != pick) maximal.push_back(f.cone(m).rays);
        maximal.push_back({c.rays[0], mid});
        maximal.push_back({mid, c.rays[1]});
        f = Fan::from_maximal(2, maximal);
    }
    return f;
}

Fan random_simplicial_fan(std::uint64_t seed, Index rank, int attempts) {
    Rng rng(seed);
    std::vector<std::vector<IntVec>> accepted;
    Fan f = Fan::from_maximal(rank, {});
    for (int t = 0; t < attempts; ++t) {
        Index want = static_cast<Index>(draw(rng, 1, rank));
        std::vector<IntVec> gens = random_independent_rays(rng, rank, want, 2);
        if (gens.empty()) continue;
        std::vector<std::vector<IntVec>> trial = accepted;
        trial.push_back(std::move(gens));
        try {
            f = Fan::from_maximal(rank, trial);
            accepted = std::move(trial);
        } catch (const FanError&) {
        }
    }
    return f;
}

FuzzReport run_property_suite(std::uint64_t seed, int count, Index rank) {
    Rng rng(seed);
    FuzzReport rep;
    for (int n = 0; n < count; ++n) {
        std::uint64_t fan_seed = rng();
        Fan f = random_simplicial_fan(fan_seed, rank, 8);
        rep.fans += 1;
        const Index r = f.ambient_rank();
        auto fail = [&](const std::string& property) {
            rep.failures.push_back({fan_seed, property, fan_to_json(f)});
        };

        // The builder checks that the coboundary squares to zero and the
        // cohomology routine that Smith and Gaussian ranks agree; three Euler
        // counts close the loop.
        CohomologyTable table{r, {}};
        try {
            table = cohomology_table(f);
            for (int p = 0; p <= static_cast<int>(r); ++p) {
                CochainComplex c = build_ishida(f, p);
                std::vector<CohomologyGroup> groups;
                for (int q = 0; q <= static_cast<int>(r); ++q)
                    groups.push_back(table.group(p, q));
                Integer oracle = euler_oracle(f, p);
                if (euler_from_ranks(c) != oracle ||
                    euler_from_cohomology(groups) != oracle) {
                    fail("euler counts disagree at p=" + std::to_string(p));
                    break;
                }
            }
        } catch (const std::exception& e) {
            fail(std::string("complex construction: ") + e.what());
            continue;
        }
        rep.checks += 2;

        // Contraction blocks must not see the choice of lift.
        std::vector<std::pair<Index, Index>> incidences;
        for (Index i = 0; i < f.size(); ++i)
            for (Index j : f.cofacets_of(i)) incidences.push_back({i, j});
        if (!incidences.empty()) {
            auto [sigma, tau] =
                incidences[static_cast<size_t>(draw(rng, 0, static_cast<long long>(incidences.size()) - 1))];
            FacetIncidence inc = facet_incidence(f, sigma, tau);
            IntVec shifted = inc.lift;
            for (const IntVec& ray : f.cone(sigma).rays)
                shifted += Integer(draw(rng, -2, 2)) * ray;
            IntMat source = annihilator(f, sigma);
            IntMat target = annihilator(f, tau);
            for (int k = 1; k <= static_cast<int>(source.rows()); ++k)
                if (!is_zero(IntMat(contraction_block(source, target, inc.lift, k) -
                                    contraction_block(source, target, shifted, k)))) {
                    fail("contraction depends on the lift at k=" + std::to_string(k));
                    break;
                }
            rep.checks += 1;
        }

        // Graded Leibniz rule for the interior product, on random coordinates.
        {
            const Index amb = 4;
            int degree_a = static_cast<int>(draw(rng, 1, 2));
            int degree_b = static_cast<int>(draw(rng, 1, 2));
            IntVec values = random_vector(rng, amb, 5);
            IntVec a = random_vector(rng, static_cast<Index>(wedge_dim(amb, degree_a)), 5);
            IntVec b = random_vector(rng, static_cast<Index>(wedge_dim(amb, degree_b)), 5);
            IntVec product = wedge_product_coords(static_cast<int>(amb), degree_a, a, degree_b, b);
            IntVec lhs = interior_product_coords(values, degree_a + degree_b, product);
            IntVec rhs = wedge_product_coords(
                static_cast<int>(amb), degree_a - 1,
                interior_product_coords(values, degree_a, a), degree_b, b);
            IntVec cross = wedge_product_coords(
                static_cast<int>(amb), degree_a, a, degree_b - 1,
                interior_product_coords(values, degree_b, b));
            if (degree_a % 2 == 0)
                rhs += cross;
            else
                rhs -= cross;
            if (!is_zero(rows_to_matrix(lhs.size(), {IntVec(lhs - rhs)})))
                fail("interior product breaks the Leibniz rule");
            rep.checks += 1;
        }

        // Reordering the input presentation must not change anything.
        {
            std::vector<std::vector<IntVec>> maximal;
            for (Index m : f.maximal_indices())
                if (f.cone(m).dim > 0) maximal.push_back(f.cone(m).rays);
            for (auto& gens : maximal) shuffle_draws(rng, gens);
            shuffle_draws(rng, maximal);
            CohomologyTable shuffled = cohomology_table(Fan::from_maximal(r, maximal));
            if (!(shuffled.groups == table.groups)) fail("input order changed the cohomology");
            rep.checks += 1;
        }

        // A unimodular change of coordinates must not change anything either.
        {
            CohomologyTable moved = cohomology_table(apply_unimodular(f, random_unimodular(rng, r)));
            if (!(moved.groups == table.groups)) fail("unimodular change moved the cohomology");
            rep.checks += 1;
        }
    }
    return rep;
}

}  // namespace fancohom
