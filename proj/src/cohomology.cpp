#include "fancohom/cohomology.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace fancohom {

namespace {

template <typename Seq>
std::string joined(const Seq& xs) {
    std::ostringstream out;
    bool first = true;
    for (const auto& x : xs) {
        if (!first) out << ", ";
        out << x;
        first = false;
    }
    return out.str();
}

int worker_count() {
    const char* env = std::getenv("ISHIDA_THREADS");
    if (env == nullptr) return 1;
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end == env || n < 1) return 1;
    return static_cast<int>(std::min<long>(n, 64));
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

std::set<std::string> cone_keys(const Fan& f) {
    std::set<std::string> keys;
    for (Index i = 0; i < f.size(); ++i) keys.insert(f.cone(i).key());
    return keys;
}

/* Cone keys of the fan minus the star of the given ray. */
std::set<std::string> keys_without_star(const Fan& f, Index rho) {
    std::vector<Index> star = f.star(rho);
    std::set<Index> inside(star.begin(), star.end());
    std::set<std::string> keys;
    for (Index i = 0; i < f.size(); ++i)
        if (inside.count(i) == 0) keys.insert(f.cone(i).key());
    return keys;
}

}  // namespace

std::string to_string(const CohomologyGroup& g) {
    if (g.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    if (g.free_rank > 0) {
        out << "Z";
        if (g.free_rank > 1) out << "^" << g.free_rank;
        first = false;
    }
    for (const Integer& t : g.torsion) {
        if (!first) out << " + ";
        out << "Z/" << t;
        first = false;
    }
    return out.str();
}

CohomologyGroup cohomology(const CochainComplex& c, int q) {
    CohomologyGroup g;
    if (q < 0 || q >= c.degrees()) return g;

    const IntMat outgoing = c.differential(q);
    const IntMat incoming = c.differential(q - 1);
    const IntMat kernel = kernel_basis(outgoing);
    const Index k = kernel.cols();

    // The kernel is saturated, so every cocycle has integer coordinates in it.
    IntMat coords(k, incoming.cols());
    for (Index j = 0; j < incoming.cols(); ++j) {
        IntVec b = incoming.col(j);
        auto x = solve_integer(kernel, b);
        if (!x) throw ComplexError("cohomology: a coboundary escapes the cocycle lattice");
        coords.col(j) = *x;
    }

    const SmithForm sf = smith_form(coords);
    g.free_rank = k - sf.rank();
    for (const Integer& t : sf.invariant_factors())
        if (t > 1) g.torsion.push_back(t);

    // Second opinion over Q, by a deliberately different elimination.
    const Index rational = c.rank(q) - rational_rank(outgoing) - rational_rank(incoming);
    if (rational != g.free_rank)
        throw ComplexError("cohomology: Smith and Gaussian ranks disagree");
    return g;
}

std::vector<CohomologyGroup> cohomology_groups(const CochainComplex& c) {
    std::vector<CohomologyGroup> out;
    out.reserve(static_cast<size_t>(c.degrees()));
    for (int q = 0; q < c.degrees(); ++q) out.push_back(cohomology(c, q));
    return out;
}

const CohomologyGroup& CohomologyTable::group(int p, int q) const {
    static const CohomologyGroup zero{};
    if (p < 0 || q < 0 || p >= static_cast<int>(groups.size())) return zero;
    const auto& row = groups[static_cast<size_t>(p)];
    if (q >= static_cast<int>(row.size())) return zero;
    return row[static_cast<size_t>(q)];
}

CohomologyTable cohomology_table(const Fan& f) {
    const int r = static_cast<int>(f.ambient_rank());
    CohomologyTable t;
    t.ambient_rank = r;
    t.groups.assign(static_cast<size_t>(r) + 1,
                    std::vector<CohomologyGroup>(static_cast<size_t>(r) + 1));

    auto job = [&](int p) {
        CochainComplex c = build_ishida(f, p);
        for (int q = 0; q < c.degrees(); ++q)
            t.groups[static_cast<size_t>(p)][static_cast<size_t>(q)] = cohomology(c, q);
    };

    const int workers = std::min(worker_count(), r + 1);
    if (workers <= 1) {
        for (int p = 0; p <= r; ++p) job(p);
        return t;
    }

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto run = [&]() {
        while (true) {
            int p = next.fetch_add(1);
            if (p > r) return;
            try {
                job(p);
            } catch (...) {
                std::lock_guard<std::mutex> hold(failure_lock);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return t;
}

std::vector<long long> betti_numbers(const CohomologyTable& t) {
    const int r = static_cast<int>(t.ambient_rank);
    std::vector<long long> b(static_cast<size_t>(2 * r) + 1, 0);
    for (int p = 0; p <= r; ++p)
        for (int q = 0; q <= r; ++q)
            b[static_cast<size_t>(p + q)] += static_cast<long long>(t.free_rank(p, q));
    return b;
}

Integer euler_oracle(const Fan& f, int p, bool flip_sign) {
    const int r = static_cast<int>(f.ambient_rank());
    Integer chi = 0;
    const int top = std::min(p, f.max_dim());
    for (int q = 0; q <= top; ++q) {
        Integer term = Integer(static_cast<long long>(f.by_dim(q).size())) *
                       Integer(binomial(r - q, p - q));
        if (q % 2 == 0)
            chi += term;
        else
            chi -= term;
    }
    return flip_sign ? Integer(-chi) : chi;
}

Integer euler_from_ranks(const CochainComplex& c) {
    Integer chi = 0;
    for (int q = 0; q < c.degrees(); ++q) {
        if (q % 2 == 0)
            chi += Integer(static_cast<long long>(c.rank(q)));
        else
            chi -= Integer(static_cast<long long>(c.rank(q)));
    }
    return chi;
}

Integer euler_from_cohomology(const std::vector<CohomologyGroup>& groups) {
    Integer chi = 0;
    for (size_t q = 0; q < groups.size(); ++q) {
        if (q % 2 == 0)
            chi += Integer(static_cast<long long>(groups[q].free_rank));
        else
            chi -= Integer(static_cast<long long>(groups[q].free_rank));
    }
    return chi;
}

Report verify_single_cone(const Fan& f, const VerifyOptions& opt) {
    Report rep;
    rep.regime = "single cone";
    const std::vector<Index> maximal = f.maximal_indices();
    if (maximal.size() != 1)
        return reject(rep.regime, "the fan is not the face fan of a single cone");
    const Cone& pi = f.cone(maximal[0]);
    if (!pi.simplicial) return reject(rep.regime, "the cone is not simplicial");

    const int r = static_cast<int>(f.ambient_rank());
    const int d = pi.dim;

    bool rank_ok = true;
    bool vanish_ok = true;
    bool euler_ok = true;
    std::vector<Integer> h0;
    std::vector<Integer> observed;
    std::vector<Integer> expected;
    for (int p = 0; p <= r; ++p) {
        const CochainComplex c = build_ishida(f, p);
        const std::vector<CohomologyGroup> gs = cohomology_groups(c);
        const CohomologyGroup degree_zero = gs.empty() ? CohomologyGroup{} : gs[0];
        h0.push_back(Integer(static_cast<long long>(degree_zero.free_rank)));
        if (degree_zero.free_rank != binomial(r - d, p) || !degree_zero.torsion.empty())
            rank_ok = false;
        for (size_t q = 1; q < gs.size(); ++q)
            if (gs[q].free_rank != 0) vanish_ok = false;
        observed.push_back(euler_from_cohomology(gs));
        expected.push_back(euler_oracle(f, p, opt.flip_euler_sign));
        if (observed.back() != expected.back()) euler_ok = false;
    }
    add_check(rep, "degree zero carries the full predicted rank", rank_ok,
              "h^0 for p = 0.." + std::to_string(r) + ": " + joined(h0));
    add_check(rep, "higher degrees vanish rationally", vanish_ok);
    add_check(rep, "Euler characteristics match the face count oracle", euler_ok,
              "observed: " + joined(observed) + " / oracle: " + joined(expected));
    settle(rep);
    return rep;
}

Report verify_complete_simplicial(const Fan& f, const VerifyOptions& opt) {
    Report rep;
    rep.regime = "complete simplicial";
    if (!f.is_simplicial()) return reject(rep.regime, "the fan is not simplicial");
    if (!f.is_complete()) return reject(rep.regime, "the fan is not complete");

    const int r = static_cast<int>(f.ambient_rank());
    const CohomologyTable t = cohomology_table(f);

    bool vanish_ok = true;
    std::vector<Integer> diagonal;
    for (int p = 0; p <= r; ++p) {
        for (int q = 0; q <= r; ++q)
            if (q != p && t.free_rank(p, q) != 0) vanish_ok = false;
        diagonal.push_back(Integer(static_cast<long long>(t.free_rank(p, p))));
    }
    add_check(rep, "off-diagonal cohomology vanishes rationally", vanish_ok,
              "h^p(Lambda^p) for p = 0.." + std::to_string(r) + ": " + joined(diagonal));

    bool symmetric = true;
    for (int p = 0; p <= r; ++p)
        if (diagonal[static_cast<size_t>(p)] != diagonal[static_cast<size_t>(r - p)])
            symmetric = false;
    add_check(rep, "the diagonal ranks are palindromic", symmetric);

    add_check(rep, "both end ranks equal one",
              diagonal.front() == 1 && diagonal.back() == 1);

    const std::vector<long long> betti = betti_numbers(t);
    bool odd_ok = true;
    for (size_t l = 1; l < betti.size(); l += 2)
        if (betti[l] != 0) odd_ok = false;
    add_check(rep, "odd Betti numbers vanish", odd_ok, "b = " + joined(betti));

    bool even_ok = true;
    for (int p = 0; p <= r; ++p)
        if (betti[static_cast<size_t>(2 * p)] != diagonal[static_cast<size_t>(p)]) even_ok = false;
    add_check(rep, "even Betti numbers equal the diagonal ranks", even_ok);

    bool euler_ok = true;
    std::vector<Integer> observed;
    std::vector<Integer> expected;
    for (int p = 0; p <= r; ++p) {
        Integer chi = 0;
        for (int q = 0; q <= r; ++q) {
            Integer h = Integer(static_cast<long long>(t.free_rank(p, q)));
            if (q % 2 == 0)
                chi += h;
            else
                chi -= h;
        }
        observed.push_back(chi);
        expected.push_back(euler_oracle(f, p, opt.flip_euler_sign));
        if (observed.back() != expected.back()) euler_ok = false;
    }
    add_check(rep, "Euler characteristics match the face count oracle", euler_ok,
              "observed: " + joined(observed) + " / oracle: " + joined(expected));
    settle(rep);
    return rep;
}

Report verify_star_removal(const Fan& f, Index rho, const VerifyOptions& opt) {
    Report rep;
    rep.regime = "star removal";
    if (!f.is_simplicial()) return reject(rep.regime, "the fan is not simplicial");
    if (!f.is_complete()) return reject(rep.regime, "the fan is not complete");
    if (rho < 0 || rho >= f.size() || f.cone(rho).dim != 1)
        return reject(rep.regime, "the marked cone is not a ray of the fan");
    if (f.ambient_rank() < 2)
        return reject(rep.regime, "the fan has ambient rank one, the collapsed star has rank zero");

    const int r = static_cast<int>(f.ambient_rank());
    bool shift_ok = true;
    bool vanish_ok = true;
    bool split_ok = true;
    bool euler_ok = true;
    std::vector<Integer> remainder_diagonal;
    for (int p = 0; p <= r; ++p) {
        const SubcomplexSequence seq = subcomplex_sequence(f, rho, p);
        const std::vector<CohomologyGroup> star = cohomology_groups(seq.star);
        const std::vector<CohomologyGroup> full = cohomology_groups(seq.full);
        const std::vector<CohomologyGroup> remainder = cohomology_groups(seq.remainder);

        if (p == 0) {
            for (const CohomologyGroup& g : star)
                if (!g.is_zero()) shift_ok = false;
        } else {
            const ShiftIso iso = star_shift_iso(f, rho, p);
            const std::vector<CohomologyGroup> collapsed = cohomology_groups(iso.source);
            for (int q = 0; q <= p; ++q) {
                const CohomologyGroup lhs =
                    q < static_cast<int>(star.size()) ? star[static_cast<size_t>(q)]
                                                      : CohomologyGroup{};
                const CohomologyGroup rhs =
                    (q >= 1 && q - 1 < static_cast<int>(collapsed.size()))
                        ? collapsed[static_cast<size_t>(q - 1)]
                        : CohomologyGroup{};
                if (!(lhs == rhs)) shift_ok = false;
            }
        }

        for (size_t q = 0; q < remainder.size(); ++q)
            if (static_cast<int>(q) != p && remainder[q].free_rank != 0) vanish_ok = false;
        remainder_diagonal.push_back(
            p < static_cast<int>(remainder.size())
                ? Integer(static_cast<long long>(remainder[static_cast<size_t>(p)].free_rank))
                : Integer(0));

        for (int q = 0; q <= p; ++q) {
            const Index a = q < static_cast<int>(star.size())
                                ? star[static_cast<size_t>(q)].free_rank : 0;
            const Index b = q < static_cast<int>(remainder.size())
                                ? remainder[static_cast<size_t>(q)].free_rank : 0;
            const Index whole = q < static_cast<int>(full.size())
                                    ? full[static_cast<size_t>(q)].free_rank : 0;
            if (whole != a + b) split_ok = false;
        }

        if (euler_oracle(f, p, opt.flip_euler_sign) !=
            euler_from_ranks(seq.star) + euler_from_ranks(seq.remainder))
            euler_ok = false;
    }
    add_check(rep, "the star part is the collapsed fan's complex shifted by one", shift_ok);
    add_check(rep, "the remainder cohomology vanishes off the diagonal", vanish_ok,
              "h^p of the remainder for p = 0.." + std::to_string(r) + ": " +
                  joined(remainder_diagonal));
    add_check(rep, "cohomology ranks add up degreewise", split_ok);
    add_check(rep, "Euler characteristics are additive over the splitting", euler_ok);
    settle(rep);
    return rep;
}

Report verify_convex_support(const Fan& f, const VerifyOptions& opt) {
    Report rep;
    rep.regime = "convex support";
    if (!f.is_simplicial()) return reject(rep.regime, "the fan is not simplicial");
    if (!support_convex(f))
        return reject(rep.regime, "the support is not a full-dimensional convex cone");

    const int r = static_cast<int>(f.ambient_rank());

    bool complex_ok = true;
    if (f.is_complete()) {
        add_check(rep, "the support is already complete, no completion needed", true);
    } else {
        const Completion comp = complete_from_convex(f);
        const bool witness_ok = comp.fan.is_complete() && comp.fan.is_simplicial();
        std::ostringstream ray_text;
        for (Index i = 0; i < comp.rho.size(); ++i) {
            if (i) ray_text << ", ";
            ray_text << comp.rho(i);
        }
        add_check(rep, "coning the boundary gives a complete simplicial fan", witness_ok,
                  "added ray (" + ray_text.str() + ")");

        const auto rho_idx = comp.fan.find(make_cone(f.ambient_rank(), {comp.rho}));
        const bool recovered =
            rho_idx && keys_without_star(comp.fan, *rho_idx) == cone_keys(f);
        add_check(rep, "removing the new star recovers the fan", recovered);

        if (rho_idx) {
            for (int p = 0; p <= r; ++p) {
                const SubcomplexSequence seq = subcomplex_sequence(comp.fan, *rho_idx, p);
                const CochainComplex own = build_ishida(f, p);
                if (seq.remainder.ranks != own.ranks) {
                    complex_ok = false;
                    continue;
                }
                for (size_t q = 0; q < own.d.size(); ++q)
                    if (!is_zero(IntMat(seq.remainder.d[q] - own.d[q]))) complex_ok = false;
            }
        } else {
            complex_ok = false;
        }
        add_check(rep, "the witness sequence reproduces the fan's complex", complex_ok);
    }

    bool vanish_ok = true;
    bool euler_ok = true;
    std::vector<Integer> diagonal;
    for (int p = 0; p <= r; ++p) {
        const CochainComplex c = build_ishida(f, p);
        const std::vector<CohomologyGroup> gs = cohomology_groups(c);
        for (size_t q = 0; q < gs.size(); ++q)
            if (static_cast<int>(q) != p && gs[q].free_rank != 0) vanish_ok = false;
        diagonal.push_back(
            p < static_cast<int>(gs.size())
                ? Integer(static_cast<long long>(gs[static_cast<size_t>(p)].free_rank))
                : Integer(0));
        if (euler_from_cohomology(gs) != euler_oracle(f, p, opt.flip_euler_sign))
            euler_ok = false;
    }
    add_check(rep, "cohomology vanishes off the diagonal", vanish_ok,
              "h^p for p = 0.." + std::to_string(r) + ": " + joined(diagonal));
    add_check(rep, "Euler characteristics match the face count oracle", euler_ok);
    settle(rep);
    return rep;
}

Report verify_graph_transfer(const Fan& base, const std::vector<Integer>& eta,
                             const VerifyOptions& opt) {
    Report rep;
    rep.regime = "graph transfer";
    if (!base.is_simplicial()) return reject(rep.regime, "the base fan is not simplicial");
    if (!base.is_complete()) return reject(rep.regime, "the base fan is not complete");

    const GraphFans gf = graph_fans(base, eta);
    const int r = static_cast<int>(gf.full.ambient_rank());

    const CohomologyTable base_table = cohomology_table(base);
    const CohomologyTable upper_table = cohomology_table(gf.upper);
    const CohomologyTable flat_table = cohomology_table(gf.flat);
    const CohomologyTable full_table = cohomology_table(gf.full);

    bool match_ok = true;
    std::vector<Integer> upper_diagonal;
    for (int p = 0; p <= r; ++p) {
        for (int q = 0; q <= r; ++q)
            if (upper_table.free_rank(p, q) != base_table.free_rank(p, q)) match_ok = false;
        upper_diagonal.push_back(Integer(static_cast<long long>(upper_table.free_rank(p, p))));
    }
    add_check(rep, "the upper fan has the cohomology of the base", match_ok,
              "upper diagonal: " + joined(upper_diagonal));

    bool flat_ok = true;
    for (int p = 0; p <= r; ++p)
        for (int q = 0; q <= r; ++q)
            if (q != p && q != p - 1 && flat_table.free_rank(p, q) != 0) flat_ok = false;
    add_check(rep, "the flat part concentrates in two adjacent degrees", flat_ok);

    add_check(rep, "removing the downward star leaves the upper fan",
              keys_without_star(gf.full, gf.rho) == cone_keys(gf.upper));

    const QuotientFan collapsed = quotient_fan(gf.full, gf.rho);
    add_check(rep, "collapsing the downward ray recovers the base fan",
              cone_keys(collapsed.fan) == cone_keys(base) &&
                  collapsed.fan.ambient_rank() == base.ambient_rank());

    bool split_ok = true;
    bool euler_ok = true;
    for (int p = 0; p <= r; ++p) {
        const SubcomplexSequence seq = subcomplex_sequence(gf.full, gf.rho, p);
        const std::vector<CohomologyGroup> star = cohomology_groups(seq.star);
        for (int q = 0; q <= r; ++q) {
            const Index star_rank = q < static_cast<int>(star.size())
                                        ? star[static_cast<size_t>(q)].free_rank : 0;
            if (full_table.free_rank(p, q) != star_rank + upper_table.free_rank(p, q))
                split_ok = false;
        }
        if (euler_oracle(gf.full, p, opt.flip_euler_sign) !=
            euler_from_ranks(seq.star) + euler_from_ranks(seq.remainder))
            euler_ok = false;
    }
    add_check(rep, "cohomology ranks add up degreewise over the closed fan", split_ok);
    add_check(rep, "Euler characteristics are additive over the splitting", euler_ok);
    settle(rep);
    return rep;
}

}  // namespace fancohom
