// Acceptance gate: one line per criterion, nonzero exit if any fails.
// argv[1] is the path to the command line binary, used by the last criterion.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fancohom/cohomology.hpp"
#include "fancohom/io.hpp"
#include "fancohom/ishida.hpp"
#include "fancohom/kcomplex.hpp"
#include "fancohom/random_fans.hpp"

using namespace fancohom;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, double budget_seconds,
               const std::function<bool(std::ostream&)>& body) {
    std::ostringstream detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && seconds > budget_seconds) {
        ok = false;
        detail << "over the " << budget_seconds << "s budget";
    }
    std::ostringstream line;
    line << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << name << " ("
         << std::fixed;
    line.precision(2);
    line << seconds << "s)";
    if (!ok) {
        ++failures;
        if (!detail.str().empty()) line << " - " << detail.str();
    }
    std::cout << line.str() << "\n" << std::flush;
}

IntVec vec(std::initializer_list<long long> entries) {
    IntVec v(static_cast<Index>(entries.size()));
    Index i = 0;
    for (long long e : entries) v[i++] = Integer(e);
    return v;
}

Fan half_plane_fan() {
    return Fan::from_maximal(2, {{vec({1, 0}), vec({0, 1})}, {vec({0, 1}), vec({-1, 0})}});
}

std::vector<long long> table_diagonal(const CohomologyTable& t) {
    std::vector<long long> h;
    for (int p = 0; p <= static_cast<int>(t.ambient_rank); ++p)
        h.push_back(static_cast<long long>(t.group(p, p).free_rank));
    return h;
}

bool diagonal_only(const CohomologyTable& t, std::ostream& out, const std::string& name) {
    for (int p = 0; p <= static_cast<int>(t.ambient_rank); ++p)
        for (int q = 0; q <= static_cast<int>(t.ambient_rank); ++q)
            if (p != q && t.group(p, q).free_rank != 0) {
                out << name << ": H^" << q << " of the " << p
                    << "-th complex has rank " << t.group(p, q).free_rank;
                return false;
            }
    return true;
}

std::vector<Fan> named_complete_fans() {
    std::vector<Fan> fans{projective_space_fan(1), projective_space_fan(2),
                          projective_space_fan(3),
                          product_fan(projective_space_fan(1), projective_space_fan(1))};
    for (int a = 0; a <= 3; ++a) fans.push_back(hirzebruch_fan(Integer(a)));
    return fans;
}

bool criterion_single_cones(std::ostream& out) {
    std::vector<Cone> corpus = random_simplicial_cones(2024, 120, 5);
    if (corpus.size() < 100) {
        out << "corpus too small";
        return false;
    }
    bool off_axis = false;
    for (const Cone& pi : corpus)
        for (const IntVec& ray : pi.rays) {
            int nonzero = 0;
            for (Index i = 0; i < ray.size(); ++i)
                if (ray[i] != 0) ++nonzero;
            if (nonzero > 1) off_axis = true;
        }
    if (!off_axis) {
        out << "no cone leaves the coordinate axes";
        return false;
    }
    for (size_t n = 0; n < corpus.size(); ++n) {
        const Cone& pi = corpus[n];
        Fan f = gamma_fan(pi.ambient, pi.rays);
        const int r = static_cast<int>(pi.ambient);
        for (int p = 0; p <= r; ++p) {
            std::vector<CohomologyGroup> groups = cohomology_groups(build_ishida(f, p));
            groups.resize(static_cast<size_t>(r) + 1);
            long long predicted = binomial(static_cast<int>(r - pi.dim), p);
            if (groups[0].free_rank != static_cast<Index>(predicted) ||
                !groups[0].torsion.empty()) {
                out << "cone " << n << ", p=" << p << ": degree zero has rank "
                    << groups[0].free_rank << ", predicted " << predicted;
                return false;
            }
            // Higher degrees vanish rationally; singular cones may leave
            // finite torsion behind, which the rank statement ignores.
            for (size_t q = 1; q < groups.size(); ++q)
                if (groups[q].free_rank != 0) {
                    out << "cone " << n << ", p=" << p << ": H^" << q
                        << " has rank " << groups[q].free_rank;
                    return false;
                }
        }
        if (verify_single_cone(f).verdict != Verdict::pass) {
            out << "verification regime disagrees on cone " << n;
            return false;
        }
    }
    return true;
}

bool criterion_complete_simplicial(std::ostream& out) {
    std::vector<Fan> fans = named_complete_fans();
    for (int i = 0; i < 20; ++i)
        fans.push_back(random_complete_rank2_fan(5000 + static_cast<std::uint64_t>(i),
                                                 1 + i % 6));
    for (size_t n = 0; n < fans.size(); ++n) {
        const Fan& f = fans[n];
        const int r = static_cast<int>(f.ambient_rank());
        CohomologyTable t = cohomology_table(f);
        if (!diagonal_only(t, out, "fan " + std::to_string(n))) return false;
        std::vector<long long> h = table_diagonal(t);
        for (int p = 0; p <= r; ++p) {
            Integer signed_euler = euler_oracle(f, p);
            if (p % 2 == 1) signed_euler = -signed_euler;
            if (h[static_cast<size_t>(p)] != h[static_cast<size_t>(r - p)] ||
                Integer(h[static_cast<size_t>(p)]) != signed_euler) {
                out << "fan " << n << ": diagonal " << h[static_cast<size_t>(p)]
                    << " at p=" << p << " fails palindrome or Euler";
                return false;
            }
        }
        if (h.front() != 1 || h.back() != 1) {
            out << "fan " << n << ": end ranks are not one";
            return false;
        }
        std::vector<long long> betti = betti_numbers(t);
        for (size_t l = 1; l < betti.size(); l += 2)
            if (betti[l] != 0) {
                out << "fan " << n << ": odd Betti number b_" << l << " = " << betti[l];
                return false;
            }
        if (verify_complete_simplicial(f).verdict != Verdict::pass) {
            out << "verification regime disagrees on fan " << n;
            return false;
        }
    }
    return true;
}

bool criterion_golden_betti(std::ostream& out) {
    std::vector<std::pair<Fan, std::vector<long long>>> golden;
    golden.push_back({projective_space_fan(2), {1, 0, 1, 0, 1}});
    golden.push_back({projective_space_fan(3), {1, 0, 1, 0, 1, 0, 1}});
    golden.push_back({product_fan(projective_space_fan(1), projective_space_fan(1)),
                      {1, 0, 2, 0, 1}});
    for (int a = 0; a <= 3; ++a)
        golden.push_back({hirzebruch_fan(Integer(a)), {1, 0, 2, 0, 1}});
    for (size_t n = 0; n < golden.size(); ++n) {
        const auto& [f, expected] = golden[n];
        // The frozen numbers must agree with the face count oracle before
        // they are allowed to judge the computed table.
        for (int p = 0; p <= static_cast<int>(f.ambient_rank()); ++p) {
            Integer signed_euler = euler_oracle(f, p);
            if (p % 2 == 1) signed_euler = -signed_euler;
            if (Integer(expected[static_cast<size_t>(2 * p)]) != signed_euler) {
                out << "golden row " << n << " disagrees with the Euler oracle at p=" << p;
                return false;
            }
        }
        std::vector<long long> betti = betti_numbers(cohomology_table(f));
        if (betti != expected) {
            out << "fan " << n << ": computed Betti numbers differ from the golden row";
            return false;
        }
    }
    return true;
}

bool criterion_star_removal(std::ostream& out) {
    if (verify_convex_support(half_plane_fan()).verdict != Verdict::pass) {
        out << "the half plane fan fails its convex support check";
        return false;
    }
    // Collapsing the star needs somewhere to live, so rank one stays out.
    std::vector<Fan> fans;
    for (Fan& f : named_complete_fans())
        if (f.ambient_rank() >= 2) fans.push_back(std::move(f));
    fans.push_back(random_complete_rank2_fan(77, 4));
    fans.push_back(random_complete_rank2_fan(78, 5));
    fans.push_back(random_complete_rank2_fan(79, 6));
    int instances = 0;
    for (size_t n = 0; n < fans.size(); ++n) {
        const Fan& f = fans[n];
        const int r = static_cast<int>(f.ambient_rank());
        Index rho = f.by_dim(1)[n % f.by_dim(1).size()];
        if (verify_star_removal(f, rho).verdict != Verdict::pass) {
            out << "star removal fails on fan " << n;
            return false;
        }
        ++instances;
        // Remainder concentration and additive Euler counts, recomputed
        // without the verification machinery.
        std::vector<std::vector<CohomologyGroup>> remainder;
        for (int p = 0; p <= r; ++p) {
            SubcomplexSequence seq = subcomplex_sequence(f, rho, p);
            remainder.push_back(cohomology_groups(seq.remainder));
            remainder.back().resize(static_cast<size_t>(r) + 1);
            Integer split = euler_from_ranks(seq.star) + euler_from_ranks(seq.remainder);
            if (split != euler_oracle(f, p)) {
                out << "fan " << n << ": Euler counts are not additive at p=" << p;
                return false;
            }
        }
        for (int p = 0; p <= r; ++p)
            for (int q = 0; q <= r; ++q)
                if (p != q && remainder[static_cast<size_t>(p)][static_cast<size_t>(q)]
                                  .free_rank != 0) {
                    out << "fan " << n << ": remainder H^" << q
                        << " survives off the diagonal at p=" << p;
                    return false;
                }
        std::vector<long long> betti(2 * static_cast<size_t>(r) + 1, 0);
        for (int p = 0; p <= r; ++p)
            for (int q = 0; q <= r; ++q)
                betti[static_cast<size_t>(p + q)] += static_cast<long long>(
                    remainder[static_cast<size_t>(p)][static_cast<size_t>(q)].free_rank);
        for (size_t l = 1; l < betti.size(); l += 2)
            if (betti[l] != 0) {
                out << "fan " << n << ": remainder Betti number b_" << l << " is odd";
                return false;
            }
    }
    if (instances < 10) {
        out << "only " << instances << " star removal instances";
        return false;
    }
    return true;
}

bool criterion_graph_transfer(std::ostream& out) {
    std::vector<Fan> bases{projective_space_fan(1),
                           product_fan(projective_space_fan(1), projective_space_fan(1)),
                           projective_space_fan(2)};
    std::uint64_t salt = 99;
    int combos = 0;
    for (size_t n = 0; n < bases.size(); ++n) {
        const Fan& base = bases[n];
        size_t rays = base.by_dim(1).size();
        std::vector<std::vector<Integer>> etas;
        etas.emplace_back(rays, Integer(0));
        for (int variant = 0; variant < 2; ++variant) {
            std::vector<Integer> eta;
            for (size_t i = 0; i < rays; ++i) {
                salt = salt * 6364136223846793005ULL + 1442695040888963407ULL;
                eta.push_back(Integer(static_cast<long long>(salt % 5) - 2));
            }
            etas.push_back(std::move(eta));
        }
        for (size_t e = 0; e < etas.size(); ++e) {
            if (verify_graph_transfer(base, etas[e]).verdict != Verdict::pass) {
                out << "transfer fails on base " << n << ", eta " << e;
                return false;
            }
            // The degree shift behind the transfer must commute with the
            // coboundaries, block for block.
            GraphFans g = graph_fans(base, etas[e]);
            const int r = static_cast<int>(g.full.ambient_rank());
            for (int p = 1; p <= r; ++p) {
                ShiftIso iso = star_shift_iso(g.full, g.rho, p);
                for (int q = 0; q < p; ++q) {
                    IntMat left = iso.target.d[static_cast<size_t>(q)] *
                                  iso.maps[static_cast<size_t>(q)];
                    IntMat right = iso.maps[static_cast<size_t>(q) + 1] *
                                   iso.source.differential(q - 1);
                    if (!is_zero(IntMat(left - right))) {
                        out << "shift maps fail to commute on base " << n << ", eta " << e
                            << ", p=" << p << ", q=" << q;
                        return false;
                    }
                }
            }
            ++combos;
        }
    }
    if (combos < 9) {
        out << "only " << combos << " combinations";
        return false;
    }
    return true;
}

bool criterion_double_complex(std::ostream& out) {
    std::vector<Fan> fans{projective_space_fan(1), projective_space_fan(2),
                          product_fan(projective_space_fan(1), projective_space_fan(1))};
    for (size_t n = 0; n < fans.size(); ++n) {
        Report rep = verify_double_complex(fans[n]);
        if (rep.verdict != Verdict::pass) {
            out << "double complex report fails on fan " << n;
            return false;
        }
    }
    return true;
}

bool criterion_property_sweep(std::ostream& out) {
    FuzzReport two = run_property_suite(20260821, 140, 2);
    FuzzReport three = run_property_suite(20260822, 60, 3);
    if (two.fans + three.fans != 200) {
        out << "swept " << (two.fans + three.fans) << " fans instead of 200";
        return false;
    }
    for (const FuzzReport* rep : {&two, &three})
        if (!rep->ok()) {
            const FuzzFailure& x = rep->failures.front();
            out << x.property << " (seed " << x.seed << ")";
            return false;
        }
    return true;
}

struct CliRunner {
    std::string binary;
    std::filesystem::path dir;

    int run(const std::string& args, const std::string& stdout_file = "") const {
        std::string redirect =
            stdout_file.empty() ? " > /dev/null" : " > " + (dir / stdout_file).string();
        int status =
            std::system((binary + " " + args + redirect + " 2> /dev/null").c_str());
        return WEXITSTATUS(status);
    }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    std::string slurp(const std::string& name) const {
        std::ifstream in(dir / name, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
};

bool criterion_cli_contract(const std::string& cli, std::ostream& out) {
    if (cli.empty()) {
        out << "no binary path given on the command line";
        return false;
    }
    CliRunner runner{cli, std::filesystem::temp_directory_path() / "fancohom-acceptance"};
    std::filesystem::create_directories(runner.dir);

    struct Step {
        std::string args;
        int expected;
        std::string capture;
    };
    std::vector<Step> steps{
        {"build pr 2 -o " + runner.path("p2.json"), 0, ""},
        {"validate " + runner.path("p2.json"), 0, ""},
        {"build hirzebruch 2 -o " + runner.path("f2.json"), 0, ""},
        {"validate " + runner.path("f2.json"), 0, ""},
        {"build graph --base " + runner.path("p2.json") + " --eta 1,0,0 -o " +
             runner.path("g"), 0, ""},
        {"validate " + runner.path("g-flat.json"), 0, ""},
        {"validate " + runner.path("g-upper.json"), 0, ""},
        {"validate " + runner.path("g-full.json"), 0, ""},
        {"build star-removal " + runner.path("p2.json") + " --rho 0 -o " +
             runner.path("rem.json"), 0, ""},
        {"validate " + runner.path("rem.json"), 0, ""},
        {"verify " + runner.path("p2.json") + " --theorem prop4.1", 0, ""},
        {"verify " + runner.path("p2.json") + " --theorem prop4.1-kcomplex", 0, ""},
        {"verify " + runner.path("p2.json") + " --theorem thm4.2 --rho 1", 0, ""},
        {"verify " + runner.path("rem.json") + " --theorem cor4.4", 0, ""},
        {"verify " + runner.path("p2.json") + " --theorem lem4.3 --eta 1,0,0", 0, ""},
        {"verify " + runner.path("p2.json") + " --theorem prop4.1 --flip-euler-sign", 1, ""},
        {"verify " + runner.path("p2.json") + " --theorem prop2.1", 2, ""},
        {"verify " + runner.path("rem.json") + " --theorem prop4.1", 2, ""},
        {"verify " + runner.path("p2.json") + " --theorem thm4.2", 3, ""},
        {"verify " + runner.path("missing.json") + " --theorem prop4.1", 3, ""},
        {"cohomology " + runner.path("p2.json"), 0, "table.txt"},
        {"cohomology " + runner.path("p2.json") + " --format json", 0, "first.json"},
        {"cohomology " + runner.path("p2.json") + " --format json", 0, "second.json"},
    };
    for (const Step& step : steps) {
        int got = runner.run(step.args, step.capture);
        if (got != step.expected) {
            out << "`" << step.args << "` exited " << got << ", expected "
                << step.expected;
            return false;
        }
    }
    if (runner.slurp("table.txt").find("betti (1,0,1,0,1)") == std::string::npos) {
        out << "the table output is missing the Betti row";
        return false;
    }
    std::string first = runner.slurp("first.json");
    if (first.empty() || first != runner.slurp("second.json")) {
        out << "repeated runs differ byte for byte";
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";

    criterion(1, "generated simplicial cones are acyclic above degree zero", 10,
              criterion_single_cones);
    criterion(2, "complete simplicial fans concentrate on the diagonal", 30,
              criterion_complete_simplicial);
    criterion(3, "golden Betti numbers for the standard fans", 30, criterion_golden_betti);
    criterion(4, "removing a star splits the cohomology", 20, criterion_star_removal);
    criterion(5, "graph fans transfer the base cohomology", 30, criterion_graph_transfer);
    criterion(6, "the double complex collapses to the fan cohomology", 30,
              criterion_double_complex);
    criterion(7, "random fan property sweep", 60, criterion_property_sweep);
    criterion(8, "command line contract", 60,
              [&](std::ostream& out) { return criterion_cli_contract(cli, out); });

    if (failures == 0) {
        std::cout << "all acceptance criteria hold\n";
        return 0;
    }
    std::cout << failures << " acceptance criteria failed\n";
    return 1;
}
