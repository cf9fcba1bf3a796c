#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fancohom/cohomology.hpp"
#include "fancohom/io.hpp"
#include "fancohom/ishida.hpp"
#include "fancohom/kcomplex.hpp"
#include "fancohom/random_fans.hpp"

using namespace fancohom;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_hypothesis = 2;
constexpr int exit_usage = 3;

struct PRange {
    int low = 0;
    int high = 0;
    bool given = false;
};

/** --p accepts a single degree "2" or an inclusive range "0:3". */
PRange parse_p(const std::string& text, int rank) {
    PRange out;
    if (text.empty()) {
        out.low = 0;
        out.high = rank;
        return out;
    }
    out.given = true;
    size_t colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            out.low = out.high = std::stoi(text);
        } else {
            out.low = std::stoi(text.substr(0, colon));
            out.high = std::stoi(text.substr(colon + 1));
        }
    } catch (const std::exception&) {
        throw IoError("--p expects a degree like \"2\" or a range like \"0:3\"");
    }
    if (out.low < 0 || out.high > rank || out.low > out.high)
        throw IoError("--p range must lie inside 0:" + std::to_string(rank));
    return out;
}

/** Turns a ray-list index (as used in fan files) into a fan cone index. */
Index ray_cone_index(const Fan& f, long long ray) {
    const std::vector<Index>& rays = f.by_dim(1);
    if (ray < 0 || ray >= static_cast<long long>(rays.size()))
        throw IoError("--rho must be a ray index between 0 and " +
                      std::to_string(rays.size() ? rays.size() - 1 : 0));
    return rays[static_cast<size_t>(ray)];
}

std::vector<IntVec> parse_ray_list(const std::string& text) {
    std::vector<IntVec> out;
    std::vector<std::vector<long long>> rows;
    std::string item;
    std::vector<long long> row;
    auto flush_number = [&]() {
        if (item.empty()) throw IoError("--rays: empty coordinate");
        try {
            row.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw IoError("--rays: \"" + item + "\" is not an integer");
        }
        item.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush_number();
        } else if (c == ';') {
            flush_number();
            rows.push_back(std::move(row));
            row.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            item += c;
        }
    }
    if (!item.empty()) flush_number();
    if (!row.empty()) rows.push_back(std::move(row));
    if (rows.empty()) throw IoError("--rays: no rays given");
    size_t width = rows[0].size();
    for (const auto& r : rows) {
        if (r.size() != width || width == 0)
            throw IoError("--rays: rays must all have the same positive length");
        IntVec v(static_cast<Index>(width));
        for (size_t i = 0; i < width; ++i) v[static_cast<Index>(i)] = Integer(r[i]);
        out.push_back(std::move(v));
    }
    return out;
}

void emit_fan(const Fan& f, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << fan_to_json(f);
    } else {
        save_fan(f, out_path);
        std::cout << "wrote " << out_path << "\n";
    }
}

int cmd_validate(const std::string& path) {
    Fan f = [&] {
        try {
            return load_fan(path);
        } catch (const std::exception& e) {
            std::cout << "invalid: " << e.what() << "\n";
            std::exit(exit_failed);
        }
    }();
    std::cout << fan_summary(f) << "\n";
    return exit_ok;
}

int cmd_cohomology(const std::string& path, const std::string& p_text,
                   const std::string& format, bool force,
                   const std::string& emit_complex) {
    Fan f = load_fan(path);
    PRange range = parse_p(p_text, static_cast<int>(f.ambient_rank()));
    if (!emit_complex.empty() && range.low != range.high)
        throw IoError("--emit-complex needs a single --p degree");

    CohomologyTable t = cohomology_table(f);
    bool with_betti = f.is_simplicial() || force;
    std::string note =
        with_betti ? ""
                   : "the fan is not simplicial, Betti numbers suppressed; "
                     "pass --force to print them anyway";
    if (format == "json")
        std::cout << table_report_json(t, range.low, range.high, with_betti, note);
    else
        std::cout << table_report_text(t, range.low, range.high, with_betti, note);

    if (!emit_complex.empty()) {
        std::ofstream out(emit_complex, std::ios::binary);
        if (!out) throw IoError("cannot open " + emit_complex + " for writing");
        out << complex_json(build_ishida(f, range.low));
        std::cout << "wrote " << emit_complex << "\n";
    }
    return exit_ok;
}

int cmd_verify(const std::string& path, const std::string& theorem,
               long long rho, bool rho_given, const std::vector<long long>& eta,
               const std::string& format, bool flip) {
    Fan f = load_fan(path);
    VerifyOptions opt;
    opt.flip_euler_sign = flip;

    Report rep;
    if (theorem == "prop2.1") {
        rep = verify_single_cone(f, opt);
    } else if (theorem == "prop4.1") {
        rep = verify_complete_simplicial(f, opt);
    } else if (theorem == "prop4.1-kcomplex") {
        rep = verify_double_complex(f, opt);
    } else if (theorem == "thm4.2") {
        if (!rho_given) throw IoError("--theorem thm4.2 needs --rho RAY");
        rep = verify_star_removal(f, ray_cone_index(f, rho), opt);
    } else if (theorem == "cor4.4") {
        rep = verify_convex_support(f, opt);
    } else {  // lem4.3, with the base fan as input
        std::vector<Integer> lifts;
        for (long long e : eta) lifts.push_back(Integer(e));
        if (lifts.empty())
            lifts.assign(f.by_dim(1).size(), Integer(0));
        rep = verify_graph_transfer(f, lifts, opt);
    }

    if (format == "json")
        std::cout << verify_report_json(rep);
    else
        std::cout << verify_report_text(rep);
    switch (rep.verdict) {
        case Verdict::pass: return exit_ok;
        case Verdict::fail: return exit_failed;
        default: return exit_hypothesis;
    }
}

int cmd_fuzz(std::uint64_t seed, int count, long long rank) {
    if (rank < 1 || rank > 4) throw IoError("--rank must be between 1 and 4");
    FuzzReport rep = run_property_suite(seed, count, static_cast<Index>(rank));
    std::cout << "checked " << rep.fans << " fans, " << rep.checks
              << " property checks\n";
    for (const FuzzFailure& x : rep.failures) {
        std::cout << "property failed: " << x.property << "\n"
                  << "reproduce with --seed " << x.seed << " --count 1\n"
                  << x.fan_json;
    }
    if (!rep.ok()) return exit_failed;
    std::cout << "all properties hold\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cohomology of rational fans with exact integer arithmetic"};
    app.require_subcommand(1);

    std::string fan_path, p_text, format = "table", emit_complex, out_path;
    std::string rays_text, base_path;
    bool force = false, flip = false;
    long long rho = 0;
    std::vector<long long> eta;
    std::string theorem;
    std::uint64_t seed = 1;
    int count = 50;
    long long rank = 2;
    long long arg_a = 0, arg_b = 0;

    CLI::App* validate = app.add_subcommand("validate", "Check the fan axioms on a fan file");
    validate->add_option("file", fan_path, "fan file")->required();

    CLI::App* cohomology = app.add_subcommand("cohomology", "Print the cohomology table");
    cohomology->add_option("file", fan_path, "fan file")->required();
    cohomology->add_option("--p", p_text, "degree or inclusive range, e.g. 2 or 0:3");
    cohomology->add_option("--format", format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
    cohomology->add_flag("--force", force, "print Betti numbers even for non-simplicial fans");
    cohomology->add_option("--emit-complex", emit_complex,
                           "write the cochain complex of the given --p to this file");

    CLI::App* verify = app.add_subcommand("verify", "Check a vanishing statement on a fan");
    verify->add_option("file", fan_path, "fan file (the base fan for lem4.3)")->required();
    verify->add_option("--theorem", theorem, "statement to check")
        ->required()
        ->check(CLI::IsMember({"prop2.1", "prop4.1", "prop4.1-kcomplex", "thm4.2",
                               "cor4.4", "lem4.3"}));
    CLI::Option* rho_opt = verify->add_option("--rho", rho, "ray index for thm4.2");
    verify->add_option("--eta", eta, "ray lifts for lem4.3, e.g. 0,-1")->delimiter(',');
    verify->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_flag("--flip-euler-sign", flip)->group("");

    CLI::App* build = app.add_subcommand("build", "Emit a standard fan as JSON");
    build->require_subcommand(1);
    CLI::App* build_pr = build->add_subcommand("pr", "projective space fan");
    build_pr->add_option("r", arg_a, "rank")->required()->check(CLI::Range(1, 8));
    CLI::App* build_hirz = build->add_subcommand("hirzebruch", "Hirzebruch surface fan");
    build_hirz->add_option("a", arg_a, "twist")->required();
    CLI::App* build_prod = build->add_subcommand("product", "product of projective space fans");
    build_prod->add_option("a", arg_a, "first rank")->required()->check(CLI::Range(1, 6));
    build_prod->add_option("b", arg_b, "second rank")->required()->check(CLI::Range(1, 6));
    CLI::App* build_gamma = build->add_subcommand("gamma", "face fan of a single cone");
    build_gamma->add_option("--rays", rays_text, "rays as \"1,0;0,1\"")->required();
    CLI::App* build_graph =
        build->add_subcommand("graph", "graph fans of a lift of the base fan");
    build_graph->add_option("--base", base_path, "base fan file")->required();
    build_graph->add_option("--eta", eta, "lift values per ray, e.g. 0,-1")->delimiter(',');
    CLI::App* build_complete = build->add_subcommand(
        "complete-from-convex", "cone the boundary of a convex-support fan");
    build_complete->add_option("file", fan_path, "fan file")->required();
    CLI::App* build_star =
        build->add_subcommand("star-removal", "remove the star of a ray");
    build_star->add_option("file", fan_path, "fan file")->required();
    build_star->add_option("--rho", rho, "ray index")->required();
    for (CLI::App* b : {build_pr, build_hirz, build_prod, build_gamma, build_graph,
                        build_complete, build_star})
        b->add_option("-o,--output", out_path, "output file (default: stdout)");

    CLI::App* fuzz = app.add_subcommand("fuzz", "Random property sweep");
    fuzz->add_option("--seed", seed, "corpus seed");
    fuzz->add_option("--count", count, "number of fans")->check(CLI::Range(0, 100000));
    fuzz->add_option("--rank", rank, "ambient rank");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(fan_path);
        if (app.got_subcommand(cohomology))
            return cmd_cohomology(fan_path, p_text, format, force, emit_complex);
        if (app.got_subcommand(verify))
            return cmd_verify(fan_path, theorem, rho, rho_opt->count() > 0, eta,
                              format == "table" ? "text" : format, flip);
        if (app.got_subcommand(fuzz))
            return cmd_fuzz(seed, count, rank);

        // build
        if (build->got_subcommand(build_pr)) {
            emit_fan(projective_space_fan(static_cast<int>(arg_a)), out_path);
        } else if (build->got_subcommand(build_hirz)) {
            emit_fan(hirzebruch_fan(Integer(arg_a)), out_path);
        } else if (build->got_subcommand(build_prod)) {
            emit_fan(product_fan(projective_space_fan(static_cast<int>(arg_a)),
                                 projective_space_fan(static_cast<int>(arg_b))),
                     out_path);
        } else if (build->got_subcommand(build_gamma)) {
            std::vector<IntVec> rays = parse_ray_list(rays_text);
            emit_fan(gamma_fan(rays[0].size(), rays), out_path);
        } else if (build->got_subcommand(build_graph)) {
            Fan base = load_fan(base_path);
            std::vector<Integer> lifts;
            for (long long e : eta) lifts.push_back(Integer(e));
            if (lifts.empty()) lifts.assign(base.by_dim(1).size(), Integer(0));
            GraphFans g = graph_fans(base, lifts);
            std::string prefix = out_path.empty() ? "graph" : out_path;
            save_fan(g.flat, prefix + "-flat.json");
            save_fan(g.upper, prefix + "-upper.json");
            save_fan(g.full, prefix + "-full.json");
            const std::vector<Index>& rays = g.full.by_dim(1);
            size_t down = 0;
            while (down < rays.size() && rays[down] != g.rho) ++down;
            std::cout << "wrote " << prefix << "-flat.json\n"
                      << "wrote " << prefix << "-upper.json\n"
                      << "wrote " << prefix << "-full.json\n"
                      << "downward ray index in the full fan: " << down << "\n";
        } else if (build->got_subcommand(build_complete)) {
            Fan f = load_fan(fan_path);
            Completion c = complete_from_convex(f);
            std::ostringstream ray;
            ray << "added ray (";
            for (Index i = 0; i < c.rho.size(); ++i) ray << (i ? "," : "") << c.rho[i];
            ray << ")";
            emit_fan(c.fan, out_path);
            std::cout << ray.str() << "\n";
        } else if (build->got_subcommand(build_star)) {
            Fan f = load_fan(fan_path);
            Index center = ray_cone_index(f, rho);
            std::vector<Index> keep_star = f.star(center);
            std::vector<Cone> keep;
            for (Index i = 0; i < f.size(); ++i) {
                bool in_star = false;
                for (Index s : keep_star)
                    if (s == i) in_star = true;
                if (!in_star) keep.push_back(f.cone(i));
            }
            emit_fan(Fan::from_cones(f.ambient_rank(), keep), out_path);
        }
        return exit_ok;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
