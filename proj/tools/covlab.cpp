// covlab: construct and analyze finite covers of varieties over finite
// fields by exact point enumeration, plus effective-constant calculators.
//
// Exit codes: 0 success, 1 usage or internal error, 2 parse error,
// 3 validation error, 4 budget exceeded / truncated report.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "covlab/report.hpp"

namespace {

using namespace covlab;

struct CliState {
    RunConfig cfg;
    std::string format_name = "table";
};

void apply_format(CliState& state) {
    state.cfg.format = parse_format(state.format_name);
    state.cfg.validate();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ValidationError("cannot write '" + out_path + "'");
    out << text;
}

const NamedVariety& pick_variety(const Problem& problem, const std::string& name,
                                 const std::string& role) {
    if (!name.empty()) {
        const NamedVariety* v = problem.find_variety(name);
        if (!v) throw ValidationError("no variety named '" + name + "' in the base file");
        return *v;
    }
    if (problem.varieties.size() == 1) return problem.varieties.front();
    throw ValidationError("base file has " + std::to_string(problem.varieties.size()) +
                          " varieties; pass --" + role + " to pick one");
}

void append_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int dispatch(int argc, char** argv) {
    CLI::App app{"finite-cover laboratory over finite fields"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow a subcommand

    CliState state;
    app.add_option("--budget", state.cfg.budget, "max field-element visits per operation")
        ->envname("COVLAB_BUDGET");
    app.add_option("--format", state.format_name, "output format: table, csv, structured")
        ->check(CLI::IsMember({"table", "csv", "structured"}));
    app.add_option("--seed", state.cfg.seed, "seed for randomized searches");
    app.add_option("--verify-depth", state.cfg.verify_depth,
                   "extension depth for load-time map verification");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "per-extension cover analysis");
    std::string analyze_path;
    std::string cover_filter;
    analyze->add_option("file", analyze_path, "problem file")->required();
    analyze->add_option("--max-ext", state.cfg.max_ext, "largest extension degree to test");
    analyze->add_option("--cover", cover_filter, "analyze only the named cover");

    // construct
    auto* construct = app.add_subcommand("construct", "build covers and sections");
    construct->require_subcommand(1);
    std::string base_path, out_path, variety_name, u_expr, v_name, section_mode = "avoid";
    std::int64_t ell = 3, trials = 200;
    int dmax = 3;

    auto* kummer = construct->add_subcommand("kummer", "degree-ell root cover of an affine base");
    kummer->add_option("--base", base_path, "problem file with the base variety")->required();
    kummer->add_option("--variety", variety_name, "base variety name (default: the only one)");
    kummer->add_option("--u", u_expr, "radicand, a nonconstant function of the base coordinates")
        ->required();
    kummer->add_option("--ell", ell, "prime exponent")->required();
    kummer->add_option("--out", out_path, "write the cover stanza file here (default stdout)");

    auto* product = construct->add_subcommand("product", "projection Y x V -> Y");
    product->add_option("--base", base_path, "problem file with both factors")->required();
    product->add_option("--y", variety_name, "first factor (default: the only variety)");
    product->add_option("--v", v_name, "second factor, needs at least 2 rational points")
        ->required();
    product->add_option("--out", out_path, "write the cover stanza file here (default stdout)");

    auto* section = construct->add_subcommand("section", "hypersurface section search");
    section->add_option("--base", base_path, "problem file with the projective variety")->required();
    section->add_option("--variety", variety_name, "variety name (default: the only one)");
    section->add_option("--mode", section_mode, "fill or avoid")
        ->check(CLI::IsMember({"fill", "avoid"}));
    section->add_option("--dmax", dmax, "largest form degree to try");
    section->add_option("--trials", trials, "number of seeded trials");
    section->add_option("--out", out_path, "write the section stanza file here (default stdout)");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "effective-constant calculators");
    bounds_cmd->require_subcommand(1);
    std::int64_t sigma = 1, dim = 1, sigma_z = 1, dim_z = 1, sigma_r = 0, dim_r = 0;
    std::int64_t deg_g = 1;
    std::int64_t b1 = 0, b2 = 0, b3 = 0;
    std::string hodge_csv;

    auto* nonempty = bounds_cmd->add_subcommand("nonempty", "nonemptiness threshold");
    nonempty->add_option("--sigma", sigma, "compact Betti sum")->required();
    nonempty->add_option("--dim", dim, "dimension")->required();

    auto* crossover = bounds_cmd->add_subcommand("crossover", "point-count crossover threshold");
    crossover->add_option("--sigma-z", sigma_z, "Betti sum of the larger-dimensional set")->required();
    crossover->add_option("--dim-z", dim_z, "its dimension")->required();
    crossover->add_option("--sigma-r", sigma_r, "Betti sum of the smaller-dimensional set")->required();
    crossover->add_option("--dim-r", dim_r, "its dimension")->required();

    auto* betti = bounds_cmd->add_subcommand("cover-betti", "Betti sum bound for covers");
    betti->add_option("--degree", deg_g, "cover degree")->required();
    betti->add_option("--sigma", sigma, "base Betti constant")->required();

    auto* surface = bounds_cmd->add_subcommand("surface", "5-canonical embedding data");
    surface->add_option("--hodge", hodge_csv, "h00,h01,h02,h10,h11,h12,h20,h21,h22")->required();

    auto* candidates = bounds_cmd->add_subcommand("hodge-candidates", "diamonds with given Betti sums");
    candidates->add_option("--b1", b1, "first Betti number")->required();
    candidates->add_option("--b2", b2, "second Betti number")->required();
    candidates->add_option("--b3", b3, "third Betti number")->required();

    auto* selftest_cmd = app.add_subcommand("selftest", "built-in sanity checks");

    CLI11_PARSE(app, argc, argv);
    apply_format(state);
    const RunConfig& cfg = state.cfg;

    if (analyze->parsed()) {
        Problem problem = load_problem(analyze_path, cfg);
        if (!cover_filter.empty()) {
            const NamedCover* c = problem.find_cover(cover_filter);
            if (!c) throw ValidationError("no cover named '" + cover_filter + "'");
            Problem filtered = problem;
            filtered.covers = {*c};
            AnalyzeOutcome outcome = run_analyze(cfg, filtered);
            std::cout << outcome.text;
            return outcome.exit_code;
        }
        AnalyzeOutcome outcome = run_analyze(cfg, problem);
        std::cout << outcome.text;
        return outcome.exit_code;
    }

    if (kummer->parsed()) {
        Problem base = load_problem(base_path, cfg);
        const NamedVariety& y = pick_variety(base, variety_name, "variety");
        Multinomial u = parse_poly(u_expr, y.variety.ambient.coord_count(), y.variety.spec);
        CoverOptions opts{cfg.verify_depth, cfg.as_budget()};
        CoverConstruction made = kummer_cover(y.variety, u, ell, opts);
        append_warnings(made.warnings);
        Problem out = base;
        std::string src_name = y.name + "_root" + std::to_string(ell);
        std::string cover_name = "kummer" + std::to_string(ell) + "_" + y.name;
        if (out.find_variety(src_name) || out.find_cover(cover_name))
            throw ValidationError("derived names '" + src_name + "'/'" + cover_name +
                                  "' collide with the base file");
        out.varieties.push_back(NamedVariety{src_name, y.field_name, made.cover.source});
        out.covers.push_back(NamedCover{cover_name, src_name, y.name, made.cover});
        emit(write_problem(out), out_path);
        return 0;
    }

    if (product->parsed()) {
        Problem base = load_problem(base_path, cfg);
        const NamedVariety& y = pick_variety(base, variety_name, "y");
        const NamedVariety* v = base.find_variety(v_name);
        if (!v) throw ValidationError("no variety named '" + v_name + "' in the base file");
        CoverOptions opts{cfg.verify_depth, cfg.as_budget()};
        CoverConstruction made = product_cover(y.variety, v->variety, opts);
        append_warnings(made.warnings);
        Problem out = base;
        std::string src_name = y.name + "_x_" + v->name;
        std::string cover_name = "proj_" + y.name + "_x_" + v->name;
        if (out.find_variety(src_name) || out.find_cover(cover_name))
            throw ValidationError("derived names collide with the base file");
        out.varieties.push_back(NamedVariety{src_name, y.field_name, made.cover.source});
        out.covers.push_back(NamedCover{cover_name, src_name, y.name, made.cover});
        emit(write_problem(out), out_path);
        return 0;
    }

    if (section->parsed()) {
        Problem base = load_problem(base_path, cfg);
        const NamedVariety& x = pick_variety(base, variety_name, "variety");
        SectionMode mode = section_mode == "fill" ? SectionMode::Fill : SectionMode::Avoid;
        SectionSearchResult found =
            search_section(x.variety, dmax, mode, trials, cfg.seed, cfg.as_budget());
        if (!found.section.has_value()) {
            std::cout << "not-found: no " << section_mode << " section of degree <= " << dmax
                      << " in " << found.trials_run << " trials (seed " << found.seed << ")\n";
            return 0;
        }
        Problem out = base;
        std::string z_name = x.name + "_section_" + section_mode;
        if (out.find_variety(z_name))
            throw ValidationError("derived name '" + z_name + "' collides with the base file");
        out.varieties.push_back(NamedVariety{z_name, x.field_name, *found.section});
        std::cerr << "found at trial " << *found.found_at_trial << " (seed " << found.seed
                  << "): " << found.form->to_string() << "\n";
        emit(write_problem(out), out_path);
        return 0;
    }

    if (nonempty->parsed()) {
        std::int64_t c = nonempty_threshold(sigma, dim);
        std::cout << render_bounds_report(
            cfg, "bounds nonempty",
            {{"sigma_c", std::to_string(sigma)},
             {"dim", std::to_string(dim)},
             {"threshold", std::to_string(c)}},
            "least C with q^d - (sigma_c - 1) q^(d - 1/2) > 0 for all q > C; C = (sigma_c - 1)^2");
        return 0;
    }

    if (crossover->parsed()) {
        std::int64_t c = crossover_threshold(sigma_z, dim_z, sigma_r, dim_r);
        std::cout << render_bounds_report(
            cfg, "bounds crossover",
            {{"sigma_z", std::to_string(sigma_z)},
             {"dim_z", std::to_string(dim_z)},
             {"sigma_r", std::to_string(sigma_r)},
             {"dim_r", std::to_string(dim_r)},
             {"threshold", std::to_string(c)}},
            "least C with q^(d_Z) - (sigma_Z - 1) q^(d_Z - 1/2) > sigma_R q^(d_R) for all q > C");
        return 0;
    }

    if (betti->parsed()) {
        std::int64_t bound = cover_betti_bound(deg_g, sigma);
        std::cout << render_bounds_report(cfg, "bounds cover-betti",
                                          {{"degree", std::to_string(deg_g)},
                                           {"sigma", std::to_string(sigma)},
                                           {"bound", std::to_string(bound)}},
                                          "sigma_c of the cover <= deg(g) * sigma");
        return 0;
    }

    if (surface->parsed()) {
        HodgeDiamond d;
        std::istringstream in(hodge_csv);
        std::string part;
        std::vector<std::int64_t> vals;
        while (std::getline(in, part, ','))
            vals.push_back(std::stoll(part));
        if (vals.size() != 9)
            throw ValidationError("--hodge needs 9 comma-separated entries h00,...,h22");
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) d.h[i][j] = vals[i * 3 + j];
        SurfaceEmbeddingData data = surface_embedding_data(d);
        std::cout << render_bounds_report(
            cfg, "bounds surface",
            {{"chi", std::to_string(data.chi)},
             {"k_sq", std::to_string(data.k_sq)},
             {"embed_dim", std::to_string(data.embed_dim)},
             {"hilbert_t2", data.hilbert_t2.to_string()},
             {"hilbert_t1", data.hilbert_t1.to_string()},
             {"hilbert_t0", data.hilbert_t0.to_string()},
             {"hilbert_at_1", std::to_string(data.hilbert_at(1))}},
            "chi = h00 - h01 + h02; K^2 = 12 chi - sum (-1)^(i+j) h_ij; N = 10 K^2 + chi - 1; "
            "h(T) = (25/2) K^2 T^2 - (5/2) K^2 T + chi");
        return 0;
    }

    if (candidates->parsed()) {
        auto list = hodge_candidates(b1, b2, b3);
        std::vector<std::pair<std::string, std::string>> values{
            {"b1", std::to_string(b1)},
            {"b2", std::to_string(b2)},
            {"b3", std::to_string(b3)},
            {"count", std::to_string(list.size())}};
        std::cout << render_bounds_report(
            cfg, "bounds hodge-candidates", values,
            "count = (b1 + 1) * C(b2 + 2, 2) * (b3 + 1); diamonds satisfy the three "
            "anti-diagonal sum constraints");
        if (cfg.format == OutputFormat::Table) {
            for (const auto& d : list) {
                std::cout << "  ";
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        std::cout << d.at(i, j) << (i == 2 && j == 2 ? "\n" : ",");
            }
        }
        return 0;
    }

    if (selftest_cmd->parsed()) {
        return selftest(std::cout, cfg) == 0 ? 0 : 3;
    }

    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const covlab::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const covlab::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 4;
    } catch (const covlab::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const covlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
