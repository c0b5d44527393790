// Command-line front end: config-driven synthesis, sampling, reconstruction
// and verification with JSON/CSV artifact emission.
//
// Exit codes: 0 success, 1 guaranteed-check failure, 2 config error,
// 3 numerical error (pole, band leakage, no convergence under guarantee).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "dpw/experiment.hpp"

namespace {

using dpw::json;

struct GlobalOpts {
    std::string config_path;
    std::string out_dir;
    bool print_json = false;
    bool print_csv = false;
    // flag overrides (flags > file > defaults)
    double alpha = -1.0;
    int L = 0;
    std::vector<int> window;
    double tol = -1.0;
    int max_iter = 0;
    long long seed = -1;
    std::string f_kind;
    std::string lambda_kind;
    int delta_e = 0;
    int delta_o = 0;
};

dpw::ExperimentConfig load_config(const GlobalOpts& g) {
    json j = json::object();
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path);
        if (!in) throw dpw::ConfigError("cannot open config file: " + g.config_path);
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw dpw::ConfigError("config JSON parse: " + std::string(e.what()));
        }
    }
    if (g.alpha > 0.0) j["alpha"] = g.alpha;
    if (g.L > 0) j["L"] = g.L;
    if (g.window.size() == 4) j["window"] = g.window;
    if (g.tol > 0.0) j["tol"] = g.tol;
    if (g.max_iter > 0) j["max_iter"] = g.max_iter;
    if (!g.f_kind.empty()) j["f_spec"]["kind"] = g.f_kind;
    if (!g.lambda_kind.empty()) j["lambda_spec"]["kind"] = g.lambda_kind;
    if (g.delta_e > 0) j["lambda_spec"]["parameters"]["delta_e"] = g.delta_e;
    if (g.delta_o > 0) j["lambda_spec"]["parameters"]["delta_o"] = g.delta_o;
    if (g.seed >= 0) j["lambda_spec"]["seed"] = static_cast<std::uint64_t>(g.seed);
    return dpw::ExperimentConfig::from_json(j);
}

void emit(const dpw::RunArtifacts& art, const GlobalOpts& g) {
    if (!g.out_dir.empty()) {
        std::filesystem::create_directories(g.out_dir);
        for (const auto& [name, rep] : art.reports) {
            std::ofstream out(std::filesystem::path(g.out_dir) / (name + ".json"));
            out << rep.dump(2) << "\n";
        }
        for (const auto& [name, csv] : art.tables) {
            std::ofstream out(std::filesystem::path(g.out_dir) / (name + ".csv"));
            out << csv;
        }
    }
    if (g.print_csv)
        for (const auto& [name, csv] : art.tables)
            std::cout << "# table: " << name << "\n" << csv;
    if (g.print_json || (g.out_dir.empty() && !g.print_csv)) {
        json all = json::object();
        for (const auto& [name, rep] : art.reports) all[name] = rep;
        std::cout << all.dump(2) << "\n";
    }
}

int finish(const dpw::RunArtifacts& art, const GlobalOpts& g) {
    emit(art, g);
    return art.all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Paley-Wiener toolbox: synthesis, sampling and verification on Z^2"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "JSON config file")->envname("DPW_CONFIG");
    app.add_option("--seed", g.seed, "random seed for lambda generation");
    app.add_option("--out", g.out_dir, "directory for JSON/CSV artifacts");
    app.add_flag("--json", g.print_json, "print reports to stdout as JSON");
    app.add_flag("--csv", g.print_csv, "print CSV tables to stdout");
    app.add_option("--alpha", g.alpha, "band parameter alpha in (0, pi/2)");
    app.add_option("--L", g.L, "torus grid size (even, >= 8)");
    app.add_option("--window", g.window, "window m_min m_max n_min n_max")->expected(4);
    app.add_option("--tol", g.tol, "reconstruction stopping tolerance");
    app.add_option("--max-iter", g.max_iter, "reconstruction iteration cap");
    app.add_option("--f-kind", g.f_kind, "bump | indicator | single_frequency | custom_grid");
    app.add_option("--lambda-kind", g.lambda_kind,
                   "full | two_progression | random_gaps | explicit");
    app.add_option("--delta-e", g.delta_e, "even-gap target for lambda generation");
    app.add_option("--delta-o", g.delta_o, "odd-gap target for lambda generation");
    app.fallthrough();

    auto* synth = app.add_subcommand("synth", "synthesize F from f and report residuals");
    auto* analyze_cmd = app.add_subcommand("analyze", "recover the spectrum of a grid");
    std::string analyze_in;
    analyze_cmd->add_option("--in", analyze_in, "grid-function JSON file");
    auto* kernel_cmd = app.add_subcommand("kernel", "evaluate the reproducing kernel");
    std::vector<int> center{0, 0}, probe{0, 0};
    kernel_cmd->add_option("--center", center, "kernel center m n")->expected(2);
    kernel_cmd->add_option("--probe", probe, "kernel probe u v")->expected(2);
    auto* project_cmd = app.add_subcommand("project", "project a layer-0 sequence");
    std::string project_in;
    project_cmd->add_option("--in", project_in, "layer-0 JSON file {values: [[re,im],...]}");
    auto* sample_cmd = app.add_subcommand("sample", "generate a sampling set and its flags");
    auto* rec_cmd = app.add_subcommand(
        "reconstruct", "run the frame-algorithm pipeline (CSV: iteration,residual,ratio)");
    auto* verify_cmd = app.add_subcommand("verify", "run every checker from the config");
    auto* density_cmd =
        app.add_subcommand("density", "Beurling density trajectory (CSV: r,density)");
    int r_max = 0;
    density_cmd->add_option("--r-max", r_max, "largest ball radius");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const dpw::ExperimentConfig cfg = load_config(g);

        if (synth->parsed()) {
            const dpw::BandParameters band(cfg.alpha);
            const dpw::TorusGrid grid(cfg.L);
            const dpw::SpectralFunction f = dpw::build_profile(cfg, band);
            const dpw::PWFunction F = dpw::synthesize(f, cfg.window, grid);
            dpw::RunArtifacts art;
            json rep{{"layer0_norm", F.layer0_norm},
                     {"max_abs", F.grid.max_abs()},
                     {"f_grid_l2_norm", f.grid_l2_norm()},
                     {"config", cfg.to_json()}};
            // the residual needs at least one plaquette
            if (cfg.window.width() >= 2 && cfg.window.height() >= 2)
                rep["max_holomorphicity_residual"] = dpw::max_holomorphicity_residual(F.grid);
            art.reports["synth"] = std::move(rep);
            art.reports["grid"] = dpw::to_json(F.grid);
            art.reports["spectrum"] = dpw::to_json(f);
            return finish(art, g);
        }

        if (analyze_cmd->parsed()) {
            const dpw::BandParameters band(cfg.alpha);
            const dpw::TorusGrid grid(cfg.L);
            dpw::PWFunction F = [&] {
                if (!analyze_in.empty()) {
                    std::ifstream in(analyze_in);
                    if (!in) throw dpw::ConfigError("cannot open --in file: " + analyze_in);
                    json j;
                    in >> j;
                    dpw::GridFunction gf = dpw::grid_function_from_json(j);
                    const double norm = dpw::layer_l2_norm(gf, 0);
                    return dpw::PWFunction{std::move(gf), band, norm};
                }
                return dpw::synthesize(dpw::build_profile(cfg, band), cfg.window, grid);
            }();
            const dpw::AnalyzeResult res = dpw::analyze(F, grid);
            dpw::RunArtifacts art;
            art.reports["analyze"] = json{{"out_of_band_mass", res.out_of_band_mass},
                                          {"total_mass", res.total_mass},
                                          {"leak_tolerance", dpw::kLeakTol},
                                          {"config", cfg.to_json()}};
            art.reports["spectrum"] = dpw::to_json(res.spectrum);
            return finish(art, g);
        }

        if (kernel_cmd->parsed()) {
            const dpw::BandParameters band(cfg.alpha);
            const dpw::TorusGrid grid(cfg.L);
            const dpw::KernelQuery q{{center[0], center[1]}, {probe[0], probe[1]}};
            const dpw::cplx v = dpw::kernel(q, band, grid);
            json rep{{"quadrature", {v.real(), v.imag()}},
                     {"center", {q.center.m, q.center.n}},
                     {"probe", {q.probe.m, q.probe.n}},
                     {"config", cfg.to_json()}};
            if (q.probe.n == -q.center.n) {
                const double closed =
                    dpw::kernel_diagonal_closed_form(band, q.probe.m - q.center.m);
                rep["closed_form"] = closed;
                rep["difference"] = std::abs(v - dpw::cplx{closed, 0.0});
            }
            dpw::RunArtifacts art;
            art.reports["kernel"] = rep;
            return finish(art, g);
        }

        if (project_cmd->parsed()) {
            const dpw::BandParameters band(cfg.alpha);
            const dpw::TorusGrid grid(cfg.L);
            std::vector<dpw::cplx> layer0;
            if (!project_in.empty()) {
                std::ifstream in(project_in);
                if (!in) throw dpw::ConfigError("cannot open --in file: " + project_in);
                json j;
                in >> j;
                for (const json& e : j.at("values"))
                    layer0.emplace_back(e[0].get<double>(), e[1].get<double>());
            } else {
                const dpw::PWFunction F =
                    dpw::synthesize(dpw::build_profile(cfg, band), cfg.window, grid);
                const auto row = F.grid.row(0);
                layer0.assign(row.begin(), row.end());
            }
            dpw::Window w = cfg.window;
            w.m_max = w.m_min + static_cast<int>(layer0.size()) - 1;
            const dpw::PWFunction P = dpw::project(layer0, w, band, grid);
            dpw::RunArtifacts art;
            art.reports["project"] = json{{"layer0_norm", P.layer0_norm},
                                          {"config", cfg.to_json()}};
            art.reports["grid"] = dpw::to_json(P.grid);
            return finish(art, g);
        }

        if (sample_cmd->parsed()) {
            const dpw::BandParameters band(cfg.alpha);
            const dpw::SamplingSet s(dpw::build_lambda(cfg), cfg.window.m_min,
                                     cfg.window.m_max);
            dpw::RunArtifacts art;
            json rep = dpw::to_json(s);
            rep["sufficient_condition"] = dpw::sufficient_condition(s, band);
            rep["necessary_condition"] = dpw::necessary_condition(s, band);
            if (cfg.lambda_spec.has_seed) rep["seed"] = cfg.lambda_spec.seed;
            rep["config"] = cfg.to_json();
            art.reports["samples"] = rep;
            return finish(art, g);
        }

        if (rec_cmd->parsed()) return finish(dpw::run(cfg), g);

        if (verify_cmd->parsed()) return finish(dpw::verify_suite(cfg), g);

        if (density_cmd->parsed()) {
            const int radius = (cfg.window.m_max - cfg.window.m_min) / 2;
            const int r = r_max > 0 ? r_max : std::min(120, radius / 2);
            return finish(dpw::density_report(cfg, r), g);
        }
    } catch (const dpw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dpw::PoleError& e) {
        std::cerr << "numerical error (pole): " << e.what() << "\n";
        return 3;
    } catch (const dpw::NoConvergence& e) {
        std::cerr << "numerical error (no convergence): " << e.what() << "\n";
        return 3;
    } catch (const dpw::BandLeakage& e) {
        std::cerr << "numerical error (band leakage): " << e.what() << "\n";
        return 3;
    } catch (const dpw::SlowDecay& e) {
        std::cerr << "numerical error (slow decay): " << e.what() << "\n";
        return 3;
    } catch (const dpw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
