#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wavelab/experiments.hpp"

using namespace wavelab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Cli {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    bool quiet = false;
};

RunConfig make_config(const Cli& cli) {
    RunConfig cfg = cli.config_path.empty() ? config_from_json_text("{}")
                                            : load_config(cli.config_path);
    for (const auto& o : cli.overrides) apply_override(cfg, o);
    if (!cli.out_dir.empty()) cfg.out_dir = cli.out_dir;
    fs::create_directories(cfg.out_dir);
    return cfg;
}

void emit(const Cli& cli, const RunConfig& cfg, const std::string& name, const json& report) {
    fs::path p = fs::path(cfg.out_dir) / (name + ".json");
    std::ofstream os(p);
    os << report.dump(2) << "\n";
    if (!cli.quiet) std::cout << report.dump(2) << "\n";
}

int cmd_simulate(const Cli& cli) {
    RunConfig cfg = make_config(cli);
    WaveState s = build_initial_state(cfg);
    std::string ckpt = (fs::path(cfg.out_dir) / "final.wvl").string();
    RunResult rr = run(s, cfg.stepper, ckpt);
    write_series(rr.diagnostics, (fs::path(cfg.out_dir) / "series.csv").string(),
                 SeriesFormat::Csv);
    write_series(rr.diagnostics, (fs::path(cfg.out_dir) / "series.json").string(),
                 SeriesFormat::Json);
    bool holo_ok = true;
    for (const auto& d : rr.diagnostics) holo_ok = holo_ok && d.holo_defect <= 1e-12;
    json rep = {{"command", "simulate"},
                {"config", json::parse(serialize_config(cfg))},
                {"steps", std::llround(cfg.stepper.t_end / cfg.stepper.dt)},
                {"aborted", rr.aborted},
                {"abort_reason", rr.abort_reason},
                {"holomorphy_ok", holo_ok},
                {"checkpoint", ckpt},
                {"pass", !rr.aborted && holo_ok}};
    emit(cli, cfg, "simulate", rep);
    return rep["pass"].get<bool>() ? 0 : 1;
}

int cmd_dispersion(const Cli& cli) {
    RunConfig cfg = make_config(cli);
    auto rows = dispersion_experiment(cfg.params, cfg.n_points, 8, 1e-6, 2.5e-3, 8, 8.0);
    json table = json::array();
    bool pass = true;
    for (const auto& r : rows) {
        pass = pass && r.rel_err <= 1e-3;
        table.push_back({{"k", r.k},
                         {"tau_plus", r.tau_plus},
                         {"tau_minus", r.tau_minus},
                         {"tau_plus_ref", r.tau_plus_ref},
                         {"tau_minus_ref", r.tau_minus_ref},
                         {"rel_err", r.rel_err}});
    }
    json rep = {{"command", "dispersion"},
                {"params", {{"g", cfg.params.g}, {"sigma", cfg.params.sigma}, {"gamma", cfg.params.gamma}}},
                {"tolerance", 1e-3},
                {"rows", table},
                {"pass", pass}};
    emit(cli, cfg, "dispersion", rep);
    return pass ? 0 : 1;
}

int cmd_conserve(const Cli& cli) {
    RunConfig cfg = make_config(cli);
    WaveState s = build_initial_state(cfg);
    DriftResult d = conservation_drift(s, cfg.stepper);
    bool pass = d.dE_rel <= 1e-6 && d.dP_rel <= 1e-6;
    json rep = {{"command", "conserve"},
                {"config", json::parse(serialize_config(cfg))},
                {"drift_E_rel", d.dE_rel},
                {"drift_P_rel", d.dP_rel},
                {"imag_defect", d.imag_defect},
                {"tolerance", 1e-6},
                {"pass", pass}};
    emit(cli, cfg, "conserve", rep);
    return pass ? 0 : 1;
}

int cmd_symbol_check(const Cli& cli) {
    RunConfig cfg = make_config(cli);
    PeriodicGrid g(1024);
    std::vector<SymbolCheckRow> rows = calculus_order_rows(g, 4, 8);
    DiffState wavy = make_wavy_state(g, cfg.params, 0.2);
    auto rows2 = waterwave_symbol_rows(wavy, 4, 8);
    rows.insert(rows.end(), rows2.begin(), rows2.end());
    json table = json::array();
    bool pass = true;
    for (const auto& r : rows) {
        pass = pass && r.pass;
        table.push_back(
            {{"relation", r.name}, {"fitted_slope", r.slope}, {"bound", r.bound}, {"pass", r.pass}});
    }
    json rep = {{"command", "symbol-check"}, {"rows", table}, {"pass", pass}};
    emit(cli, cfg, "symbol_check", rep);
    return pass ? 0 : 1;
}

int cmd_norms(const Cli& cli) {
    RunConfig cfg = make_config(cli);
    WaveState s = build_initial_state(cfg);
    DiagnosticsRecord d = diagnose(s, cfg.stepper);
    DiffState ds = to_diff(s);
    json rep = {{"command", "norms"},
                {"t", d.t},
                {"E", d.E},
                {"P", d.P},
                {"Hs", d.Hs},
                {"Wr", d.Wr},
                {"A", d.A},
                {"B", d.B},
                {"holo_defect", d.holo_defect},
                {"sobolev_s", cfg.stepper.diag_sobolev_s},
                {"holder_r", cfg.stepper.diag_holder_r},
                {"zygmund_WW_32", zygmund_norm(ds.WW, 1.5)},
                {"sobolev_R_2", sobolev_norm(ds.R, 2.0)},
                {"pass", true}};
    emit(cli, cfg, "norms", rep);
    return 0;
}

int cmd_convergence(const Cli& cli) {
    RunConfig cfg = make_config(cli);
    auto diffs = truncation_convergence(cfg.initial.seed, cfg.n_points, 1e-2, 0.12, cfg.params,
                                        5e-4, 0.5, 4, 7);
    bool pass = true;
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) pass = pass && diffs[i + 1] < diffs[i];
    json rep = {{"command", "convergence"},
                {"H_pair_diffs", diffs},
                {"monotone_decreasing", pass},
                {"pass", pass}};
    emit(cli, cfg, "convergence", rep);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavelab: pseudospectral water-wave workbench in holomorphic coordinates"};
    app.require_subcommand(1);
    app.fallthrough();

    Cli cli;
    app.add_option("--config", cli.config_path, "JSON config path");
    app.add_option("--out", cli.out_dir, "output directory");
    app.add_option("--override", cli.overrides, "dotted-path overrides key=value");
    app.add_flag("--quiet", cli.quiet, "suppress stdout report");

    auto* sim = app.add_subcommand("simulate", "integrate the (W,Q) system");
    auto* dis = app.add_subcommand("dispersion", "measure mode frequencies vs the two roots");
    auto* con = app.add_subcommand("conserve", "energy/momentum drift report");
    auto* sym = app.add_subcommand("symbol-check", "operator order and equivalence slopes");
    auto* nrm = app.add_subcommand("norms", "all norms of a state as JSON");
    auto* cvg = app.add_subcommand("convergence", "truncated-data convergence experiment");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(cli);
        if (dis->parsed()) return cmd_dispersion(cli);
        if (con->parsed()) return cmd_conserve(cli);
        if (sym->parsed()) return cmd_symbol_check(cli);
        if (nrm->parsed()) return cmd_norms(cli);
        if (cvg->parsed()) return cmd_convergence(cli);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
