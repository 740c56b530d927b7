#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "smmc/config.hpp"
#include "smmc/csv.hpp"
#include "smmc/presets.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string default_out_dir() {
    if (const char* env = std::getenv("SMMC_OUT_DIR"); env != nullptr && *env != '\0') return env;
    return ".";
}

fs::path ensure_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
    return p;
}

std::string curve_stem(const smmc::RunConfig& cfg) {
    std::ostringstream s;
    s << smmc::scheme_name(cfg.scheme.kind) << "_n" << cfg.scheme.n_links << "_m"
      << cfg.scheme.csk_order << "_ts" << cfg.symbol_duration << "s_r"
      << cfg.geometry.separation * 1e6 << "um";
    if (cfg.scheme.kind == smmc::SchemeKind::Sm) s << "_" << smmc::detector_name(cfg.detector);
    return s.str();
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << contents;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void emit_curve(const fs::path& dir, const std::string& stem, const smmc::RunConfig& cfg,
                const smmc::SerCurve& curve, bool dat) {
    std::ostringstream csv;
    smmc::write_curve_csv(csv, cfg, curve);
    write_file(dir / (stem + ".csv"), csv.str());
    if (dat) {
        std::ostringstream d;
        smmc::write_dat(d, curve);
        write_file(dir / (stem + ".dat"), d.str());
    }
    std::cout << "wrote " << (dir / (stem + ".csv")).string() << "\n";
}

struct Overrides {
    std::int64_t seed = -1;
    std::int64_t symbols = -1;
    std::int64_t reps = -1;
    std::int64_t threads = -1;

    void apply(smmc::RunConfig& cfg) const {
        if (seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(seed);
        if (symbols > 0) cfg.symbols_per_rep = symbols;
        if (reps > 0) cfg.replications = static_cast<int>(reps);
        if (threads >= 0) cfg.threads = static_cast<int>(threads);
    }
};

int cmd_simulate(const std::string& config_path, const std::string& out_dir, const Overrides& ov,
                 bool dat) {
    smmc::RunConfig cfg = smmc::parse_config_file(config_path);
    ov.apply(cfg);
    cfg.validate();
    const fs::path dir = ensure_dir(out_dir);
    const smmc::SerCurve curve = smmc::run_sweep(cfg);
    emit_curve(dir, curve_stem(cfg), cfg, curve, dat);
    return 0;
}

int cmd_figure(const std::string& name, const std::string& out_dir, bool full_scale,
               const Overrides& ov, bool dat) {
    auto curves = smmc::figure_preset(name, full_scale);
    const fs::path dir = ensure_dir(out_dir);

    std::ostringstream all;
    smmc::write_long_csv_header(all);
    for (auto& spec : curves) {
        ov.apply(spec.config);
        spec.config.validate();
        std::cout << name << ": " << spec.label << " ..." << std::endl;
        const smmc::SerCurve curve = smmc::run_sweep(spec.config);
        emit_curve(dir, name + "_" + spec.label, spec.config, curve, dat);
        smmc::write_long_csv_rows(all, spec.label, spec.config, curve);
    }
    write_file(dir / (name + "_all.csv"), all.str());
    std::cout << "wrote " << (dir / (name + "_all.csv")).string() << "\n";
    return 0;
}

int cmd_analytic(const std::string& config_path, const std::string& out_file) {
    smmc::RunConfig cfg = smmc::parse_config_file(config_path);
    if (cfg.scheme.kind != smmc::SchemeKind::Ssk && cfg.scheme.kind != smmc::SchemeKind::Sm)
        throw smmc::ConfigError("analytic sweep requires scheme ssk (exact) or sm (upper bound)");

    const smmc::ChannelSnapshot snap = smmc::make_snapshot(cfg.geometry, cfg.symbol_duration);
    smmc::SerCurve curve;
    for (double snr_db : cfg.snr_grid_db) {
        const smmc::CskAlphabet alphabet = smmc::calibrate_alphabet(cfg.scheme, cfg.geometry, snr_db);
        smmc::SerPoint pt;
        pt.snr_db = snr_db;
        pt.ser_sim = std::nan("");
        pt.ci95 = std::nan("");
        if (cfg.scheme.kind == smmc::SchemeKind::Ssk) {
            pt.ser_analytic = smmc::ssk_ser(snap, cfg.geometry, alphabet).value;
            pt.analytic_kind = smmc::AnalyticKind::Exact;
        } else {
            pt.ser_analytic = smmc::sm_ser_bound(snap, cfg.geometry, alphabet).value;
            pt.analytic_kind = smmc::AnalyticKind::UpperBound;
        }
        curve.points.push_back(pt);
    }

    smmc::RunConfig meta = cfg;
    meta.symbols_per_rep = 0;
    meta.replications = 0;
    std::ostringstream csv;
    smmc::write_curve_csv(csv, meta, curve);
    write_file(out_file, csv.str());
    std::cout << "wrote " << out_file << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-level simulator and SER calculator for diffusive molecular communication\n"
                 "with spatial modulation (SM), SSK, MIMO-OOK and SISO-CSK schemes"};
    app.require_subcommand(1);

    Overrides ov;
    bool dat = false;

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo SNR sweep from a config file");
    std::string sim_config;
    std::string sim_out = default_out_dir();
    sim->add_option("--config", sim_config, "key = value config file")->required();
    sim->add_option("--out", sim_out, "output directory (default: $SMMC_OUT_DIR or .)");
    sim->add_option("--seed", ov.seed, "override master seed");
    sim->add_option("--symbols", ov.symbols, "override symbols per replication");
    sim->add_option("--reps", ov.reps, "override replication count");
    sim->add_option("--threads", ov.threads, "override worker count (0 = hardware)");
    sim->add_flag("--dat", dat, "also write gnuplot-style .dat files");

    auto* fig = app.add_subcommand("figure", "run a canned experiment (fig4..fig9)");
    std::string fig_name;
    std::string fig_out = default_out_dir();
    bool full_scale = false;
    fig->add_option("name", fig_name, "one of fig4..fig9")->required();
    fig->add_option("--out", fig_out, "output directory (default: $SMMC_OUT_DIR or .)");
    fig->add_flag("--full-scale", full_scale, "1e6 symbols x 20 replications per point");
    fig->add_option("--seed", ov.seed, "override master seed");
    fig->add_option("--symbols", ov.symbols, "override symbols per replication");
    fig->add_option("--reps", ov.reps, "override replication count");
    fig->add_option("--threads", ov.threads, "override worker count (0 = hardware)");
    fig->add_flag("--dat", dat, "also write gnuplot-style .dat files");

    auto* ana = app.add_subcommand("analytic", "closed-form SER sweep (no simulation)");
    std::string ana_config;
    std::string ana_out;
    ana->add_option("--config", ana_config, "key = value config file")->required();
    ana->add_option("--out", ana_out, "output CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_config, sim_out, ov, dat);
        if (fig->parsed()) return cmd_figure(fig_name, fig_out, full_scale, ov, dat);
        if (ana->parsed()) return cmd_analytic(ana_config, ana_out);
    } catch (const smmc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
