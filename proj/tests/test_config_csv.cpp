#include <doctest.h>

#include <cmath>
#include <sstream>

#include "smmc/config.hpp"
#include "smmc/csv.hpp"
#include "smmc/presets.hpp"

using namespace smmc;

TEST_CASE("empty config takes the documented defaults") {
    const auto cfg = parse_config_text("");
    CHECK(cfg.scheme.kind == SchemeKind::Ssk);
    CHECK(cfg.scheme.n_links == 2);
    CHECK(cfg.geometry.diffusion_coeff == 2.2e-9);
    CHECK(cfg.geometry.link_distance == doctest::Approx(20e-6).epsilon(1e-14));
    CHECK(cfg.geometry.receiver_radius == doctest::Approx(0.1e-6).epsilon(1e-14));
    REQUIRE(cfg.snr_grid_db.size() == 11);
    CHECK(cfg.snr_grid_db.front() == 0.0);
    CHECK(cfg.snr_grid_db.back() == 20.0);
    CHECK(cfg.symbols_per_rep == 100000);
    CHECK(cfg.replications == 5);
}

TEST_CASE("unit suffixes convert to SI") {
    CHECK(parse_length("20um") == doctest::Approx(2.0e-5).epsilon(1e-14));
    CHECK(parse_length("2e-5") == doctest::Approx(2.0e-5).epsilon(1e-14));
    CHECK(parse_length("1.5mm") == doctest::Approx(1.5e-3).epsilon(1e-14));
    CHECK(parse_time("200ms") == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(parse_time("0.2s") == doctest::Approx(0.2).epsilon(1e-14));
    CHECK_THROWS_AS(parse_length("20parsec"), ConfigError);

    const auto cfg = parse_config_text("d = 20um\nts = 300ms\n");
    CHECK(cfg.geometry.link_distance == doctest::Approx(2.0e-5).epsilon(1e-14));
    CHECK(cfg.symbol_duration == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("config errors name the offending key") {
    CHECK_THROWS_WITH_AS(parse_config_text("scheme = sm\nm = 3\n"),
                         doctest::Contains("'scheme'/'n'/'m'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("banana = 1\n"), doctest::Contains("banana"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("d = -20um\n"), doctest::Contains("'d'"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("detector = turbo\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("ook_threshold = adaptive\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("d = 20um\nd = 30um\n"), ConfigError);
}

TEST_CASE("snr grid forms") {
    CHECK(parse_config_text("snr = 0:2:20\n").snr_grid_db.size() == 11);
    const auto cfg = parse_config_text("snr = 0, 5, 10\n");
    CHECK(cfg.snr_grid_db == std::vector<double>{0.0, 5.0, 10.0});
    CHECK_THROWS_AS(parse_config_text("snr = 20:2:0\n"), ConfigError);
}

TEST_CASE("full config round-trips into a RunConfig") {
    const char* text =
        "# example\n"
        "scheme = sm\n"
        "n = 4\n"
        "m = 2\n"
        "d = 20um\n"
        "r = 10um\n"
        "rho = 0.1um\n"
        "diffusion = 2.2e-9\n"
        "ts = 0.3s\n"
        "snr = 0:2:20\n"
        "symbols = 50000\n"
        "reps = 4\n"
        "seed = 9\n"
        "detector = sc\n"
        "threads = 2\n"
        "ideal = 0\n";
    const auto cfg = parse_config_text(text);
    CHECK(cfg.scheme.kind == SchemeKind::Sm);
    CHECK(cfg.scheme.n_links == 4);
    CHECK(cfg.scheme.csk_order == 2);
    CHECK(cfg.geometry.separation == doctest::Approx(1.0e-5).epsilon(1e-14));
    CHECK(cfg.symbol_duration == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(cfg.symbols_per_rep == 50000);
    CHECK(cfg.replications == 4);
    CHECK(cfg.master_seed == 9);
    CHECK(cfg.detector == DetectorChoice::SuccessiveSc);
    CHECK(cfg.threads == 2);
}

TEST_CASE("CSV round-trip recovers every field exactly") {
    RunConfig cfg;
    cfg.scheme = Scheme::ssk(2);
    cfg.geometry.n_links = 2;
    cfg.symbols_per_rep = 12345;
    cfg.replications = 7;
    cfg.master_seed = 424242;
    cfg.snr_grid_db = {0.0, 10.0};

    SerCurve curve;
    SerPoint p1;
    p1.snr_db = 0.0;
    p1.ser_sim = 0.3333333333333333148;
    p1.ci95 = 1.234567890123456789e-3;
    p1.ser_analytic = 0.12345678901234567;
    p1.analytic_kind = AnalyticKind::Exact;
    p1.errors = 100;
    p1.symbols = 86415;
    SerPoint p2;
    p2.snr_db = 10.0;
    p2.ser_sim = 7.0064923216240854e-15;  // full 17-digit stress
    p2.ci95 = 0.0;
    p2.ser_analytic = std::nan("");
    p2.analytic_kind = AnalyticKind::None;
    curve.points = {p1, p2};

    std::ostringstream out;
    write_curve_csv(out, cfg, curve);
    std::istringstream in(out.str());
    const auto rows = read_curve_csv(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].scheme == "ssk");
    CHECK(rows[0].n == 2);
    CHECK(rows[0].m == 1);
    CHECK(rows[0].ser_sim == p1.ser_sim);
    CHECK(rows[0].ci95 == p1.ci95);
    CHECK(rows[0].ser_analytic == p1.ser_analytic);
    CHECK(rows[0].analytic_kind == "exact");
    CHECK(rows[0].symbols == 12345);
    CHECK(rows[0].replications == 7);
    CHECK(rows[0].seed == 424242);
    CHECK(rows[1].ser_sim == p2.ser_sim);
    CHECK(std::isnan(rows[1].ser_analytic));
    CHECK(rows[1].analytic_kind == "none");

    std::istringstream bad("snr,wrong\n1,2\n");
    CHECK_THROWS(read_curve_csv(bad));
}

TEST_CASE("figure presets expand to the documented curve sets") {
    const auto fig4 = figure_preset("fig4");
    CHECK(fig4.size() == 6);
    for (const auto& c : fig4) {
        CHECK(c.config.scheme.kind == SchemeKind::Ssk);
        CHECK(c.config.geometry.separation == doctest::Approx(12.5e-6).epsilon(1e-14));
        CHECK(c.config.snr_grid_db.size() == 11);
        CHECK(c.config.symbols_per_rep == 100000);
        CHECK(c.config.replications == 5);
    }

    CHECK(figure_preset("fig5").size() == 6);
    CHECK(figure_preset("fig6").size() == 6);
    CHECK(figure_preset("fig7").size() == 6);

    const auto fig8 = figure_preset("fig8");
    CHECK(fig8.size() == 8);
    int rate_checked = 0;
    for (const auto& c : fig8) {
        CHECK(c.config.scheme.bits_per_symbol() == 2);  // rate-matched comparison
        ++rate_checked;
    }
    CHECK(rate_checked == 8);

    const auto fig9 = figure_preset("fig9");
    CHECK(fig9.size() == 8);
    int sc = 0, egc = 0;
    for (const auto& c : fig9) {
        CHECK(c.config.scheme.kind == SchemeKind::Sm);
        if (c.config.detector == DetectorChoice::SuccessiveSc) ++sc;
        if (c.config.detector == DetectorChoice::SuccessiveEgc) ++egc;
    }
    CHECK(sc == 4);
    CHECK(egc == 4);

    const auto full = figure_preset("fig4", true);
    CHECK(full.front().config.symbols_per_rep == 1000000);
    CHECK(full.front().config.replications == 20);

    CHECK_THROWS_AS(figure_preset("fig99"), std::invalid_argument);
}

TEST_CASE("fig4 emits 66 data rows across its six curves") {
    // reduced sampling; the row structure is what matters here
    int data_rows = 0;
    for (const auto& spec : figure_preset("fig4")) {
        RunConfig cfg = spec.config;
        cfg.symbols_per_rep = 1000;
        cfg.replications = 1;
        const auto curve = run_sweep(cfg);
        std::ostringstream out;
        write_curve_csv(out, cfg, curve);
        std::istringstream in(out.str());
        const auto rows = read_curve_csv(in);
        CHECK(rows.size() == 11);
        data_rows += static_cast<int>(rows.size());
    }
    CHECK(data_rows == 66);
}

TEST_CASE("preset expansion is pure") {
    const auto a = figure_preset("fig9");
    const auto b = figure_preset("fig9");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].label == b[i].label);
        CHECK(a[i].config.scheme.kind == b[i].config.scheme.kind);
        CHECK(a[i].config.geometry.separation == b[i].config.geometry.separation);
        CHECK(a[i].config.symbol_duration == b[i].config.symbol_duration);
        CHECK(a[i].config.master_seed == b[i].config.master_seed);
    }
}
