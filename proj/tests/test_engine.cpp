#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "smmc/csv.hpp"
#include "smmc/engine.hpp"

using namespace smmc;

namespace {
RunConfig quick_config(Scheme sch, double r_um, double ts, long long symbols = 2000, int reps = 3) {
    RunConfig cfg;
    cfg.scheme = sch;
    cfg.geometry.n_links = sch.n_links;
    cfg.geometry.separation = r_um * 1e-6;
    cfg.symbol_duration = ts;
    cfg.symbols_per_rep = symbols;
    cfg.replications = reps;
    cfg.snr_grid_db = {4.0, 10.0, 16.0};
    cfg.master_seed = 11;
    return cfg;
}

bool points_identical(const SerPoint& a, const SerPoint& b) {
    const bool analytic_same = (std::isnan(a.ser_analytic) && std::isnan(b.ser_analytic)) ||
                               a.ser_analytic == b.ser_analytic;
    return a.snr_db == b.snr_db && a.ser_sim == b.ser_sim && a.ci95 == b.ci95 && analytic_same &&
           a.analytic_kind == b.analytic_kind && a.errors == b.errors && a.symbols == b.symbols;
}
}  // namespace

TEST_CASE("config validation") {
    auto cfg = quick_config(Scheme::ssk(2), 15.0, 0.2);
    CHECK_NOTHROW(cfg.validate());
    cfg.symbols_per_rep = 100;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = quick_config(Scheme::ssk(2), 15.0, 0.2);
    cfg.snr_grid_db.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = quick_config(Scheme::ssk(2), 15.0, 0.2);
    cfg.replications = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("ideal channel: zero errors for every scheme") {
    for (Scheme sch : {Scheme::ssk(4), Scheme::sm(2, 2), Scheme::mimo_ook(2), Scheme::siso_csk(4)}) {
        auto cfg = quick_config(sch, 15.0, 0.2);
        cfg.ideal_channel = true;
        const auto curve = run_sweep(cfg);
        for (const auto& pt : curve.points) {
            CHECK(pt.errors == 0);
            CHECK(pt.ser_sim == 0.0);
        }
    }
}

TEST_CASE("determinism: same seed, any worker count, bit-identical output") {
    auto cfg = quick_config(Scheme::sm(2, 2), 12.5, 0.4);
    cfg.threads = 1;
    const auto c1 = run_sweep(cfg);
    const auto c2 = run_sweep(cfg);
    cfg.threads = 4;
    const auto c4 = run_sweep(cfg);
    REQUIRE(c1.points.size() == c2.points.size());
    REQUIRE(c1.points.size() == c4.points.size());
    for (std::size_t i = 0; i < c1.points.size(); ++i) {
        CHECK(points_identical(c1.points[i], c2.points[i]));
        CHECK(points_identical(c1.points[i], c4.points[i]));
    }

    std::ostringstream s1, s4;
    write_curve_csv(s1, cfg, c1);
    write_curve_csv(s4, cfg, c4);
    CHECK(s1.str() == s4.str());
}

TEST_CASE("run_point equals the matching sweep entry") {
    auto cfg = quick_config(Scheme::ssk(4), 12.5, 0.3);
    const auto curve = run_sweep(cfg);
    for (int i = 0; i < 3; ++i) {
        const auto pt = run_point(cfg, i);
        CHECK(points_identical(pt, curve.points[static_cast<std::size_t>(i)]));
    }
    CHECK_THROWS_AS(run_point(cfg, 3), std::invalid_argument);

    auto single = cfg;
    single.snr_grid_db = {cfg.snr_grid_db[1]};
    const auto sc = run_sweep(single);
    REQUIRE(sc.points.size() == 1);
    CHECK(points_identical(sc.points[0], run_point(single, 0)));
}

TEST_CASE("simulated SER tracks the exact analytic value (BSSK)") {
    // r = 12.5 um, Ts = 0.8 s, SNR = 10 dB
    RunConfig cfg = quick_config(Scheme::ssk(2), 12.5, 0.8, 20000, 5);
    cfg.snr_grid_db = {10.0};
    const auto pt = run_point(cfg, 0);
    REQUIRE(pt.analytic_kind == AnalyticKind::Exact);
    CHECK(pt.ser_analytic == doctest::Approx(0.1334348540667687).epsilon(1e-9));
    const double se = std::sqrt(pt.ser_sim * (1.0 - pt.ser_sim) / static_cast<double>(pt.symbols));
    CHECK(std::abs(pt.ser_sim - pt.ser_analytic) <= 3.0 * se);
}

TEST_CASE("sweep is non-increasing in SNR up to noise") {
    auto cfg = quick_config(Scheme::ssk(2), 12.5, 0.5, 20000, 3);
    cfg.snr_grid_db = default_snr_grid();
    const auto curve = run_sweep(cfg);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& prev = curve.points[i - 1];
        const auto& cur = curve.points[i];
        const double se = std::sqrt((prev.ser_sim * (1 - prev.ser_sim) + cur.ser_sim * (1 - cur.ser_sim)) /
                                    static_cast<double>(cur.symbols));
        CHECK(cur.ser_sim <= prev.ser_sim + 3.0 * se);
    }
}

TEST_CASE("analytic overlay policy") {
    auto ssk_cfg = quick_config(Scheme::ssk(2), 15.0, 0.2);
    CHECK(run_point(ssk_cfg, 0).analytic_kind == AnalyticKind::Exact);

    auto sm_cfg = quick_config(Scheme::sm(2, 2), 15.0, 0.2);
    CHECK(run_point(sm_cfg, 0).analytic_kind == AnalyticKind::UpperBound);
    sm_cfg.detector = DetectorChoice::SuccessiveSc;
    CHECK(run_point(sm_cfg, 0).analytic_kind == AnalyticKind::None);

    auto ook_cfg = quick_config(Scheme::mimo_ook(2), 15.0, 0.2);
    const auto pt = run_point(ook_cfg, 0);
    CHECK(pt.analytic_kind == AnalyticKind::None);
    CHECK(std::isnan(pt.ser_analytic));
}

TEST_CASE("95% CI covers a known error rate in >= 93% of 200 runs") {
    struct BernoulliSeq {
        double p;
        bool step(RandomStream& s) { return s.uniform() < p; }
    };
    const double p = 0.05;
    int covered = 0;
    for (int run = 0; run < 200; ++run) {
        const auto [errs, total] =
            pooled_errors(2000, 5, 9000 + static_cast<std::uint64_t>(run), 0,
                          [&](std::uint64_t, int) { return BernoulliSeq{p}; });
        const double phat = static_cast<double>(errs) / static_cast<double>(total);
        const double hw = ci95_halfwidth(errs, total);
        if (std::abs(phat - p) <= hw) ++covered;
    }
    CHECK(covered >= 186);
}
