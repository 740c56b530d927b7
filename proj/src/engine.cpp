#include "smmc/engine.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

#include "smmc/link_model.hpp"

namespace smmc {

const char* detector_name(DetectorChoice d) {
    switch (d) {
        case DetectorChoice::JointMl: return "ml";
        case DetectorChoice::SuccessiveSc: return "sc";
        case DetectorChoice::SuccessiveEgc: return "egc";
    }
    return "?";
}

const char* analytic_kind_name(AnalyticKind k) {
    switch (k) {
        case AnalyticKind::None: return "none";
        case AnalyticKind::Exact: return "exact";
        case AnalyticKind::UpperBound: return "upper-bound";
    }
    return "?";
}

std::vector<double> default_snr_grid() {
    std::vector<double> g;
    for (int s = 0; s <= 20; s += 2) g.push_back(static_cast<double>(s));
    return g;
}

void RunConfig::validate() const {
    scheme.validate();
    geometry.validate();
    if (scheme.n_links != geometry.n_links)
        throw std::invalid_argument("scheme N != geometry N");
    if (!(symbol_duration > 0.0)) throw std::invalid_argument("symbol_duration must be > 0");
    if (snr_grid_db.empty()) throw std::invalid_argument("snr grid must be non-empty");
    if (symbols_per_rep < 1000) throw std::invalid_argument("symbols_per_rep must be >= 1000");
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

double ci95_halfwidth(long long errors, long long total) {
    if (total <= 0) return 0.0;
    const double p = static_cast<double>(errors) / static_cast<double>(total);
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

namespace {

/// One simulated symbol sequence: draws uniform symbols, feeds the previous
/// symbol into the ISI, detects memorylessly from the current observation
/// only.
class LinkSequence {
public:
    LinkSequence(const RunConfig& cfg, const ChannelSnapshot& snap, const CskAlphabet& alphabet)
        : cfg_(&cfg), snap_(&snap), alphabet_(&alphabet),
          y_(static_cast<std::size_t>(cfg.scheme.n_links)) {
        const int bits = cfg.scheme.bits_per_symbol();
        mask_ = bits >= 64 ? ~0ULL : ((1ULL << bits) - 1ULL);
    }

    bool step(RandomStream& stream) {
        const Scheme& scheme = cfg_->scheme;
        const MolecularSymbol sym = encode(scheme, stream.bits() & mask_);
        const MolecularSymbol* prev = has_prev_ ? &prev_ : nullptr;

        if (cfg_->ideal_channel) {
            // diagnostic path: desired signal only
            for (int i = 0; i < snap_->n; ++i) {
                double v = 0.0;
                if (scheme.kind == SchemeKind::MimoOok) {
                    if ((sym.link_bits >> i) & 1u) v = alphabet_->levels[1] * snap_->diag();
                } else {
                    v = alphabet_->levels[static_cast<std::size_t>(sym.level)] * snap_->at(i, sym.space);
                }
                y_[static_cast<std::size_t>(i)] = v;
            }
        } else {
            sample_received(scheme, *snap_, cfg_->geometry, *alphabet_, sym, prev, stream, y_);
        }

        bool error = false;
        switch (scheme.kind) {
            case SchemeKind::Ssk:
                error = detect_space(y_) != sym.space;
                break;
            case SchemeKind::Sm: {
                Decision d;
                if (cfg_->detector == DetectorChoice::JointMl) {
                    d = detect_ml_joint(y_, *snap_, *alphabet_);
                } else {
                    d.space = detect_space(y_);
                    d.level = cfg_->detector == DetectorChoice::SuccessiveSc
                                  ? detect_csk_sc(y_, d.space, *snap_, *alphabet_)
                                  : detect_csk_egc(y_, d.space, *snap_, *alphabet_);
                }
                error = d.space != sym.space || d.level != sym.level;
                break;
            }
            case SchemeKind::MimoOok:
                error = detect_mimo_ook(y_, *snap_, *alphabet_, cfg_->ook_policy) != sym.link_bits;
                break;
            case SchemeKind::SisoCsk:
                error = detect_siso_csk(y_[0], *snap_, *alphabet_) != sym.level;
                break;
        }

        prev_ = sym;
        has_prev_ = true;
        return error;
    }

private:
    const RunConfig* cfg_;
    const ChannelSnapshot* snap_;
    const CskAlphabet* alphabet_;
    std::uint64_t mask_;
    std::vector<double> y_;
    MolecularSymbol prev_{};
    bool has_prev_ = false;
};

long long simulate_replication(const RunConfig& cfg, const ChannelSnapshot& snap,
                               const CskAlphabet& alphabet, int snr_index, int rep) {
    RandomStream stream(substream_seed(cfg.master_seed, static_cast<std::uint64_t>(snr_index),
                                       static_cast<std::uint64_t>(rep)));
    LinkSequence seq(cfg, snap, alphabet);
    long long errs = 0;
    for (long long k = 0; k < cfg.symbols_per_rep; ++k)
        if (seq.step(stream)) ++errs;
    return errs;
}

void attach_analytic(const RunConfig& cfg, const ChannelSnapshot& snap,
                     const CskAlphabet& alphabet, SerPoint& pt) {
    if (cfg.ideal_channel) return;
    if (cfg.scheme.kind == SchemeKind::Ssk) {
        pt.ser_analytic = ssk_ser(snap, cfg.geometry, alphabet).value;
        pt.analytic_kind = AnalyticKind::Exact;
    } else if (cfg.scheme.kind == SchemeKind::Sm && cfg.detector == DetectorChoice::SuccessiveEgc) {
        // the closed-form bound models the EGC-assisted successive detector
        pt.ser_analytic = sm_ser_bound(snap, cfg.geometry, alphabet).value;
        pt.analytic_kind = AnalyticKind::UpperBound;
    }
}

SerPoint assemble_point(const RunConfig& cfg, const ChannelSnapshot& snap,
                        const CskAlphabet& alphabet, double snr_db, long long errors) {
    SerPoint pt;
    pt.snr_db = snr_db;
    pt.errors = errors;
    pt.symbols = cfg.symbols_per_rep * cfg.replications;
    pt.ser_sim = static_cast<double>(errors) / static_cast<double>(pt.symbols);
    pt.ci95 = ci95_halfwidth(errors, pt.symbols);
    attach_analytic(cfg, snap, alphabet, pt);
    return pt;
}

}  // namespace

SerPoint run_point(const RunConfig& config, int snr_index) {
    config.validate();
    if (snr_index < 0 || snr_index >= static_cast<int>(config.snr_grid_db.size()))
        throw std::invalid_argument("snr_index out of range");
    const double snr_db = config.snr_grid_db[static_cast<std::size_t>(snr_index)];
    const ChannelSnapshot snap = make_snapshot(config.geometry, config.symbol_duration);
    const CskAlphabet alphabet = calibrate_alphabet(config.scheme, config.geometry, snr_db);

    long long errors = 0;
    for (int rep = 0; rep < config.replications; ++rep)
        errors += simulate_replication(config, snap, alphabet, snr_index, rep);
    return assemble_point(config, snap, alphabet, snr_db, errors);
}

SerCurve run_sweep(const RunConfig& config) {
    config.validate();
    const int n_points = static_cast<int>(config.snr_grid_db.size());
    const int reps = config.replications;
    const ChannelSnapshot snap = make_snapshot(config.geometry, config.symbol_duration);

    std::vector<CskAlphabet> alphabets;
    alphabets.reserve(static_cast<std::size_t>(n_points));
    for (double snr_db : config.snr_grid_db)
        alphabets.push_back(calibrate_alphabet(config.scheme, config.geometry, snr_db));

    // (point, replication) work items into dedicated slots: the aggregation
    // is a plain sum, so scheduling cannot change the result.
    std::vector<long long> errors(static_cast<std::size_t>(n_points) * static_cast<std::size_t>(reps), 0);
    const int n_items = n_points * reps;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const int n_threads = std::min(config.threads > 0 ? config.threads : static_cast<int>(hw), n_items);

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int item = next.fetch_add(1);
            if (item >= n_items) break;
            const int pt = item / reps;
            const int rep = item % reps;
            errors[static_cast<std::size_t>(item)] =
                simulate_replication(config, snap, alphabets[static_cast<std::size_t>(pt)], pt, rep);
        }
    };

    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    SerCurve curve;
    curve.points.reserve(static_cast<std::size_t>(n_points));
    for (int pt = 0; pt < n_points; ++pt) {
        long long total = 0;
        for (int rep = 0; rep < reps; ++rep)
            total += errors[static_cast<std::size_t>(pt) * reps + rep];
        curve.points.push_back(assemble_point(config, snap, alphabets[static_cast<std::size_t>(pt)],
                                              config.snr_grid_db[static_cast<std::size_t>(pt)], total));
    }
    return curve;
}

}  // namespace smmc
