#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "smmc/analysis.hpp"
#include "smmc/channel.hpp"
#include "smmc/detection.hpp"
#include "smmc/modulation.hpp"
#include "smmc/rng.hpp"

namespace smmc {

enum class DetectorChoice { JointMl, SuccessiveSc, SuccessiveEgc };
enum class AnalyticKind { None, Exact, UpperBound };

const char* detector_name(DetectorChoice d);
const char* analytic_kind_name(AnalyticKind k);

std::vector<double> default_snr_grid();  ///< 0:2:20 dB

/// Everything one Monte-Carlo sweep needs. The detector choice applies to SM
/// (SSK always uses the concentration comparison, MIMO-OOK its threshold
/// rule, SISO the nearest level).
struct RunConfig {
    Scheme scheme = Scheme::ssk(2);
    SystemGeometry geometry{};
    double symbol_duration = 0.2;
    std::vector<double> snr_grid_db = default_snr_grid();
    long long symbols_per_rep = 100000;
    int replications = 5;
    std::uint64_t master_seed = 1;
    DetectorChoice detector = DetectorChoice::SuccessiveEgc;
    OokThresholdPolicy ook_policy = OokThresholdPolicy::Midpoint;
    bool ideal_channel = false;  ///< diagnostic: no noise, no interference
    int threads = 0;             ///< 0 = hardware concurrency

    void validate() const;  ///< throws std::invalid_argument
};

struct SerPoint {
    double snr_db = 0.0;
    double ser_sim = 0.0;
    double ci95 = 0.0;  ///< normal-approximation halfwidth from pooled totals
    double ser_analytic = std::nan("");
    AnalyticKind analytic_kind = AnalyticKind::None;
    long long errors = 0;   ///< pooled over replications
    long long symbols = 0;  ///< pooled over replications
};

struct SerCurve {
    std::vector<SerPoint> points;
};

double ci95_halfwidth(long long errors, long long total);

/// Simulate one SNR grid point: `replications` independent symbol sequences,
/// previous-symbol state feeding the ISI, errors pooled across replications.
SerPoint run_point(const RunConfig& config, int snr_index);

/// All grid points. Work is partitioned by (point, replication) over
/// substreams keyed by (master seed, point, replication), so the result is
/// identical for any worker count.
SerCurve run_sweep(const RunConfig& config);

/// Monte-Carlo harness underneath run_point, exposed so the pooling and CI
/// machinery can be exercised with stub error processes in tests.
/// make_seq(snr_index, rep) -> sequence object; sequence.step(stream) -> bool.
template <class MakeSeq>
std::pair<long long, long long> pooled_errors(long long symbols_per_rep, int reps,
                                              std::uint64_t master, std::uint64_t snr_index,
                                              MakeSeq&& make_seq) {
    long long errs = 0;
    for (int rep = 0; rep < reps; ++rep) {
        RandomStream stream(substream_seed(master, snr_index, static_cast<std::uint64_t>(rep)));
        auto seq = make_seq(snr_index, rep);
        for (long long k = 0; k < symbols_per_rep; ++k)
            if (seq.step(stream)) ++errs;
    }
    return {errs, symbols_per_rep * reps};
}

}  // namespace smmc
