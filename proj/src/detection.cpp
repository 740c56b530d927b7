#include "smmc/detection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace smmc {

namespace {
void count(DetectionCost* cost, long long n) {
    if (cost != nullptr) cost->hypotheses += n;
}
}  // namespace

Decision detect_ml_joint(std::span<const double> y, const ChannelSnapshot& snap,
                         const CskAlphabet& alphabet, DetectionCost* cost) {
    const int n = snap.n;
    const int m = alphabet.order();
    Decision best;
    double best_res = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < m; ++k) {
            const double s = alphabet.levels[static_cast<std::size_t>(k)];
            double res = 0.0;
            for (int i = 0; i < n; ++i) {
                const double e = y[static_cast<std::size_t>(i)] - s * snap.at(i, j);
                res += e * e;
            }
            if (res < best_res) {
                best_res = res;
                best.space = j;
                best.level = k;
            }
        }
    }
    count(cost, static_cast<long long>(n) * m);
    return best;
}

int detect_space(std::span<const double> y, DetectionCost* cost) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(y.size()); ++i)
        if (y[static_cast<std::size_t>(i)] > y[static_cast<std::size_t>(best)]) best = i;
    count(cost, static_cast<long long>(y.size()));
    return best;
}

int detect_csk_sc(std::span<const double> y, int jhat, const ChannelSnapshot& snap,
                  const CskAlphabet& alphabet, DetectionCost* cost) {
    const double h = snap.at(jhat, jhat);
    const double yj = y[static_cast<std::size_t>(jhat)];
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < alphabet.order(); ++k) {
        const double e = yj - alphabet.levels[static_cast<std::size_t>(k)] * h;
        const double d = e * e;
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    count(cost, alphabet.order());
    return best;
}

int detect_csk_egc(std::span<const double> y, int jhat, const ChannelSnapshot& snap,
                   const CskAlphabet& alphabet, DetectionCost* cost) {
    const int n = snap.n;
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < alphabet.order(); ++k) {
        const double s = alphabet.levels[static_cast<std::size_t>(k)];
        double d = 0.0;
        for (int i = 0; i < n; ++i) {
            const double e = y[static_cast<std::size_t>(i)] - s * snap.at(i, jhat);
            d += e * e;
        }
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    count(cost, alphabet.order());
    return best;
}

std::uint64_t detect_mimo_ook(std::span<const double> y, const ChannelSnapshot& snap,
                              const CskAlphabet& alphabet, OokThresholdPolicy policy,
                              DetectionCost* cost) {
    if (policy != OokThresholdPolicy::Midpoint)
        throw std::invalid_argument("unknown MIMO-OOK threshold policy");
    std::uint64_t bits = 0;
    for (int i = 0; i < snap.n; ++i) {
        const double tau = alphabet.levels[1] * snap.at(i, i) / 2.0;
        if (y[static_cast<std::size_t>(i)] >= tau) bits |= 1ULL << i;
    }
    count(cost, snap.n);
    return bits;
}

int detect_siso_csk(double y, const ChannelSnapshot& snap, const CskAlphabet& alphabet,
                    DetectionCost* cost) {
    const double arr[1] = {y};
    return detect_csk_sc(std::span<const double>(arr, 1), 0, snap, alphabet, cost);
}

}  // namespace smmc
