#pragma once

#include <cstdint>
#include <span>

#include "smmc/channel.hpp"
#include "smmc/modulation.hpp"

namespace smmc {

/// Counts hypothesis evaluations so detector complexity claims are testable:
/// joint ML evaluates N*M hypotheses, the successive detectors N + M.
struct DetectionCost {
    long long hypotheses = 0;
};

struct Decision {
    int space = 0;
    int level = 0;
    std::uint64_t link_bits = 0;
};

enum class OokThresholdPolicy { Midpoint };

/// Joint ML over all (transmitter, level) pairs: argmin of
/// ||y - S_m h_col_j||^2. Ties resolve to the smallest j, then smallest m.
Decision detect_ml_joint(std::span<const double> y, const ChannelSnapshot& snap,
                         const CskAlphabet& alphabet, DetectionCost* cost = nullptr);

/// Space symbol by concentration comparison: index of the maximum entry,
/// ties to the smallest index.
int detect_space(std::span<const double> y, DetectionCost* cost = nullptr);

/// CSK level from the detected receiver only (selection combining):
/// argmin over m of |y_jhat - S_m h_jhat,jhat|^2, ties to the smaller m.
int detect_csk_sc(std::span<const double> y, int jhat, const ChannelSnapshot& snap,
                  const CskAlphabet& alphabet, DetectionCost* cost = nullptr);

/// CSK level from all receivers against column jhat (equal gain combining):
/// argmin over m of ||y - S_m h_col_jhat||^2.
int detect_csk_egc(std::span<const double> y, int jhat, const ChannelSnapshot& snap,
                   const CskAlphabet& alphabet, DetectionCost* cost = nullptr);

/// Per-link OOK decision, b_i = 1 iff y_i >= tau_i. The midpoint policy puts
/// tau_i at S_1 h_ii / 2.
std::uint64_t detect_mimo_ook(std::span<const double> y, const ChannelSnapshot& snap,
                              const CskAlphabet& alphabet,
                              OokThresholdPolicy policy = OokThresholdPolicy::Midpoint,
                              DetectionCost* cost = nullptr);

/// Nearest-level rule for the single-link CSK receiver.
int detect_siso_csk(double y, const ChannelSnapshot& snap, const CskAlphabet& alphabet,
                    DetectionCost* cost = nullptr);

}  // namespace smmc
