#pragma once

#include <vector>

#include "smmc/channel.hpp"
#include "smmc/modulation.hpp"

namespace smmc {

/// Standard normal tail probability Q(x) = Pr[Z > x], evaluated through the
/// complementary error function in extended precision and rounded to double.
double q_function(double x);

/// Standard normal CDF.
double normal_cdf(double x);

/// Distribution of the paired-minus-unpaired difference y_j - y_i for one
/// symbol interval, conditioned on the current symbol (j, m) and the
/// previous one (jbar, mbar).
struct ConditionalGaussian {
    double mean = 0.0;
    double variance = 0.0;
};

/// The three-case conditional mean/variance of y_j - y_i (i != j):
/// the previous symbol's residue lands on receiver jbar, which shifts the
/// difference down when i == jbar, up when j == jbar, and not at all
/// otherwise; it always adds to the variance it touches.
/// Throws std::invalid_argument when receiver == current.space.
ConditionalGaussian difference_distribution(const ChannelSnapshot& snap,
                                            const SystemGeometry& geom,
                                            const CskAlphabet& alphabet,
                                            const MolecularSymbol& current,
                                            const MolecularSymbol& previous, int receiver);

/// Pairwise-factorized probability that the paired receiver senses the
/// maximum: prod_{i != j} Q(-mu_ji / sigma_ji). Treats the difference events
/// as independent although they share y_j, so this is an approximation for
/// N >= 3 (exact for N <= 2).
double space_correct_factorized(const ChannelSnapshot& snap, const SystemGeometry& geom,
                                const CskAlphabet& alphabet, const MolecularSymbol& current,
                                const MolecularSymbol& previous);

/// Exact probability that the paired receiver senses the maximum, via the
/// one-dimensional integral E_{y_j}[ prod_{i != j} Phi(...) ] over the shared
/// observation.
double space_correct_exact(const ChannelSnapshot& snap, const SystemGeometry& geom,
                           const CskAlphabet& alphabet, const MolecularSymbol& current,
                           const MolecularSymbol& previous);

/// Factorized probability that receiver jhat senses the maximum, one entry
/// per jhat, renormalized to sum to one (the raw factorized terms need not
/// form a partition for N >= 3).
std::vector<double> space_decision_probs(const ChannelSnapshot& snap, const SystemGeometry& geom,
                                         const CskAlphabet& alphabet, const MolecularSymbol& current,
                                         const MolecularSymbol& previous);
double space_decision_prob(const ChannelSnapshot& snap, const SystemGeometry& geom,
                           const CskAlphabet& alphabet, const MolecularSymbol& current,
                           const MolecularSymbol& previous, int jhat);

/// Probability that the EGC metric prefers level n over the transmitted
/// level m when the space decision is jhat. Throws when n == current.level.
double csk_pairwise_error(const ChannelSnapshot& snap, const SystemGeometry& geom,
                          const CskAlphabet& alphabet, const MolecularSymbol& current,
                          const MolecularSymbol& previous, int n, int jhat);

/// Union bound on the conditional CSK error, weighted over the space
/// decision distribution; saturated to <= 1.
double csk_error_bound(const ChannelSnapshot& snap, const SystemGeometry& geom,
                       const CskAlphabet& alphabet, const MolecularSymbol& current,
                       const MolecularSymbol& previous);

enum class SerKind { Exact, UpperBound };
struct SerEstimate {
    double value = 0.0;
    SerKind kind = SerKind::Exact;
};

/// Exact average SER of pure space modulation (single pulse size), averaging
/// the exact conditional argmax probability over current and previous
/// transmitter indices. Requires a single-level alphabet.
SerEstimate ssk_ser(const ChannelSnapshot& snap, const SystemGeometry& geom,
                    const CskAlphabet& alphabet);

/// Same average built from the pairwise-factorized conditional probability;
/// identical to ssk_ser for N <= 2, biased upward for N >= 3.
double ssk_ser_factorized(const ChannelSnapshot& snap, const SystemGeometry& geom,
                          const CskAlphabet& alphabet);

/// Union upper bound on the average SM SER: conditional space-error plus the
/// CSK error bound, averaged over (j, m, jbar, mbar) and saturated to [0,1].
/// Models the EGC-assisted successive detector.
SerEstimate sm_ser_bound(const ChannelSnapshot& snap, const SystemGeometry& geom,
                         const CskAlphabet& alphabet);

}  // namespace smmc
