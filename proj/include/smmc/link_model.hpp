#pragma once

#include <span>
#include <vector>

#include "smmc/channel.hpp"
#include "smmc/modulation.hpp"
#include "smmc/rng.hpp"

namespace smmc {

/// Interference sensed at `receiver` during the current interval.
/// SM/SSK: the single active transmitter causes no same-interval ILI; the
/// only term is the previous symbol's residue on its own paired link,
/// S_mbar * h_prev_self when receiver == previous->space, else 0.
/// MIMO-OOK: current-interval ILI from the unpaired transmitters plus the
/// one-symbol ISI of the paired transmitter.
/// SISO-CSK: the baseline is interference-free (no carry-over modeled).
/// previous == nullptr marks the first symbol of a sequence (zero ISI).
double interference(const Scheme& scheme, const ChannelSnapshot& snap,
                    const CskAlphabet& alphabet, const MolecularSymbol& current,
                    const MolecularSymbol* previous, int receiver);

/// Expected concentration at `receiver`: desired signal plus interference.
double receiver_mean(const Scheme& scheme, const ChannelSnapshot& snap,
                     const CskAlphabet& alphabet, const MolecularSymbol& current,
                     const MolecularSymbol* previous, int receiver);

/// Draw the length-N received vector: each entry is an independent Gaussian
/// with mean = desired + interference and variance = mean / V_RX. Raw samples
/// are returned; negative excursions are NOT clamped (the detectors consume
/// the Gaussian model as-is).
void sample_received(const Scheme& scheme, const ChannelSnapshot& snap,
                     const SystemGeometry& geom, const CskAlphabet& alphabet,
                     const MolecularSymbol& current, const MolecularSymbol* previous,
                     RandomStream& stream, std::span<double> out);

std::vector<double> sample_received(const Scheme& scheme, const ChannelSnapshot& snap,
                                    const SystemGeometry& geom, const CskAlphabet& alphabet,
                                    const MolecularSymbol& current, const MolecularSymbol* previous,
                                    RandomStream& stream);

}  // namespace smmc
