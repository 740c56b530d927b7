#include "smmc/link_model.hpp"

#include <cmath>
#include <stdexcept>

namespace smmc {

double interference(const Scheme& scheme, const ChannelSnapshot& snap,
                    const CskAlphabet& alphabet, const MolecularSymbol& current,
                    const MolecularSymbol* previous, int receiver) {
    if (snap.n != scheme.n_links)
        throw std::invalid_argument("snapshot N != scheme N");
    switch (scheme.kind) {
        case SchemeKind::Sm:
        case SchemeKind::Ssk: {
            if (previous != nullptr && receiver == previous->space)
                return alphabet.levels[static_cast<std::size_t>(previous->level)] * snap.h_prev_self;
            return 0.0;
        }
        case SchemeKind::SisoCsk:
            // the single-link CSK baseline is modeled without carry-over
            // between intervals; only the signal-dependent noise remains
            return 0.0;
        case SchemeKind::MimoOok: {
            const double s1 = alphabet.levels[1];
            double ili = 0.0;
            for (int j = 0; j < snap.n; ++j) {
                if (j == receiver) continue;
                if ((current.link_bits >> j) & 1u) ili += snap.at(receiver, j) * s1;
            }
            double isi = 0.0;
            if (previous != nullptr && ((previous->link_bits >> receiver) & 1u))
                isi = snap.h_prev_self * s1;
            return ili + isi;
        }
    }
    return 0.0;
}

double receiver_mean(const Scheme& scheme, const ChannelSnapshot& snap,
                     const CskAlphabet& alphabet, const MolecularSymbol& current,
                     const MolecularSymbol* previous, int receiver) {
    double desired = 0.0;
    switch (scheme.kind) {
        case SchemeKind::Sm:
        case SchemeKind::Ssk:
        case SchemeKind::SisoCsk:
            desired = alphabet.levels[static_cast<std::size_t>(current.level)] *
                      snap.at(receiver, current.space);
            break;
        case SchemeKind::MimoOok:
            desired = ((current.link_bits >> receiver) & 1u) ? alphabet.levels[1] * snap.diag() : 0.0;
            break;
    }
    return desired + interference(scheme, snap, alphabet, current, previous, receiver);
}

void sample_received(const Scheme& scheme, const ChannelSnapshot& snap,
                     const SystemGeometry& geom, const CskAlphabet& alphabet,
                     const MolecularSymbol& current, const MolecularSymbol* previous,
                     RandomStream& stream, std::span<double> out) {
    if (static_cast<int>(out.size()) != snap.n)
        throw std::invalid_argument("sample_received: output span size != N");
    const double vrx = geom.receiver_volume();
    for (int i = 0; i < snap.n; ++i) {
        const double mean = receiver_mean(scheme, snap, alphabet, current, previous, i);
        const double var = mean / vrx;
        if (var < 0.0) throw std::logic_error("negative noise variance");
        out[static_cast<std::size_t>(i)] = var > 0.0 ? mean + std::sqrt(var) * stream.gauss() : mean;
    }
}

std::vector<double> sample_received(const Scheme& scheme, const ChannelSnapshot& snap,
                                    const SystemGeometry& geom, const CskAlphabet& alphabet,
                                    const MolecularSymbol& current, const MolecularSymbol* previous,
                                    RandomStream& stream) {
    std::vector<double> out(static_cast<std::size_t>(snap.n));
    sample_received(scheme, snap, geom, alphabet, current, previous, stream, out);
    return out;
}

}  // namespace smmc
