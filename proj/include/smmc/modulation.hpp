#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "smmc/channel.hpp"

namespace smmc {

enum class SchemeKind { Sm, Ssk, MimoOok, SisoCsk };

/// Modulation scheme identity: which constellation dimensions carry bits.
///  - Sm:      one active transmitter per symbol, index + CSK level carry bits
///  - Ssk:     one active transmitter, index only (single pulse size, M = 1)
///  - MimoOok: all links carry an independent OOK bit
///  - SisoCsk: single link, M-ary CSK
struct Scheme {
    SchemeKind kind = SchemeKind::Ssk;
    int n_links = 2;   ///< N
    int csk_order = 1; ///< M (1 for SSK, fixed 2 for MIMO-OOK)

    int bits_per_symbol() const;
    void validate() const;  ///< throws std::invalid_argument

    static Scheme sm(int n, int m);
    static Scheme ssk(int n);
    static Scheme mimo_ook(int n);
    static Scheme siso_csk(int m);
};

const char* scheme_name(SchemeKind kind);

/// Ordered emission levels S_0 < S_1 < ... < S_{M-1}, molecules per pulse.
/// Levels are real-valued; the Gaussian concentration model does not need
/// integer counts.
struct CskAlphabet {
    std::vector<double> levels;
    int order() const { return static_cast<int>(levels.size()); }
};

/// One symbol interval's transmitted symbol. For SM/SSK/SISO the (space,
/// level) pair is meaningful; for MIMO-OOK the per-link bit pattern is
/// (bit k of link_bits == link k's OOK bit).
struct MolecularSymbol {
    int space = 0;
    int level = 0;
    std::uint64_t link_bits = 0;
};

/// Map a bit block (low bits_per_symbol() bits of `bits`, most significant
/// first) onto a symbol: the leading log2 N bits select the transmitter,
/// the rest the CSK level. MIMO-OOK: the leading bit is link 0's bit.
MolecularSymbol encode(const Scheme& scheme, std::uint64_t bits);
/// Same, from a '0'/'1' string of exactly bits_per_symbol() characters.
MolecularSymbol encode(const Scheme& scheme, std::string_view bits);
/// Inverse of encode.
std::uint64_t decode(const Scheme& scheme, const MolecularSymbol& sym);

bool same_symbol(const Scheme& scheme, const MolecularSymbol& a, const MolecularSymbol& b);

/// Per-transmitter molecule counts for one symbol interval (length N).
void emission_vector(const Scheme& scheme, const MolecularSymbol& sym,
                     const CskAlphabet& alphabet, std::span<double> out);
std::vector<double> emission_vector(const Scheme& scheme, const MolecularSymbol& sym,
                                    const CskAlphabet& alphabet);

/// Throws std::invalid_argument when the level list violates the scheme's
/// constraints (strictly increasing; SM/SSK all positive; MIMO-OOK S_0 = 0).
void validate_alphabet(const Scheme& scheme, const CskAlphabet& alphabet);

/// Linear SNR of an SM/SSK/SISO alphabet: mean emitted pulse size times
/// h_jj(t_p) V_RX (average received signal power of the desired link over
/// the noise power at the sampling instant).
double snr_linear_sm(const SystemGeometry& geom, const CskAlphabet& alphabet);
/// Per-link linear SNR of N-link MIMO with M-ary CSK (1/N of the SM value).
double snr_linear_mimo_csk(const SystemGeometry& geom, const CskAlphabet& alphabet, int n_links);
/// Per-link linear SNR of N-link MIMO-OOK, where on average N/2 transmitters
/// emit S_1 molecules per interval.
double snr_linear_mimo_ook(const SystemGeometry& geom, double s1, int n_links);

/// Scheme-dispatched SNR in dB of a calibrated alphabet.
double snr_db_of(const Scheme& scheme, const SystemGeometry& geom, const CskAlphabet& alphabet);

/// Solve the scheme's level-ratio family for the target SNR:
///  - SSK: single level S
///  - SM: S_m proportional to (m+1)  (BCSK: S_1 = 2 S_0)
///  - SISO-CSK: S_0 = 0, S_m = m S_1 (QCSK: S_3 = 3/2 S_2 = 3 S_1)
///  - MIMO-OOK: S_0 = 0 and S_1 from the per-link OOK SNR definition
CskAlphabet calibrate_alphabet(const Scheme& scheme, const SystemGeometry& geom, double snr_db);

}  // namespace smmc
