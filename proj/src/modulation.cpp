#include "smmc/modulation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace smmc {

namespace {

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

int log2i(int v) {
    int b = 0;
    while ((1 << b) < v) ++b;
    return b;
}

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

const char* scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::Sm: return "sm";
        case SchemeKind::Ssk: return "ssk";
        case SchemeKind::MimoOok: return "mimo_ook";
        case SchemeKind::SisoCsk: return "siso_csk";
    }
    return "?";
}

void Scheme::validate() const {
    switch (kind) {
        case SchemeKind::Sm:
            if (!is_pow2(n_links) || n_links < 2) fail("SM: N must be a power of 2, >= 2");
            if (!is_pow2(csk_order) || csk_order < 2) fail("SM: M must be a power of 2, >= 2");
            break;
        case SchemeKind::Ssk:
            if (!is_pow2(n_links) || n_links < 2) fail("SSK: N must be a power of 2, >= 2");
            if (csk_order != 1) fail("SSK: M must be 1");
            break;
        case SchemeKind::MimoOok:
            // bits map one per link, so N need not be a power of 2
            if (n_links < 2) fail("MIMO-OOK: N must be >= 2");
            if (csk_order != 2) fail("MIMO-OOK: M is fixed to 2");
            break;
        case SchemeKind::SisoCsk:
            if (n_links != 1) fail("SISO-CSK: N must be 1");
            if (!is_pow2(csk_order) || csk_order < 2) fail("SISO-CSK: M must be a power of 2, >= 2");
            break;
    }
    if (n_links > 64) fail("N must be <= 64");
}

Scheme Scheme::sm(int n, int m) {
    Scheme s{SchemeKind::Sm, n, m};
    s.validate();
    return s;
}
Scheme Scheme::ssk(int n) {
    Scheme s{SchemeKind::Ssk, n, 1};
    s.validate();
    return s;
}
Scheme Scheme::mimo_ook(int n) {
    Scheme s{SchemeKind::MimoOok, n, 2};
    s.validate();
    return s;
}
Scheme Scheme::siso_csk(int m) {
    Scheme s{SchemeKind::SisoCsk, 1, m};
    s.validate();
    return s;
}

int Scheme::bits_per_symbol() const {
    switch (kind) {
        case SchemeKind::Sm: return log2i(n_links) + log2i(csk_order);
        case SchemeKind::Ssk: return log2i(n_links);
        case SchemeKind::MimoOok: return n_links;
        case SchemeKind::SisoCsk: return log2i(csk_order);
    }
    return 0;
}

MolecularSymbol encode(const Scheme& scheme, std::uint64_t bits) {
    MolecularSymbol sym;
    switch (scheme.kind) {
        case SchemeKind::Sm: {
            const int mbits = log2i(scheme.csk_order);
            sym.space = static_cast<int>(bits >> mbits);
            sym.level = static_cast<int>(bits & ((1u << mbits) - 1));
            break;
        }
        case SchemeKind::Ssk:
            sym.space = static_cast<int>(bits);
            sym.level = 0;
            break;
        case SchemeKind::MimoOok: {
            // leading bit of the block is link 0
            const int n = scheme.n_links;
            std::uint64_t pattern = 0;
            for (int k = 0; k < n; ++k)
                pattern |= ((bits >> (n - 1 - k)) & 1u) << k;
            sym.link_bits = pattern;
            break;
        }
        case SchemeKind::SisoCsk:
            sym.space = 0;
            sym.level = static_cast<int>(bits);
            break;
    }
    if (sym.space >= scheme.n_links || sym.level >= scheme.csk_order)
        fail("encode: bit value out of range for scheme");
    return sym;
}

MolecularSymbol encode(const Scheme& scheme, std::string_view bits) {
    if (static_cast<int>(bits.size()) != scheme.bits_per_symbol())
        fail("encode: expected " + std::to_string(scheme.bits_per_symbol()) +
             " bits, got " + std::to_string(bits.size()));
    std::uint64_t v = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') fail("encode: bit string must contain only 0/1");
        v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return encode(scheme, v);
}

std::uint64_t decode(const Scheme& scheme, const MolecularSymbol& sym) {
    switch (scheme.kind) {
        case SchemeKind::Sm:
            return (static_cast<std::uint64_t>(sym.space) << log2i(scheme.csk_order)) |
                   static_cast<std::uint64_t>(sym.level);
        case SchemeKind::Ssk:
            return static_cast<std::uint64_t>(sym.space);
        case SchemeKind::MimoOok: {
            const int n = scheme.n_links;
            std::uint64_t v = 0;
            for (int k = 0; k < n; ++k)
                v |= ((sym.link_bits >> k) & 1u) << (n - 1 - k);
            return v;
        }
        case SchemeKind::SisoCsk:
            return static_cast<std::uint64_t>(sym.level);
    }
    return 0;
}

bool same_symbol(const Scheme& scheme, const MolecularSymbol& a, const MolecularSymbol& b) {
    switch (scheme.kind) {
        case SchemeKind::Sm: return a.space == b.space && a.level == b.level;
        case SchemeKind::Ssk: return a.space == b.space;
        case SchemeKind::MimoOok: return a.link_bits == b.link_bits;
        case SchemeKind::SisoCsk: return a.level == b.level;
    }
    return false;
}

void emission_vector(const Scheme& scheme, const MolecularSymbol& sym,
                     const CskAlphabet& alphabet, std::span<double> out) {
    const int n = scheme.n_links;
    if (static_cast<int>(out.size()) != n) fail("emission_vector: output span size != N");
    for (auto& v : out) v = 0.0;
    switch (scheme.kind) {
        case SchemeKind::Sm:
        case SchemeKind::Ssk:
        case SchemeKind::SisoCsk:
            out[static_cast<std::size_t>(sym.space)] = alphabet.levels.at(static_cast<std::size_t>(sym.level));
            break;
        case SchemeKind::MimoOok:
            for (int k = 0; k < n; ++k)
                if ((sym.link_bits >> k) & 1u) out[static_cast<std::size_t>(k)] = alphabet.levels.at(1);
            break;
    }
}

std::vector<double> emission_vector(const Scheme& scheme, const MolecularSymbol& sym,
                                    const CskAlphabet& alphabet) {
    std::vector<double> out(static_cast<std::size_t>(scheme.n_links));
    emission_vector(scheme, sym, alphabet, out);
    return out;
}

void validate_alphabet(const Scheme& scheme, const CskAlphabet& alphabet) {
    if (alphabet.order() != scheme.csk_order)
        fail("alphabet order != scheme's M");
    const auto& lv = alphabet.levels;
    for (std::size_t i = 0; i < lv.size(); ++i) {
        if (lv[i] < 0.0 || !std::isfinite(lv[i])) fail("alphabet levels must be finite and >= 0");
        if (i > 0 && !(lv[i] > lv[i - 1])) fail("alphabet levels must be strictly increasing");
    }
    switch (scheme.kind) {
        case SchemeKind::Sm:
        case SchemeKind::Ssk:
            if (!(lv.front() > 0.0)) fail("SM/SSK levels must all be > 0");
            break;
        case SchemeKind::MimoOok:
            if (lv.front() != 0.0) fail("MIMO-OOK requires S_0 = 0");
            break;
        case SchemeKind::SisoCsk:
            break;
    }
}

namespace {
/// h_jj(t_p) V_RX, the per-molecule received "power" of the desired link.
double desired_link_gain(const SystemGeometry& geom) {
    const double hjj = cir(geom.link_distance, geom.peak_time(), geom.diffusion_coeff);
    return hjj * geom.receiver_volume();
}

double mean_level(const CskAlphabet& alphabet) {
    double s = 0.0;
    for (double v : alphabet.levels) s += v;
    return s / static_cast<double>(alphabet.levels.size());
}
}  // namespace

double snr_linear_sm(const SystemGeometry& geom, const CskAlphabet& alphabet) {
    return desired_link_gain(geom) * mean_level(alphabet);
}

double snr_linear_mimo_csk(const SystemGeometry& geom, const CskAlphabet& alphabet, int n_links) {
    return snr_linear_sm(geom, alphabet) / static_cast<double>(n_links);
}

double snr_linear_mimo_ook(const SystemGeometry& geom, double s1, int n_links) {
    return desired_link_gain(geom) * 2.0 * s1 / static_cast<double>(n_links);
}

double snr_db_of(const Scheme& scheme, const SystemGeometry& geom, const CskAlphabet& alphabet) {
    double lin = 0.0;
    switch (scheme.kind) {
        case SchemeKind::Sm:
        case SchemeKind::Ssk:
        case SchemeKind::SisoCsk:
            lin = snr_linear_sm(geom, alphabet);
            break;
        case SchemeKind::MimoOok:
            lin = snr_linear_mimo_ook(geom, alphabet.levels.at(1), scheme.n_links);
            break;
    }
    return 10.0 * std::log10(lin);
}

CskAlphabet calibrate_alphabet(const Scheme& scheme, const SystemGeometry& geom, double snr_db) {
    scheme.validate();
    geom.validate();
    if (!std::isfinite(snr_db)) fail("snr_db must be finite");
    if (scheme.n_links != geom.n_links) fail("scheme N != geometry N");

    const double lin = std::pow(10.0, snr_db / 10.0);
    const double gain = desired_link_gain(geom);
    const int m = scheme.csk_order;

    CskAlphabet a;
    switch (scheme.kind) {
        case SchemeKind::Ssk:
            a.levels = {lin / gain};
            break;
        case SchemeKind::Sm: {
            // levels proportional to 1..M keep every level positive
            const double base = lin / gain * 2.0 / static_cast<double>(m + 1);
            for (int k = 1; k <= m; ++k) a.levels.push_back(base * k);
            break;
        }
        case SchemeKind::SisoCsk: {
            const double s1 = lin / gain * 2.0 / static_cast<double>(m - 1);
            for (int k = 0; k < m; ++k) a.levels.push_back(s1 * k);
            break;
        }
        case SchemeKind::MimoOok: {
            const double s1 = lin * static_cast<double>(scheme.n_links) / (2.0 * gain);
            a.levels = {0.0, s1};
            break;
        }
    }
    validate_alphabet(scheme, a);
    return a;
}

}  // namespace smmc
