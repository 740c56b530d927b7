#include "smmc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smmc {

namespace {
constexpr int kMaxLinks = 64;

void require_positive(double v, const char* name) {
    if (!(v > 0.0))
        throw std::invalid_argument(std::string(name) + " must be > 0");
}
}  // namespace

double SystemGeometry::receiver_volume() const {
    const double r3 = receiver_radius * receiver_radius * receiver_radius;
    return 4.0 / 3.0 * std::numbers::pi * r3;
}

double SystemGeometry::peak_time() const {
    return smmc::peak_time(link_distance, diffusion_coeff);
}

void SystemGeometry::validate() const {
    if (n_links < 1 || n_links > kMaxLinks)
        throw std::invalid_argument("n_links must be in [1, " + std::to_string(kMaxLinks) +
                                    "], got " + std::to_string(n_links));
    require_positive(link_distance, "link_distance");
    require_positive(separation, "separation");
    require_positive(receiver_radius, "receiver_radius");
    require_positive(diffusion_coeff, "diffusion_coeff");
    // Point-source receivers: the uniform-concentration assumption needs rho << d.
    if (receiver_radius > link_distance / 10.0)
        throw std::invalid_argument("receiver_radius must be <= link_distance/10");
}

double pairwise_distance(const SystemGeometry& geom, int tx, int rx) {
    if (tx < 0 || tx >= geom.n_links || rx < 0 || rx >= geom.n_links)
        throw std::invalid_argument("link index out of range");
    if (tx == rx) return geom.link_distance;
    const double k = static_cast<double>(tx > rx ? tx - rx : rx - tx);
    const double d = geom.link_distance;
    const double r = geom.separation;
    return std::sqrt(d * d + k * k * r * r);
}

double cir(double distance, double t, double diffusion) {
    if (!(t > 0.0)) throw std::invalid_argument("cir: t must be > 0");
    require_positive(distance, "cir: distance");
    require_positive(diffusion, "cir: diffusion");
    const double a = 4.0 * std::numbers::pi * diffusion * t;
    return std::pow(a, -1.5) * std::exp(-distance * distance / (4.0 * diffusion * t));
}

double peak_time(double distance, double diffusion) {
    require_positive(distance, "peak_time: distance");
    require_positive(diffusion, "peak_time: diffusion");
    return distance * distance / (6.0 * diffusion);
}

double peak_concentration(const SystemGeometry& geom, double molecules, int rx, int tx) {
    if (molecules < 0.0) throw std::invalid_argument("molecule count must be >= 0");
    const double d = geom.link_distance;
    const double dji = pairwise_distance(geom, tx, rx);
    const double base = std::pow(3.0 / (2.0 * std::numbers::pi * d * d), 1.5);
    return molecules * base * std::exp(-1.5 * dji * dji / (d * d));
}

ChannelSnapshot make_snapshot(const SystemGeometry& geom, double symbol_duration) {
    geom.validate();
    if (!(symbol_duration > 0.0))
        throw std::invalid_argument("symbol_duration must be > 0");

    const int n = geom.n_links;
    const double tp = geom.peak_time();

    ChannelSnapshot snap;
    snap.n = n;
    snap.symbol_duration = symbol_duration;
    snap.sample_time = tp;
    snap.h.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));

    // Entries depend only on |i - j|; evaluate once per offset so the
    // Toeplitz/symmetry invariant holds bit-exactly.
    std::vector<double> by_offset(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        by_offset[static_cast<std::size_t>(k)] = cir(pairwise_distance(geom, 0, k), tp, geom.diffusion_coeff);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            snap.h[static_cast<std::size_t>(i) * n + j] = by_offset[static_cast<std::size_t>(i > j ? i - j : j - i)];

    snap.h_prev_self = cir(geom.link_distance, tp + symbol_duration, geom.diffusion_coeff);

    for (double v : snap.h)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("channel matrix entry underflowed; geometry out of the model's range");
    return snap;
}

}  // namespace smmc
