#pragma once

#include <cstddef>
#include <vector>

namespace smmc {

/// Physical layout of an N x N transceiver array in an unbounded diffusive
/// medium. All quantities are SI (meters, seconds, m^2/s); the CLI layer is
/// responsible for converting user-facing micrometer inputs.
struct SystemGeometry {
    int n_links = 2;                  ///< N, number of paired links
    double link_distance = 20e-6;     ///< d, Tx-to-paired-Rx distance
    double separation = 15e-6;        ///< r, spacing between adjacent Tx (and Rx)
    double receiver_radius = 0.1e-6;  ///< rho, spherical receiver radius
    double diffusion_coeff = 2.2e-9;  ///< D

    double receiver_volume() const;   ///< V_RX = (4/3) pi rho^3
    double peak_time() const;         ///< t_p = d^2 / (6 D)

    /// Throws std::invalid_argument on any violated invariant.
    /// Requires rho <= d/10 (point-source / uniform-concentration regime)
    /// and 1 <= N <= 64.
    void validate() const;
};

/// CIR values of the whole array frozen at the common sampling instant t_p,
/// plus the one-symbol-delayed self-link CIR used for the last-symbol ISI.
/// h is Toeplitz and symmetric: entries depend only on |i - j|.
struct ChannelSnapshot {
    int n = 0;
    std::vector<double> h;        ///< row-major NxN, h[i*n + j] = h_ij(t_p)
    double h_prev_self = 0.0;     ///< h_jj(t_p + T_s), identical for all links
    double symbol_duration = 0.0; ///< T_s
    double sample_time = 0.0;     ///< t_p

    double at(int rx, int tx) const {
        return h[static_cast<std::size_t>(rx) * static_cast<std::size_t>(n) + static_cast<std::size_t>(tx)];
    }
    double diag() const { return h.front(); }
};

/// Distance from transmitter tx to receiver rx (0-based indices):
/// d for rx == tx, sqrt(d^2 + |tx-rx|^2 r^2) otherwise.
double pairwise_distance(const SystemGeometry& geom, int tx, int rx);

/// Free-space diffusion impulse response (4 pi D t)^{-3/2} exp(-dist^2/(4 D t)),
/// the probability density (m^-3) that a molecule released at t=0 is sensed
/// at the given distance at time t. Requires t > 0.
double cir(double distance, double t, double diffusion);

/// Instant of maximum paired-link concentration, d^2/(6D).
double peak_time(double distance, double diffusion);

/// Peak-sampled concentration at receiver rx due to a pulse of `molecules`
/// from transmitter tx: S (3/(2 pi d^2))^{3/2} exp(-3 d_ji^2 / (2 d^2)).
/// Reduces to S (3/(2 pi e d^2))^{3/2} for rx == tx.
double peak_concentration(const SystemGeometry& geom, double molecules, int rx, int tx);

/// Evaluate the channel matrix at t_p and the delayed self-link CIR at
/// t_p + T_s. Requires symbol_duration > 0.
ChannelSnapshot make_snapshot(const SystemGeometry& geom, double symbol_duration);

}  // namespace smmc
