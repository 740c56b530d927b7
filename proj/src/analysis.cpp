#include "smmc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smmc {

double q_function(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("q_function: x must be finite");
    const long double inv_sqrt2 = 0.70710678118654752440L;
    return static_cast<double>(0.5L * erfcl(static_cast<long double>(x) * inv_sqrt2));
}

double normal_cdf(double x) { return q_function(-x); }

namespace {

/// Plain double tail probability for quadrature inner loops; the public
/// q_function keeps the extended-precision route.
inline double qtail(double x) { return 0.5 * std::erfc(x * 0.70710678118654752440); }

/// Expected concentration and noise variance at one receiver for a given
/// (current, previous) symbol pair; the previous pulse's residue lands only
/// on its own paired receiver.
struct Moments {
    double mean;
    double var;
};

Moments receiver_moments(const ChannelSnapshot& snap, double vrx, const CskAlphabet& alphabet,
                         const MolecularSymbol& current, const MolecularSymbol& previous,
                         int receiver) {
    double mean = alphabet.levels[static_cast<std::size_t>(current.level)] * snap.at(receiver, current.space);
    if (receiver == previous.space)
        mean += alphabet.levels[static_cast<std::size_t>(previous.level)] * snap.h_prev_self;
    return {mean, mean / vrx};
}

/// Adaptive Simpson with panel-relative acceptance. The integrands here are
/// nonnegative and smooth, so per-panel relative control bounds the global
/// relative error.
template <class F>
double simpson_rec(const F& f, double a, double fa, double b, double fb, double m, double fm,
                   double whole, double rel_tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * (rel_tol * std::abs(left + right) + 1e-300))
        return left + right + delta / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, rel_tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, rel_tol, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double rel_tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, rel_tol, 48);
}

/// Probability that some unpaired receiver beats the paired one, integrated
/// over the shared observation y_j: E_u[ 1 - prod_{i != j} Phi(...) ] with
/// the complement evaluated through log1p/expm1 so deep tails keep relative
/// accuracy.
double space_error_exact_impl(const ChannelSnapshot& snap, double vrx, const CskAlphabet& alphabet,
                              const MolecularSymbol& current, const MolecularSymbol& previous) {
    const int n = snap.n;
    const int j = current.space;
    if (n == 1) return 0.0;
    if (!(alphabet.levels[static_cast<std::size_t>(current.level)] > 0.0))
        throw std::invalid_argument("space analysis requires a positive active pulse size");

    const Moments mj = receiver_moments(snap, vrx, alphabet, current, previous, j);
    const double sj = std::sqrt(mj.var);

    struct Rival {
        double mean;
        double inv_sd;
    };
    std::vector<Rival> rivals;
    rivals.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i < n; ++i) {
        if (i == j) continue;
        const Moments mi = receiver_moments(snap, vrx, alphabet, current, previous, i);
        rivals.push_back({mi.mean, 1.0 / std::sqrt(mi.var)});
    }

    const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    auto integrand = [&](double u) {
        const double w = inv_sqrt2pi * std::exp(-0.5 * u * u);
        if (w == 0.0) return 0.0;
        const double yj = mj.mean + sj * u;
        double log_prod = 0.0;
        for (const Rival& r : rivals) {
            const double q = qtail((yj - r.mean) * r.inv_sd);
            log_prod += std::log1p(-q);
        }
        return w * -std::expm1(log_prod);
    };

    // Split at the scale boundaries of the Gaussian weight; adaptive panels
    // resolve the Phi transitions inside.
    static constexpr double knots[] = {-40.0, -20.0, -10.0, -6.0, -3.0, 0.0, 3.0, 6.0, 10.0, 20.0, 40.0};
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < std::size(knots); ++k)
        total += integrate(integrand, knots[k], knots[k + 1], 1e-10);
    return std::clamp(total, 0.0, 1.0);
}

void check_symbol(const ChannelSnapshot& snap, const CskAlphabet& alphabet,
                  const MolecularSymbol& s) {
    if (s.space < 0 || s.space >= snap.n) throw std::invalid_argument("space index out of range");
    if (s.level < 0 || s.level >= alphabet.order()) throw std::invalid_argument("level index out of range");
}

}  // namespace

ConditionalGaussian difference_distribution(const ChannelSnapshot& snap, const SystemGeometry& geom,
                                            const CskAlphabet& alphabet, const MolecularSymbol& current,
                                            const MolecularSymbol& previous, int receiver) {
    check_symbol(snap, alphabet, current);
    check_symbol(snap, alphabet, previous);
    if (receiver == current.space)
        throw std::invalid_argument("difference_distribution: receiver must differ from the active transmitter");

    const int j = current.space;
    const int jbar = previous.space;
    const int i = receiver;
    const double sm = alphabet.levels[static_cast<std::size_t>(current.level)];
    const double sbar = alphabet.levels[static_cast<std::size_t>(previous.level)];
    const double hjj = snap.at(j, j);
    const double hij = snap.at(i, j);
    const double hprev = snap.h_prev_self;
    const double vrx = geom.receiver_volume();

    ConditionalGaussian out;
    if (i == jbar && j != jbar) {
        out.mean = sm * (hjj - hij) - sbar * hprev;
        out.variance = (sm * (hjj + hij) + sbar * hprev) / vrx;
    } else if (i != jbar && j == jbar) {
        out.mean = sm * (hjj - hij) + sbar * hprev;
        out.variance = (sm * (hjj + hij) + sbar * hprev) / vrx;
    } else {
        out.mean = sm * (hjj - hij);
        out.variance = sm * (hjj + hij) / vrx;
    }
    return out;
}

double space_correct_factorized(const ChannelSnapshot& snap, const SystemGeometry& geom,
                                const CskAlphabet& alphabet, const MolecularSymbol& current,
                                const MolecularSymbol& previous) {
    double p = 1.0;
    for (int i = 0; i < snap.n; ++i) {
        if (i == current.space) continue;
        const ConditionalGaussian g = difference_distribution(snap, geom, alphabet, current, previous, i);
        p *= q_function(-g.mean / std::sqrt(g.variance));
    }
    return p;
}

double space_correct_exact(const ChannelSnapshot& snap, const SystemGeometry& geom,
                           const CskAlphabet& alphabet, const MolecularSymbol& current,
                           const MolecularSymbol& previous) {
    check_symbol(snap, alphabet, current);
    check_symbol(snap, alphabet, previous);
    return 1.0 - space_error_exact_impl(snap, geom.receiver_volume(), alphabet, current, previous);
}

std::vector<double> space_decision_probs(const ChannelSnapshot& snap, const SystemGeometry& geom,
                                         const CskAlphabet& alphabet, const MolecularSymbol& current,
                                         const MolecularSymbol& previous) {
    check_symbol(snap, alphabet, current);
    check_symbol(snap, alphabet, previous);
    const int n = snap.n;
    const double vrx = geom.receiver_volume();

    std::vector<Moments> mom(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        mom[static_cast<std::size_t>(i)] = receiver_moments(snap, vrx, alphabet, current, previous, i);

    std::vector<double> row(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (int jh = 0; jh < n; ++jh) {
        double p = 1.0;
        for (int i = 0; i < n; ++i) {
            if (i == jh) continue;
            const double mu = mom[static_cast<std::size_t>(jh)].mean - mom[static_cast<std::size_t>(i)].mean;
            const double sd = std::sqrt(mom[static_cast<std::size_t>(jh)].var + mom[static_cast<std::size_t>(i)].var);
            p *= q_function(-mu / sd);
        }
        row[static_cast<std::size_t>(jh)] = p;
        sum += p;
    }
    for (double& p : row) p /= sum;
    return row;
}

double space_decision_prob(const ChannelSnapshot& snap, const SystemGeometry& geom,
                           const CskAlphabet& alphabet, const MolecularSymbol& current,
                           const MolecularSymbol& previous, int jhat) {
    if (jhat < 0 || jhat >= snap.n) throw std::invalid_argument("jhat out of range");
    return space_decision_probs(snap, geom, alphabet, current, previous)[static_cast<std::size_t>(jhat)];
}

double csk_pairwise_error(const ChannelSnapshot& snap, const SystemGeometry& geom,
                          const CskAlphabet& alphabet, const MolecularSymbol& current,
                          const MolecularSymbol& previous, int n, int jhat) {
    check_symbol(snap, alphabet, current);
    check_symbol(snap, alphabet, previous);
    if (n == current.level) throw std::invalid_argument("csk_pairwise_error: n must differ from m");
    if (n < 0 || n >= alphabet.order()) throw std::invalid_argument("level n out of range");
    if (jhat < 0 || jhat >= snap.n) throw std::invalid_argument("jhat out of range");

    const int nn = snap.n;
    const int j = current.space;
    const double sm = alphabet.levels[static_cast<std::size_t>(current.level)];
    const double sn = alphabet.levels[static_cast<std::size_t>(n)];
    const double sbar = alphabet.levels[static_cast<std::size_t>(previous.level)];
    const double vrx = geom.receiver_volume();

    double a = 0.0;   // ||h_col_jhat||^2
    double b = 0.0;   // <h_col_jhat, h_col_j>
    double var_z = 0.0;
    for (int i = 0; i < nn; ++i) {
        const double hih = snap.at(i, jhat);
        a += hih * hih;
        b += hih * snap.at(i, j);
        var_z += hih * hih * receiver_moments(snap, vrx, alphabet, current, previous, i).var;
    }
    // ISI enters the combining metric through receiver jbar; the delayed
    // factor is the self-link CIR at t_p + T_s.
    const double isi = sbar * snap.at(previous.space, jhat) * snap.h_prev_self;
    const double num = -isi - sm * b + 0.5 * (sm + sn) * a;
    const double arg = num / std::sqrt(var_z);
    return sm > sn ? 1.0 - q_function(arg) : q_function(arg);
}

double csk_error_bound(const ChannelSnapshot& snap, const SystemGeometry& geom,
                       const CskAlphabet& alphabet, const MolecularSymbol& current,
                       const MolecularSymbol& previous) {
    const int m_order = alphabet.order();
    if (m_order == 1) return 0.0;
    const std::vector<double> w = space_decision_probs(snap, geom, alphabet, current, previous);
    double total = 0.0;
    for (int n = 0; n < m_order; ++n) {
        if (n == current.level) continue;
        for (int jh = 0; jh < snap.n; ++jh)
            total += w[static_cast<std::size_t>(jh)] *
                     csk_pairwise_error(snap, geom, alphabet, current, previous, n, jh);
    }
    return std::min(total, 1.0);
}

SerEstimate ssk_ser(const ChannelSnapshot& snap, const SystemGeometry& geom,
                    const CskAlphabet& alphabet) {
    if (alphabet.order() != 1) throw std::invalid_argument("ssk_ser: single-level alphabet required");
    const int n = snap.n;
    const double vrx = geom.receiver_volume();
    double err = 0.0;
    for (int j = 0; j < n; ++j)
        for (int jbar = 0; jbar < n; ++jbar)
            err += space_error_exact_impl(snap, vrx, alphabet, MolecularSymbol{j, 0, 0},
                                          MolecularSymbol{jbar, 0, 0});
    return {std::clamp(err / (static_cast<double>(n) * n), 0.0, 1.0), SerKind::Exact};
}

double ssk_ser_factorized(const ChannelSnapshot& snap, const SystemGeometry& geom,
                          const CskAlphabet& alphabet) {
    if (alphabet.order() != 1) throw std::invalid_argument("ssk_ser_factorized: single-level alphabet required");
    const int n = snap.n;
    double correct = 0.0;
    for (int j = 0; j < n; ++j)
        for (int jbar = 0; jbar < n; ++jbar)
            correct += space_correct_factorized(snap, geom, alphabet, MolecularSymbol{j, 0, 0},
                                                MolecularSymbol{jbar, 0, 0});
    return std::clamp(1.0 - correct / (static_cast<double>(n) * n), 0.0, 1.0);
}

SerEstimate sm_ser_bound(const ChannelSnapshot& snap, const SystemGeometry& geom,
                         const CskAlphabet& alphabet) {
    const int n = snap.n;
    const int m_order = alphabet.order();
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int m = 0; m < m_order; ++m) {
            const MolecularSymbol cur{j, m, 0};
            for (int jbar = 0; jbar < n; ++jbar) {
                for (int mbar = 0; mbar < m_order; ++mbar) {
                    const MolecularSymbol prev{jbar, mbar, 0};
                    const double space_err = 1.0 - space_correct_factorized(snap, geom, alphabet, cur, prev);
                    const double csk_err = csk_error_bound(snap, geom, alphabet, cur, prev);
                    total += std::min(space_err + csk_err, 1.0);
                }
            }
        }
    }
    const double denom = static_cast<double>(n) * n * m_order * m_order;
    return {std::clamp(total / denom, 0.0, 1.0), SerKind::UpperBound};
}

}  // namespace smmc
