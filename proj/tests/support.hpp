// Shared helpers and independent reference computations used by the tests.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "trapcosmo/cosmo.hpp"
#include "trapcosmo/detector.hpp"
#include "trapcosmo/ionchain.hpp"
#include "trapcosmo/numerics.hpp"

namespace testsupport {

using trapcosmo::Complex;

inline double rel_gap(double measured, double reference) {
    return std::abs(measured - reference) / std::max(std::abs(reference), 1e-300);
}

inline double rel_gap(Complex measured, Complex reference) {
    return std::abs(measured - reference) / std::max(std::abs(reference), 1e-300);
}

// Fixed (non-adaptive) 15-point Kronrod application, kept local to the test
// tree so reference integrals do not depend on the adaptive driver under test.
inline Complex kronrod15(const std::function<Complex(double)>& f, double a, double b) {
    static constexpr double x[8] = {
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144838258730,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    };
    static constexpr double w[8] = {
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    };
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex sum = w[7] * f(center);
    for (int j = 0; j < 7; ++j)
        sum += w[j] * (f(center - half * x[j]) + f(center + half * x[j]));
    return sum * half;
}

// Reference for the de Sitter per-mode kernel: the damped Fourier-type
// integral I = int_0^inf u^{i*beta - 1} e^{(i*alpha - eps) u} du evaluated
// directly on the real axis.
//   * [0, delta]: term-by-term integration of the expanded exponential,
//   * [delta, cap]: half-oscillation Kronrod panels,
//   * [cap, inf): first boundary term of integration by parts; the discarded
//     remainder is bounded by |i*beta - 1| e^{-eps*cap} / (alpha*cap)^2.
inline Complex damped_fourier_reference(double beta, double alpha, double eps, double cap) {
    const Complex c(-eps, alpha);
    const double delta = 1e-3 / alpha;

    Complex head = 0.0;
    Complex coeff = 1.0;  // c^k / k!
    for (int k = 0; k < 80; ++k) {
        const Complex zk(static_cast<double>(k), beta);
        const Complex term = coeff * std::exp(zk * std::log(delta)) / zk;
        head += term;
        if (k > 3 && std::abs(term) < 1e-18 * std::abs(head))
            break;
        coeff *= c / static_cast<double>(k + 1);
    }

    const auto f = [&](double u) {
        return std::polar(std::exp(-eps * u) / u, beta * std::log(u) + alpha * u);
    };
    Complex body = 0.0;
    double u = delta;
    const double kHalfCycle = 3.14159265358979323846;
    while (u < cap) {
        const double rate = alpha + beta / u;
        const double step = std::min(kHalfCycle / rate, cap - u);
        body += kronrod15(f, u, u + step);
        u += step;
    }

    // Two integration-by-parts boundary terms at the cutoff; the remaining
    // tail is O(|i beta - 1| |i beta - 2| / (alpha cap)^3) relative to the
    // boundary magnitude, far below the tolerances asserted on this oracle.
    const Complex boundary =
        std::polar(std::exp(-eps * cap) / cap, beta * std::log(cap) + alpha * cap) / c;
    const Complex tail = boundary * (-1.0 + Complex(-1.0, beta) / (c * cap));
    return head + body + tail;
}

// Closed-form flat-spacetime response with a rectangular window of length T:
// each mode contributes w_p * 4 sin^2((detuning + nu_p) T / 2) / (detuning + nu_p)^2.
inline double flat_rectangular_mode_term(double weight, double detuning, double nu,
                                         double window_length) {
    const double s = detuning + nu;
    if (s == 0.0)
        return weight * window_length * window_length;
    const double half = 0.5 * s * window_length;
    const double sinc = 2.0 * std::sin(half) / s;
    return weight * sinc * sinc;
}

inline double flat_rectangular_total(const trapcosmo::NormalModes& modes,
                                     const trapcosmo::DetectorSpec& spec) {
    const double window_length = spec.window.t_final - spec.window.t_init;
    double total = 0.0;
    for (int p = 0; p < modes.n(); ++p) {
        const double b = modes.b(spec.ion_index - 1, p);
        const double weight =
            b * b / std::sqrt(modes.eigenvalues_mu[static_cast<std::size_t>(p)]);
        total += flat_rectangular_mode_term(weight * spec.coupling * spec.coupling,
                                            spec.detuning,
                                            modes.frequencies[static_cast<std::size_t>(p)],
                                            window_length);
    }
    return total;
}

// Independent evaluation of the infinite-window exponential-expansion total:
// coupling^2 / (kappa * detuning) * 2 pi / (e^{2 pi detuning/kappa} - 1) * sum_p w_p.
inline double infinite_window_total_reference(const trapcosmo::NormalModes& modes,
                                              const trapcosmo::DetectorSpec& spec,
                                              double kappa) {
    double weight_sum = 0.0;
    for (int p = 0; p < modes.n(); ++p) {
        const double b = modes.b(spec.ion_index - 1, p);
        weight_sum += b * b / std::sqrt(modes.eigenvalues_mu[static_cast<std::size_t>(p)]);
    }
    const double beta = spec.detuning / kappa;
    const double planck = 2.0 * 3.14159265358979323846 / std::expm1(2.0 * 3.14159265358979323846 * beta);
    return spec.coupling * spec.coupling / (kappa * spec.detuning) * planck * weight_sum;
}

inline trapcosmo::DetectorSpec make_spec(int ion_index, double detuning,
                                         double t_init, double t_final) {
    trapcosmo::DetectorSpec spec;
    spec.ion_index = ion_index;
    spec.detuning = detuning;
    spec.coupling = 1.0;
    spec.n_dim = 2;
    spec.window.t_init = t_init;
    spec.window.t_final = t_final;
    spec.window.shape = trapcosmo::WindowShape::rectangular;
    spec.window.ramp_fraction = 0.0;
    return spec;
}

}  // namespace testsupport
