#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace trapcosmo {

using Complex = std::complex<double>;

struct QuadratureSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    int max_depth = 60;
};

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    bool converged = false;
    std::size_t panels = 0;
};

// Adaptive Gauss-Kronrod 7-15 on [a, b]. The panel with the largest error
// estimate is bisected until the summed estimate meets
// max(abs_tol, rel_tol * |value|). Panels that reach max_depth splits are
// frozen; if tolerance is still unmet once every panel is frozen, the best
// estimate is returned with converged = false. a == b yields zero; a > b or a
// non-finite integrand value is a DomainError.
QuadratureResult integrate_complex(const std::function<Complex(double)>& f,
                                   double a, double b,
                                   const QuadratureSettings& settings = {});

// Same scheme, refinement seeded with the given ascending breakpoints. Meant
// for oscillatory integrands pre-split by oscillation_breakpoints.
QuadratureResult integrate_complex(const std::function<Complex(double)>& f,
                                   std::span<const double> breakpoints,
                                   const QuadratureSettings& settings = {});

// Breakpoints on [a, b] for integrands oscillating as exp(i*phi(x)): panel
// widths are chosen so the local phase advance estimated from |phi'| stays
// near a quarter period, with a floor of 8 panels and a ceiling of max_points.
std::vector<double> oscillation_breakpoints(const std::function<double(double)>& phase_rate,
                                            double a, double b,
                                            std::size_t max_points = 200000);

// Bisection root of a continuous monotone f with a sign change on [lo, hi].
// The bracket is narrowed to width <= tol; throws DomainError when
// f(lo) and f(hi) have the same nonzero sign.
double find_root_monotone(const std::function<double(double)>& f,
                          double lo, double hi, double tol);

}  // namespace trapcosmo
