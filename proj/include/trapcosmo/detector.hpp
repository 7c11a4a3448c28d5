#pragma once

#include <vector>

#include "trapcosmo/cosmo.hpp"
#include "trapcosmo/ionchain.hpp"
#include "trapcosmo/numerics.hpp"

namespace trapcosmo {

// Detuning sign convention: detuning > 0 drives the first red sideband
// (phonon absorption), detuning < 0 the first blue sideband (emission).
struct DetectorSpec {
    int ion_index = 1;       // 1-based ion in the chain
    double detuning = 1.0;   // units of the trap frequency, nonzero
    double coupling = 1.0;   // product of Rabi frequency and Lamb-Dicke factor
    int n_dim = 2;           // spacetime dimension entering the window transform
    WindowSpec window;

    void validate() const;
    bool operator==(const DetectorSpec&) const = default;
};

enum class ResponseMethod { numeric, analytic_infinite, analytic_finite };

struct ResponseResult {
    double total = 0.0;                // excitation probability, sum of per_mode
    std::vector<double> per_mode;      // one nonnegative term per normal mode
    double quadrature_error = 0.0;     // absolute error estimate (0 for closed forms)
    ResponseMethod method = ResponseMethod::numeric;
};

// Excitation probability by adaptive quadrature of the per-mode oscillatory
// integrals. de Sitter models integrate in u = exp(-kappa t) to tame the
// late-time endpoint; other models integrate in conformal time. The window
// must lie inside the map's domain.
ResponseResult response_numeric(const NormalModes& modes, const DetectorSpec& spec,
                                const ScaleFactorModel& model, const ConformalMap& map,
                                const QuadratureSettings& settings = {});

// Infinite-window de Sitter closed form: a Planck spectrum at temperature
// kappa / 2 pi. Requires n_dim == 2 (the closed form is two-dimensional).
ResponseResult response_desitter_infinite(const NormalModes& modes, const DetectorSpec& spec,
                                          double kappa);

// Finite-window de Sitter closed form for a rectangular window [t_init,
// t_final] in cosmic time, via regularized incomplete gamma differences.
// Requires n_dim == 2; t_init == t_final yields zero.
ResponseResult response_desitter_finite(const NormalModes& modes, const DetectorSpec& spec,
                                        double kappa, double t_init, double t_final);

// Per-mode infinite-window kernel (1/kappa) Gamma(i beta) alpha^(-i beta)
// e^(-pi beta / 2) with beta = detuning/kappa, alpha = mode_frequency/kappa.
Complex thermal_integral(double kappa, double detuning, double mode_frequency);

// Finite-window sideband asymmetry: total response at +detuning over total
// response at -detuning on the same window.
double ratio_signature(const NormalModes& modes, const DetectorSpec& spec,
                       double kappa, double t_init, double t_final);

// Temperature kappa / (2 pi) of the thermal spectrum an exponential
// background imprints on the infinite-window response.
double gibbons_hawking_temperature(double kappa);

}  // namespace trapcosmo
