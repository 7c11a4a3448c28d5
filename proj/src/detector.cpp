#include "trapcosmo/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trapcosmo/errors.hpp"
#include "trapcosmo/specfun.hpp"

namespace trapcosmo {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

double mode_weight(const NormalModes& modes, int ion_zero_based, int p) {
    const double b = modes.b(ion_zero_based, p);
    return b * b / std::sqrt(modes.eigenvalues_mu[p]);
}

void require_two_dimensional(const DetectorSpec& spec, const char* what) {
    if (spec.n_dim != 2)
        throw DomainError(std::string(what) + ": closed form is defined for n_dim = 2");
}

// Sorted union of oscillation breakpoints and mandatory interior seeds
// (window ramp joins), all clipped to (a, b).
std::vector<double> merge_breakpoints(std::vector<double> base,
                                      const std::vector<double>& interior) {
    for (double x : interior)
        if (x > base.front() && x < base.back())
            base.push_back(x);
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    return base;
}

struct ModeAccumulator {
    std::vector<double> per_mode;
    double error = 0.0;
    double total = 0.0;
    bool converged = true;
    double achieved = 0.0;

    void add(double coupling, double weight, const QuadratureResult& integral) {
        const double magnitude = std::abs(integral.value);
        const double scale = coupling * coupling * weight;
        per_mode.push_back(scale * magnitude * magnitude);
        total += per_mode.back();
        error += scale * (2.0 * magnitude * integral.error_estimate +
                          integral.error_estimate * integral.error_estimate);
        converged = converged && integral.converged;
        achieved += integral.error_estimate;
    }
};

}  // namespace

void DetectorSpec::validate() const {
    if (ion_index < 1)
        throw DomainError("DetectorSpec: ion_index must be >= 1");
    if (detuning == 0.0)
        throw DomainError("DetectorSpec: detuning must be nonzero");
    if (!(coupling > 0.0))
        throw DomainError("DetectorSpec: coupling must be positive");
    if (n_dim < 2)
        throw DomainError("DetectorSpec: n_dim must be >= 2");
    window.validate();
}

ResponseResult response_numeric(const NormalModes& modes, const DetectorSpec& spec,
                                const ScaleFactorModel& model, const ConformalMap& map,
                                const QuadratureSettings& settings) {
    spec.validate();
    model.validate();
    if (spec.ion_index > modes.n())
        throw DomainError("response_numeric: ion_index exceeds chain size");
    const WindowSpec& window = spec.window;
    const double slack = 1e-9 * std::max({1.0, std::abs(map.t_min()), std::abs(map.t_max())});
    if (window.t_init < map.t_min() - slack || window.t_final > map.t_max() + slack)
        throw DomainError("response_numeric: window not contained in the map domain");

    const int ion = spec.ion_index - 1;
    const bool has_ramps =
        window.shape == WindowShape::tukey && window.ramp_fraction > 0.0;
    const double ramp = window.ramp_fraction * (window.t_final - window.t_init);

    ModeAccumulator acc;
    for (int p = 0; p < modes.n(); ++p) {
        const double nu_p = modes.frequencies[p];
        QuadratureResult integral;

        if (model.kind == ScaleFactorKind::de_sitter) {
            // Substitution u = exp(-kappa t) = -kappa chi. Per mode,
            //   I_p = (1/kappa) int_{u_f}^{u_i} u^{(n-4)/2} u^{i beta}
            //                      e^{i alpha u} f(t(u)) du
            // with beta = detuning/kappa and alpha = nu_p/kappa.
            const double kappa = model.kappa;
            const double beta = spec.detuning / kappa;
            const double alpha = nu_p / kappa;
            const double u_f = std::exp(-kappa * window.t_final);
            const double u_i = std::exp(-kappa * window.t_init);
            if (!std::isfinite(u_i))
                throw DomainError("response_numeric: window start too early for de Sitter");
            const double amp_power = 0.5 * (spec.n_dim - 4);

            auto integrand = [&](double u) -> Complex {
                double envelope = std::pow(u, amp_power);
                if (has_ramps)
                    envelope *= window.profile(-std::log(u) / kappa);
                return std::polar(envelope / kappa, beta * std::log(u) + alpha * u);
            };
            auto phase_rate = [beta, alpha](double u) { return beta / u + alpha; };

            std::vector<double> seeds;
            if (has_ramps) {
                seeds.push_back(std::exp(-kappa * (window.t_init + ramp)));
                seeds.push_back(std::exp(-kappa * (window.t_final - ramp)));
            }
            const auto pts =
                merge_breakpoints(oscillation_breakpoints(phase_rate, u_f, u_i), seeds);
            integral = integrate_complex(integrand, pts, settings);
        } else {
            // Conformal-time path: I_p = int F(chi) e^{-i (Delta t(chi) + nu_p chi)} dchi
            // with F(chi) = a(t)^((4-n)/2) f(t) evaluated at t = t(chi).
            const double chi_a = map.forward(window.t_init);
            const double chi_b = map.forward(window.t_final);
            const double half_power = 0.5 * (4 - spec.n_dim);
            auto integrand = [&](double chi) -> Complex {
                const double t = map.inverse(chi);
                const double envelope =
                    std::pow(map.scale_factor(t), half_power) * window.profile(t);
                return std::polar(envelope, -(spec.detuning * t + nu_p * chi));
            };
            auto phase_rate = [&](double chi) {
                return spec.detuning * map.scale_factor(map.inverse(chi)) + nu_p;
            };

            std::vector<double> seeds;
            if (has_ramps) {
                seeds.push_back(map.forward(window.t_init + ramp));
                seeds.push_back(map.forward(window.t_final - ramp));
            }
            const auto pts =
                merge_breakpoints(oscillation_breakpoints(phase_rate, chi_a, chi_b), seeds);
            integral = integrate_complex(integrand, pts, settings);
        }

        acc.add(spec.coupling, mode_weight(modes, ion, p), integral);
    }

    if (!acc.converged)
        throw ConvergenceError(
            "response_numeric: quadrature did not converge; achieved absolute error " +
            std::to_string(acc.achieved));

    ResponseResult result;
    result.per_mode = std::move(acc.per_mode);
    result.total = acc.total;
    result.quadrature_error = acc.error;
    result.method = ResponseMethod::numeric;
    return result;
}

ResponseResult response_desitter_infinite(const NormalModes& modes, const DetectorSpec& spec,
                                          double kappa) {
    spec.validate();
    require_two_dimensional(spec, "response_desitter_infinite");
    if (!(kappa > 0.0))
        throw DomainError("response_desitter_infinite: kappa must be positive");
    if (spec.ion_index > modes.n())
        throw DomainError("response_desitter_infinite: ion_index exceeds chain size");

    const double beta = spec.detuning / kappa;
    const double prefactor = spec.coupling * spec.coupling / (kappa * spec.detuning) *
                             2.0 * kPi / std::expm1(2.0 * kPi * beta);

    ResponseResult result;
    result.method = ResponseMethod::analytic_infinite;
    const int ion = spec.ion_index - 1;
    for (int p = 0; p < modes.n(); ++p) {
        result.per_mode.push_back(prefactor * mode_weight(modes, ion, p));
        result.total += result.per_mode.back();
    }
    return result;
}

ResponseResult response_desitter_finite(const NormalModes& modes, const DetectorSpec& spec,
                                        double kappa, double t_init, double t_final) {
    spec.validate();
    require_two_dimensional(spec, "response_desitter_finite");
    if (!(kappa > 0.0))
        throw DomainError("response_desitter_finite: kappa must be positive");
    if (t_final < t_init)
        throw DomainError("response_desitter_finite: t_final must be >= t_init");
    if (spec.ion_index > modes.n())
        throw DomainError("response_desitter_finite: ion_index exceeds chain size");

    const double beta = spec.detuning / kappa;
    const Complex z{0.0, beta};
    const double u_i = std::exp(-kappa * t_init);
    const double u_f = std::exp(-kappa * t_final);
    if (!std::isfinite(u_i))
        throw DomainError("response_desitter_finite: t_init too early for double range");

    const double prefactor = spec.coupling * spec.coupling / (kappa * spec.detuning) *
                             2.0 * kPi / std::expm1(2.0 * kPi * beta);
    const Complex gamma_z = gamma(z);

    ResponseResult result;
    result.method = ResponseMethod::analytic_finite;
    const int ion = spec.ion_index - 1;
    for (int p = 0; p < modes.n(); ++p) {
        const double alpha = modes.frequencies[p] / kappa;
        // The window's exact endpoints are machine numbers, where pointwise
        // evaluation is well conditioned; the public small-|b| guard exists
        // only to reject the (divergent) b -> 0 limit.
        const Complex q_f =
            detail::upper_incomplete_gamma_at(z, Complex{0.0, -alpha * u_f}) / gamma_z;
        const Complex q_i =
            detail::upper_incomplete_gamma_at(z, Complex{0.0, -alpha * u_i}) / gamma_z;
        const double dq = std::abs(q_f - q_i);
        result.per_mode.push_back(prefactor * mode_weight(modes, ion, p) * dq * dq);
        result.total += result.per_mode.back();
    }
    return result;
}

Complex thermal_integral(double kappa, double detuning, double mode_frequency) {
    if (!(kappa > 0.0))
        throw DomainError("thermal_integral: kappa must be positive");
    if (!(mode_frequency > 0.0))
        throw DomainError("thermal_integral: mode_frequency must be positive");
    if (detuning == 0.0)
        throw DomainError("thermal_integral: detuning must be nonzero");

    const double beta = detuning / kappa;
    const double alpha = mode_frequency / kappa;
    return gamma(Complex{0.0, beta}) *
           std::polar(std::exp(-0.5 * kPi * beta) / kappa, -beta * std::log(alpha));
}

double ratio_signature(const NormalModes& modes, const DetectorSpec& spec,
                       double kappa, double t_init, double t_final) {
    DetectorSpec mirrored = spec;
    mirrored.detuning = -spec.detuning;
    const double num = response_desitter_finite(modes, spec, kappa, t_init, t_final).total;
    const double den = response_desitter_finite(modes, mirrored, kappa, t_init, t_final).total;
    if (!(den > 1e-300))
        throw DomainError("ratio_signature: denominator response below 1e-300");
    return num / den;
}

double gibbons_hawking_temperature(double kappa) {
    if (!(kappa > 0.0))
        throw DomainError("gibbons_hawking_temperature: kappa must be positive");
    return kappa / (2.0 * kPi);
}

}  // namespace trapcosmo
