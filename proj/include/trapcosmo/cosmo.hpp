#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "trapcosmo/numerics.hpp"

namespace trapcosmo {

enum class ScaleFactorKind { flat, de_sitter, power_law, tabulated };

// Scale factor a(t). flat: a = 1. de_sitter: a = exp(kappa t). power_law:
// a = t^q on t > 0 (reference time fixed at 1). tabulated: strictly positive
// samples (t, a) interpolated monotonically in log a.
struct ScaleFactorModel {
    ScaleFactorKind kind = ScaleFactorKind::flat;
    double kappa = 0.0;
    double exponent = 0.0;
    std::vector<std::pair<double, double>> table;

    static ScaleFactorModel make_flat();
    static ScaleFactorModel make_de_sitter(double kappa);
    static ScaleFactorModel make_power_law(double exponent);
    static ScaleFactorModel make_tabulated(std::vector<std::pair<double, double>> samples);

    void validate() const;
    bool operator==(const ScaleFactorModel&) const = default;
};

// Invertible map between cosmic time t and conformal time chi on a fixed
// t-interval, with dchi/dt = 1/a(t) > 0. Closed forms where available,
// cumulative quadrature plus monotone interpolation for tabulated models.
// Anchors: flat chi(0) = 0, de Sitter chi(0) = -1/kappa, power_law chi(1) = 0,
// tabulated chi(t_min) = 0. Evaluation outside the domain (beyond a relative
// slack of 1e-9) raises DomainError.
class ConformalMap {
  public:
    double t_min() const { return t_lo_; }
    double t_max() const { return t_hi_; }
    double chi_min() const { return chi_lo_; }
    double chi_max() const { return chi_hi_; }

    double forward(double t) const;      // t -> chi
    double inverse(double chi) const;    // chi -> t
    double derivative(double t) const;   // dchi/dt = 1/a(t)
    double scale_factor(double t) const; // a(t)

  private:
    friend ConformalMap build_conformal_map(const ScaleFactorModel&, double, double);
    double t_lo_ = 0.0, t_hi_ = 0.0;
    double chi_lo_ = 0.0, chi_hi_ = 0.0;
    std::function<double(double)> fwd_;
    std::function<double(double)> inv_;
    std::function<double(double)> a_;
};

ConformalMap build_conformal_map(const ScaleFactorModel& model, double t_lo, double t_hi);

enum class WindowShape { rectangular, tukey };

// Coupling envelope f(t) on [t_init, t_final]; zero outside. tukey applies
// raised-cosine ramps over ramp_fraction of the length at each end.
struct WindowSpec {
    double t_init = 0.0;
    double t_final = 10.0;
    WindowShape shape = WindowShape::rectangular;
    double ramp_fraction = 0.0;

    void validate() const;
    double profile(double t) const;
    bool operator==(const WindowSpec&) const = default;
};

// Detuning schedule a(t(chi)) * base_detuning.
std::function<double(double)> detuning_schedule(const ScaleFactorModel& model,
                                                const ConformalMap& map,
                                                double base_detuning);

// Window transform F(chi) = a(t(chi))^((4 - n_dim)/2) * f(t(chi)).
std::function<double(double)> window_transform(const WindowSpec& window,
                                               const ScaleFactorModel& model,
                                               const ConformalMap& map,
                                               int n_dim);

// Laser frequency schedule atomic_frequency - a(t(chi)) * base_detuning.
std::function<double(double)> laser_frequency_schedule(const ScaleFactorModel& model,
                                                       const ConformalMap& map,
                                                       double base_detuning,
                                                       double atomic_frequency);

// Fractional coupling ratio 1 - (base_detuning / laser_frequency) * (a - 1).
std::function<double(double)> lamb_dicke_drift(const ScaleFactorModel& model,
                                               const ConformalMap& map,
                                               double base_detuning,
                                               double laser_frequency);

}  // namespace trapcosmo
