#include "trapcosmo/cosmo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trapcosmo/errors.hpp"

namespace trapcosmo {

namespace {

// Monotone cubic Hermite interpolant with Fritsch-Carlson slope limiting.
// Reproduces linear data exactly and never overshoots the samples.
class MonotoneCubic {
  public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)), d_(x_.size(), 0.0) {
        const std::size_t n = x_.size();
        std::vector<double> h(n - 1), s(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            s[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        if (n == 2) {
            d_[0] = d_[1] = s[0];
        } else {
            d_[0] = endpoint_slope(h[0], h[1], s[0], s[1]);
            d_[n - 1] = endpoint_slope(h[n - 2], h[n - 3], s[n - 2], s[n - 3]);
            for (std::size_t i = 1; i + 1 < n; ++i) {
                if (s[i - 1] == 0.0 || s[i] == 0.0 || (s[i - 1] > 0.0) != (s[i] > 0.0)) {
                    d_[i] = 0.0;
                } else {
                    const double w1 = 2.0 * h[i] + h[i - 1];
                    const double w2 = h[i] + 2.0 * h[i - 1];
                    d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
                }
            }
        }
    }

    double operator()(double t) const {
        const std::size_t i = interval(t);
        const double h = x_[i + 1] - x_[i];
        const double u = (t - x_[i]) / h;
        const double u2 = u * u;
        const double u3 = u2 * u;
        const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        const double h10 = u3 - 2.0 * u2 + u;
        const double h01 = -2.0 * u3 + 3.0 * u2;
        const double h11 = u3 - u2;
        return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
    }

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    const std::vector<double>& knots() const { return x_; }

  private:
    static double endpoint_slope(double h0, double h1, double s0, double s1) {
        // Three-point one-sided estimate, clamped for monotonicity.
        double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if ((d > 0.0) != (s0 > 0.0) || s0 == 0.0)
            d = 0.0;
        else if ((s0 > 0.0) != (s1 > 0.0) && std::abs(d) > 3.0 * std::abs(s0))
            d = 3.0 * s0;
        return d;
    }

    std::size_t interval(double t) const {
        const auto it = std::upper_bound(x_.begin(), x_.end(), t);
        std::size_t i = static_cast<std::size_t>(std::distance(x_.begin(), it));
        if (i > 0)
            --i;
        return std::min(i, x_.size() - 2);
    }

    std::vector<double> x_, y_, d_;
};

// Adaptive Simpson with the standard one-level Richardson acceptance test.
double adaptive_simpson_rec(const std::function<double(double)>& f,
                            double a, double fa, double b, double fb,
                            double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double tol) {
    if (a == b)
        return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

double domain_slack(double lo, double hi) {
    return 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)});
}

void check_inside(double x, double lo, double hi, const char* what) {
    if (x < lo - domain_slack(lo, hi) || x > hi + domain_slack(lo, hi))
        throw DomainError(std::string(what) + ": evaluation outside configured domain");
}

}  // namespace

ScaleFactorModel ScaleFactorModel::make_flat() {
    return ScaleFactorModel{};
}

ScaleFactorModel ScaleFactorModel::make_de_sitter(double kappa) {
    ScaleFactorModel m;
    m.kind = ScaleFactorKind::de_sitter;
    m.kappa = kappa;
    m.validate();
    return m;
}

ScaleFactorModel ScaleFactorModel::make_power_law(double exponent) {
    ScaleFactorModel m;
    m.kind = ScaleFactorKind::power_law;
    m.exponent = exponent;
    m.validate();
    return m;
}

ScaleFactorModel ScaleFactorModel::make_tabulated(std::vector<std::pair<double, double>> samples) {
    ScaleFactorModel m;
    m.kind = ScaleFactorKind::tabulated;
    m.table = std::move(samples);
    m.validate();
    return m;
}

void ScaleFactorModel::validate() const {
    switch (kind) {
        case ScaleFactorKind::flat:
        case ScaleFactorKind::power_law:
            break;
        case ScaleFactorKind::de_sitter:
            if (!(kappa > 0.0))
                throw DomainError("ScaleFactorModel: de_sitter requires kappa > 0");
            break;
        case ScaleFactorKind::tabulated:
            if (table.size() < 2)
                throw DomainError("ScaleFactorModel: tabulated requires >= 2 samples");
            for (std::size_t i = 0; i < table.size(); ++i) {
                if (!(table[i].second > 0.0))
                    throw DomainError("ScaleFactorModel: tabulated scale factor must be positive");
                if (i > 0 && !(table[i].first > table[i - 1].first))
                    throw DomainError("ScaleFactorModel: tabulated times must be ascending");
            }
            break;
    }
}

// After the slack-tolerant domain check, arguments are clamped onto the
// closed domain so closed forms stay finite right at the edges.
double ConformalMap::forward(double t) const {
    check_inside(t, t_lo_, t_hi_, "ConformalMap::forward");
    return fwd_(std::clamp(t, t_lo_, t_hi_));
}

double ConformalMap::inverse(double chi) const {
    check_inside(chi, chi_lo_, chi_hi_, "ConformalMap::inverse");
    return inv_(std::clamp(chi, chi_lo_, chi_hi_));
}

double ConformalMap::derivative(double t) const {
    check_inside(t, t_lo_, t_hi_, "ConformalMap::derivative");
    return 1.0 / a_(std::clamp(t, t_lo_, t_hi_));
}

double ConformalMap::scale_factor(double t) const {
    check_inside(t, t_lo_, t_hi_, "ConformalMap::scale_factor");
    return a_(std::clamp(t, t_lo_, t_hi_));
}

ConformalMap build_conformal_map(const ScaleFactorModel& model, double t_lo, double t_hi) {
    model.validate();
    if (!(t_lo < t_hi))
        throw DomainError("build_conformal_map: domain must satisfy t_lo < t_hi");

    ConformalMap map;
    map.t_lo_ = t_lo;
    map.t_hi_ = t_hi;

    switch (model.kind) {
        case ScaleFactorKind::flat: {
            map.a_ = [](double) { return 1.0; };
            map.fwd_ = [](double t) { return t; };
            map.inv_ = [](double chi) { return chi; };
            break;
        }
        case ScaleFactorKind::de_sitter: {
            const double kappa = model.kappa;
            map.a_ = [kappa](double t) { return std::exp(kappa * t); };
            map.fwd_ = [kappa](double t) { return -std::exp(-kappa * t) / kappa; };
            map.inv_ = [kappa](double chi) { return -std::log(-kappa * chi) / kappa; };
            break;
        }
        case ScaleFactorKind::power_law: {
            const double q = model.exponent;
            if (!(t_lo > 0.0))
                throw DomainError("build_conformal_map: power_law requires domain t > 0");
            map.a_ = [q](double t) { return std::pow(t, q); };
            if (q == 1.0) {
                map.fwd_ = [](double t) { return std::log(t); };
                map.inv_ = [](double chi) { return std::exp(chi); };
            } else {
                map.fwd_ = [q](double t) { return (std::pow(t, 1.0 - q) - 1.0) / (1.0 - q); };
                map.inv_ = [q](double chi) {
                    return std::pow(1.0 + (1.0 - q) * chi, 1.0 / (1.0 - q));
                };
            }
            break;
        }
        case ScaleFactorKind::tabulated: {
            if (t_lo < model.table.front().first - domain_slack(t_lo, t_hi) ||
                t_hi > model.table.back().first + domain_slack(t_lo, t_hi))
                throw DomainError("build_conformal_map: domain exceeds tabulated range");

            std::vector<double> ts, log_as;
            ts.reserve(model.table.size());
            log_as.reserve(model.table.size());
            for (const auto& [t, a] : model.table) {
                ts.push_back(t);
                log_as.push_back(std::log(a));
            }
            auto interp = std::make_shared<MonotoneCubic>(std::move(ts), std::move(log_as));
            auto a_fn = [interp](double t) { return std::exp((*interp)(t)); };

            // Cumulative integral of 1/a across the knots inside the domain,
            // anchored at chi(t_min) = 0.
            auto inv_a = [a_fn](double t) { return 1.0 / a_fn(t); };
            std::vector<double> knot_t{t_lo};
            for (double k : interp->knots())
                if (k > t_lo && k < t_hi)
                    knot_t.push_back(k);
            knot_t.push_back(t_hi);
            std::vector<double> knot_chi(knot_t.size(), 0.0);
            for (std::size_t i = 1; i < knot_t.size(); ++i)
                knot_chi[i] = knot_chi[i - 1] +
                              adaptive_simpson(inv_a, knot_t[i - 1], knot_t[i], 1e-13);

            auto fwd = [inv_a, knot_t, knot_chi](double t) {
                auto it = std::upper_bound(knot_t.begin(), knot_t.end(), t);
                std::size_t i = static_cast<std::size_t>(std::distance(knot_t.begin(), it));
                i = std::min(i > 0 ? i - 1 : 0, knot_t.size() - 2);
                return knot_chi[i] + adaptive_simpson(inv_a, knot_t[i], t, 1e-13);
            };
            map.a_ = a_fn;
            map.fwd_ = fwd;
            const double lo = t_lo;
            const double hi = t_hi;
            map.inv_ = [fwd, lo, hi](double chi) {
                auto shifted = [&fwd, chi](double t) { return fwd(t) - chi; };
                const double tol = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
                return find_root_monotone(shifted, lo, hi, tol);
            };
            break;
        }
    }

    if (!(map.a_(t_lo) > 0.0) || !(map.a_(t_hi) > 0.0))
        throw DomainError("build_conformal_map: scale factor not positive on domain");
    map.chi_lo_ = map.fwd_(t_lo);
    map.chi_hi_ = map.fwd_(t_hi);
    return map;
}

void WindowSpec::validate() const {
    if (!(t_final > t_init))
        throw DomainError("WindowSpec: t_final must exceed t_init");
    if (shape == WindowShape::rectangular && ramp_fraction != 0.0)
        throw DomainError("WindowSpec: rectangular window requires ramp_fraction = 0");
    if (ramp_fraction < 0.0 || ramp_fraction > 0.5)
        throw DomainError("WindowSpec: ramp_fraction must lie in [0, 0.5]");
}

double WindowSpec::profile(double t) const {
    if (t < t_init || t > t_final)
        return 0.0;
    if (shape == WindowShape::rectangular || ramp_fraction == 0.0)
        return 1.0;
    const double ramp = ramp_fraction * (t_final - t_init);
    const double up = t - t_init;
    const double down = t_final - t;
    constexpr double kPi = 3.141592653589793238462643383279503;
    if (up < ramp)
        return 0.5 * (1.0 - std::cos(kPi * up / ramp));
    if (down < ramp)
        return 0.5 * (1.0 - std::cos(kPi * down / ramp));
    return 1.0;
}

std::function<double(double)> detuning_schedule(const ScaleFactorModel& model,
                                                const ConformalMap& map,
                                                double base_detuning) {
    model.validate();
    return [map, base_detuning](double chi) {
        return map.scale_factor(map.inverse(chi)) * base_detuning;
    };
}

std::function<double(double)> window_transform(const WindowSpec& window,
                                               const ScaleFactorModel& model,
                                               const ConformalMap& map,
                                               int n_dim) {
    window.validate();
    model.validate();
    if (n_dim < 2)
        throw DomainError("window_transform: n_dim must be >= 2");
    const double half_power = 0.5 * (4.0 - n_dim);
    return [map, window, half_power](double chi) {
        const double t = map.inverse(chi);
        return std::pow(map.scale_factor(t), half_power) * window.profile(t);
    };
}

std::function<double(double)> laser_frequency_schedule(const ScaleFactorModel& model,
                                                       const ConformalMap& map,
                                                       double base_detuning,
                                                       double atomic_frequency) {
    model.validate();
    return [map, base_detuning, atomic_frequency](double chi) {
        return atomic_frequency - map.scale_factor(map.inverse(chi)) * base_detuning;
    };
}

std::function<double(double)> lamb_dicke_drift(const ScaleFactorModel& model,
                                               const ConformalMap& map,
                                               double base_detuning,
                                               double laser_frequency) {
    model.validate();
    if (!(laser_frequency > 0.0))
        throw DomainError("lamb_dicke_drift: laser_frequency must be positive");
    return [map, base_detuning, laser_frequency](double chi) {
        const double a = map.scale_factor(map.inverse(chi));
        return 1.0 - (base_detuning / laser_frequency) * (a - 1.0);
    };
}

}  // namespace trapcosmo
