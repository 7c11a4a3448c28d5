#include "trapcosmo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "trapcosmo/errors.hpp"

namespace trapcosmo {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// xgk holds the positive abscissae; odd indices are the Gauss points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelEstimate {
    Complex value{0.0, 0.0};
    double error = 0.0;
    double floor = 0.0;  // irreducible rounding part of the error
};

// Single Gauss-Kronrod 7-15 application. The error term is the raw
// |K15 - G7| difference with a rounding floor tied to the L1 mass of the
// panel, deliberately conservative rather than QUADPACK-sharp.
PanelEstimate gk15(const std::function<Complex(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const Complex fc = f(center);
    Complex kronrod = kWgk[7] * fc;
    Complex gauss = kWg[3] * fc;
    double mass = kWgk[7] * std::abs(fc);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const Complex lo = f(center - dx);
        const Complex hi = f(center + dx);
        const Complex pair = lo + hi;
        kronrod += kWgk[j] * pair;
        mass += kWgk[j] * (std::abs(lo) + std::abs(hi));
        if (j & 1)
            gauss += kWg[j / 2] * pair;
    }

    PanelEstimate est;
    est.value = kronrod * half;
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * mass;
    // The floor scales with the L1 mass, which is invariant under bisection,
    // so the summed floors bound what refinement can ever achieve.
    est.floor = floor * std::abs(half);
    est.error = std::max(std::abs(kronrod - gauss), floor) * std::abs(half);
    if (!std::isfinite(est.value.real()) || !std::isfinite(est.value.imag()))
        throw DomainError("integrate_complex: integrand not finite on [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
    return est;
}

struct Panel {
    double a = 0.0;
    double b = 0.0;
    Complex value{0.0, 0.0};
    double error = 0.0;
    double floor = 0.0;
    int depth = 0;
    std::size_t seq = 0;
};

// Max-heap on error; creation order breaks exact ties so the refinement
// sequence, and with it every emitted bit, is reproducible.
struct WorstFirst {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error)
            return x.error < y.error;
        return x.seq > y.seq;
    }
};

constexpr std::size_t kPanelBudget = 1u << 20;

}  // namespace

QuadratureResult integrate_complex(const std::function<Complex(double)>& f,
                                   std::span<const double> breakpoints,
                                   const QuadratureSettings& settings) {
    if (settings.rel_tol <= 0.0 || settings.abs_tol <= 0.0 || settings.max_depth < 1)
        throw DomainError("integrate_complex: invalid settings");
    if (breakpoints.size() < 2)
        throw DomainError("integrate_complex: need at least two breakpoints");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i] < breakpoints[i + 1]))
            throw DomainError("integrate_complex: breakpoints not strictly ascending");
    }

    std::priority_queue<Panel, std::vector<Panel>, WorstFirst> queue;
    std::size_t seq = 0;
    Complex total{0.0, 0.0};
    double total_error = 0.0;
    double total_floor = 0.0;
    // Frozen panels keep contributing to the totals but leave the queue.
    Complex frozen_value{0.0, 0.0};
    double frozen_error = 0.0;
    std::size_t n_panels = 0;

    auto push_panel = [&](double a, double b, int depth) {
        const PanelEstimate est = gk15(f, a, b);
        Panel p{a, b, est.value, est.error, est.floor, depth, seq++};
        total += p.value;
        total_error += p.error;
        total_floor += p.floor;
        ++n_panels;
        if (depth >= settings.max_depth) {
            frozen_value += p.value;
            frozen_error += p.error;
        } else {
            queue.push(p);
        }
    };

    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        push_panel(breakpoints[i], breakpoints[i + 1], 0);

    // The target error: the requested tolerance, or the summed rounding
    // floors when those dominate, since no amount of refinement beats them.
    // The slack factor absorbs accumulation drift between the two running
    // sums over many add/remove cycles.
    auto tolerance = [&]() {
        return std::max(
            {settings.abs_tol, settings.rel_tol * std::abs(total), 1.125 * total_floor});
    };

    while (total_error > tolerance() && !queue.empty() && n_panels < kPanelBudget) {
        const Panel worst = queue.top();
        queue.pop();
        total -= worst.value;
        total_error -= worst.error;
        total_floor -= worst.floor;
        --n_panels;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable in doubles; freeze it.
            total += worst.value;
            total_error += worst.error;
            total_floor += worst.floor;
            ++n_panels;
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        push_panel(worst.a, mid, worst.depth + 1);
        push_panel(mid, worst.b, worst.depth + 1);
    }

    QuadratureResult result;
    result.value = total;
    result.error_estimate = total_error;
    result.converged = total_error <= tolerance();
    result.panels = n_panels;
    return result;
}

QuadratureResult integrate_complex(const std::function<Complex(double)>& f,
                                   double a, double b,
                                   const QuadratureSettings& settings) {
    if (!std::isfinite(a) || !std::isfinite(b) || a > b)
        throw DomainError("integrate_complex: invalid interval");
    if (a == b)
        return QuadratureResult{Complex{0.0, 0.0}, 0.0, true, 0};
    const double pts[2] = {a, b};
    return integrate_complex(f, std::span<const double>(pts, 2), settings);
}

std::vector<double> oscillation_breakpoints(const std::function<double(double)>& phase_rate,
                                            double a, double b,
                                            std::size_t max_points) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw DomainError("oscillation_breakpoints: invalid interval");
    if (max_points < 2)
        throw DomainError("oscillation_breakpoints: max_points too small");

    constexpr double kQuarter = 1.5707963267948966;  // pi/2 of phase per panel
    const double span = b - a;
    const double cap = span / 8.0;
    const double floor_step = span / static_cast<double>(max_points);

    std::vector<double> pts{a};
    double x = a;
    while (x < b) {
        double step = cap;
        const double rate_here = std::abs(phase_rate(x));
        if (rate_here * step > kQuarter)
            step = kQuarter / rate_here;
        // The rate may grow ahead (chirp); re-check once at the tentative end.
        const double rate_ahead = std::abs(phase_rate(std::min(x + step, b)));
        if (rate_ahead * step > kQuarter)
            step = kQuarter / rate_ahead;
        step = std::max(step, floor_step);
        x = (x + step >= b || pts.size() + 1 >= max_points) ? b : x + step;
        pts.push_back(x);
    }
    return pts;
}

double find_root_monotone(const std::function<double(double)>& f,
                          double lo, double hi, double tol) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
        throw DomainError("find_root_monotone: invalid bracket");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw DomainError("find_root_monotone: no sign change on bracket");

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;  // bracket already at double resolution
        const double fmid = f(mid);
        if (fmid == 0.0)
            return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace trapcosmo
