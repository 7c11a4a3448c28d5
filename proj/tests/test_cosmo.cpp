#include <cmath>
#include <vector>

#include "doctest.h"

#include "trapcosmo/cosmo.hpp"
#include "trapcosmo/errors.hpp"
#include "support.hpp"

using trapcosmo::ScaleFactorModel;
using trapcosmo::ConformalMap;
using trapcosmo::WindowSpec;
using trapcosmo::WindowShape;
using trapcosmo::build_conformal_map;
using testsupport::rel_gap;

namespace {

std::vector<std::pair<double, double>> exponential_table(double kappa, double t_lo,
                                                         double t_hi, int count) {
    std::vector<std::pair<double, double>> table;
    table.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (count - 1);
        table.emplace_back(t, std::exp(kappa * t));
    }
    return table;
}

struct NamedMap {
    const char* name;
    ScaleFactorModel model;
    double t_lo;
    double t_hi;
};

std::vector<NamedMap> representative_maps() {
    return {
        {"flat", ScaleFactorModel::make_flat(), -5.0, 5.0},
        {"exponential", ScaleFactorModel::make_de_sitter(0.3), -4.0, 8.0},
        {"power q=2", ScaleFactorModel::make_power_law(2.0), 0.5, 9.0},
        {"power q=1", ScaleFactorModel::make_power_law(1.0), 0.5, 9.0},
        {"tabulated", ScaleFactorModel::make_tabulated(exponential_table(0.25, -1.0, 11.0, 500)),
         0.0, 10.0},
    };
}

}  // namespace

TEST_SUITE("cosmo") {

TEST_CASE("flat map is the identity") {
    const ConformalMap map = build_conformal_map(ScaleFactorModel::make_flat(), -3.0, 3.0);
    for (double t : {-3.0, -1.0, 0.0, 2.5, 3.0}) {
        CHECK(map.forward(t) == doctest::Approx(t).epsilon(1e-15));
        CHECK(map.scale_factor(t) == 1.0);
        CHECK(map.derivative(t) == 1.0);
    }
}

TEST_CASE("exponential map hits the anchor and closed form") {
    const double kappa = 0.2;
    const ConformalMap map =
        build_conformal_map(ScaleFactorModel::make_de_sitter(kappa), -50.0, 50.0);
    CHECK(rel_gap(map.forward(0.0), -1.0 / kappa) < 1e-14);
    for (double t = -50.0; t <= 50.0; t += 2.5) {
        CHECK(rel_gap(map.forward(t), -std::exp(-kappa * t) / kappa) < 1e-13);
        CHECK(rel_gap(map.scale_factor(t), std::exp(kappa * t)) < 1e-13);
    }
}

TEST_CASE("every model kind gives a strictly increasing, invertible map") {
    for (const auto& item : representative_maps()) {
        CAPTURE(item.name);
        const ConformalMap map = build_conformal_map(item.model, item.t_lo, item.t_hi);
        double prev = map.forward(item.t_lo);
        const int samples = 1000;
        for (int i = 1; i <= samples; ++i) {
            const double t = item.t_lo + (item.t_hi - item.t_lo) * i / samples;
            const double chi = map.forward(t);
            CHECK(chi > prev);
            prev = chi;
            const double back = map.inverse(chi);
            CHECK(std::abs(back - t) <= 1e-10 * std::max(1.0, std::abs(t)));
        }
    }
}

TEST_CASE("exponential derivative matches finite differences") {
    const double kappa = 0.4;
    const ConformalMap map =
        build_conformal_map(ScaleFactorModel::make_de_sitter(kappa), -6.0, 6.0);
    const double h = 1e-5;
    for (double t = -5.5; t <= 5.5; t += 0.7) {
        const double fd = (map.forward(t + h) - map.forward(t - h)) / (2.0 * h);
        CHECK(rel_gap(map.derivative(t), std::exp(-kappa * t)) < 1e-12);
        CHECK(rel_gap(fd, map.derivative(t)) < 1e-6);
    }
}

TEST_CASE("power-law maps use the anchored closed forms") {
    const ConformalMap q2 = build_conformal_map(ScaleFactorModel::make_power_law(2.0), 0.5, 20.0);
    for (double t : {0.5, 1.0, 3.0, 20.0})
        CHECK(rel_gap(q2.forward(t), 1.0 - 1.0 / t) < 1e-13);

    const ConformalMap q1 = build_conformal_map(ScaleFactorModel::make_power_law(1.0), 0.5, 20.0);
    for (double t : {0.5, 1.0, 3.0, 20.0})
        CHECK(std::abs(q1.forward(t) - std::log(t)) < 1e-13);

    CHECK_THROWS_AS(build_conformal_map(ScaleFactorModel::make_power_law(2.0), -1.0, 5.0),
                    trapcosmo::DomainError);
}

TEST_CASE("tabulated exponential map matches the closed form") {
    const double kappa = 0.25;
    const ConformalMap tab = build_conformal_map(
        ScaleFactorModel::make_tabulated(exponential_table(kappa, -1.0, 11.0, 500)), 0.0, 10.0);
    // The tabulated map anchors chi = 0 at the domain start; compare shifted.
    const auto closed_shifted = [&](double t) {
        return (-std::exp(-kappa * t) / kappa) - (-std::exp(-kappa * 0.0) / kappa);
    };
    for (double t = 0.0; t <= 10.0; t += 0.25) {
        CHECK(std::abs((tab.forward(t) - tab.forward(0.0)) - closed_shifted(t)) < 1e-8);
        CHECK(rel_gap(tab.scale_factor(t), std::exp(kappa * t)) < 1e-8);
    }
    // Inverting the anchor image recovers t = 0.
    CHECK(std::abs(tab.inverse(tab.forward(0.0))) < 1e-10);
}

TEST_CASE("domain edges are enforced") {
    const ConformalMap map =
        build_conformal_map(ScaleFactorModel::make_de_sitter(0.2), 0.0, 10.0);
    CHECK_THROWS_AS(map.forward(10.5), trapcosmo::DomainError);
    CHECK_THROWS_AS(map.forward(-0.5), trapcosmo::DomainError);
    CHECK_THROWS_AS(map.inverse(map.chi_max() + 1.0), trapcosmo::DomainError);
    CHECK_NOTHROW(map.forward(10.0));
    CHECK_NOTHROW(map.forward(0.0));

    CHECK_THROWS_AS(build_conformal_map(ScaleFactorModel::make_de_sitter(0.2), 5.0, 5.0),
                    trapcosmo::DomainError);
    CHECK_THROWS_AS(
        build_conformal_map(
            ScaleFactorModel::make_tabulated(exponential_table(0.2, 0.0, 5.0, 50)), -1.0, 4.0),
        trapcosmo::DomainError);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(ScaleFactorModel::make_de_sitter(0.0).validate(), trapcosmo::DomainError);
    CHECK_THROWS_AS(ScaleFactorModel::make_de_sitter(-1.0).validate(), trapcosmo::DomainError);
    CHECK_THROWS_AS(ScaleFactorModel::make_tabulated({{0.0, 1.0}}).validate(),
                    trapcosmo::DomainError);
    CHECK_THROWS_AS(ScaleFactorModel::make_tabulated({{0.0, 1.0}, {1.0, -2.0}}).validate(),
                    trapcosmo::DomainError);
    CHECK_THROWS_AS(ScaleFactorModel::make_tabulated({{1.0, 1.0}, {0.0, 2.0}}).validate(),
                    trapcosmo::DomainError);
}

TEST_CASE("window profiles") {
    WindowSpec rect;
    rect.t_init = 1.0;
    rect.t_final = 3.0;
    rect.shape = WindowShape::rectangular;
    rect.ramp_fraction = 0.0;
    rect.validate();
    CHECK(rect.profile(0.5) == 0.0);
    CHECK(rect.profile(1.0) == 1.0);
    CHECK(rect.profile(2.0) == 1.0);
    CHECK(rect.profile(3.0) == 1.0);
    CHECK(rect.profile(3.5) == 0.0);

    WindowSpec smooth = rect;
    smooth.shape = WindowShape::tukey;
    smooth.ramp_fraction = 0.25;  // ramps of width 0.5 at both ends
    smooth.validate();
    CHECK(smooth.profile(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(smooth.profile(1.25) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(smooth.profile(2.0) == 1.0);
    CHECK(smooth.profile(2.75) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(smooth.profile(3.0) == doctest::Approx(0.0).epsilon(1e-14));

    WindowSpec bad = rect;
    bad.t_final = 1.0;
    CHECK_THROWS_AS(bad.validate(), trapcosmo::DomainError);
    bad = rect;
    bad.ramp_fraction = 0.2;  // rectangular must have zero ramp
    CHECK_THROWS_AS(bad.validate(), trapcosmo::DomainError);
    bad = smooth;
    bad.ramp_fraction = 0.7;
    CHECK_THROWS_AS(bad.validate(), trapcosmo::DomainError);
}

TEST_CASE("detuning schedule equals the scale factor times the base value") {
    const double base = 1.5;
    for (const auto& item : representative_maps()) {
        CAPTURE(item.name);
        const ConformalMap map = build_conformal_map(item.model, item.t_lo, item.t_hi);
        const auto schedule = trapcosmo::detuning_schedule(item.model, map, base);
        for (int i = 0; i <= 20; ++i) {
            const double t = item.t_lo + (item.t_hi - item.t_lo) * i / 20.0;
            CHECK(rel_gap(schedule(map.forward(t)), map.scale_factor(t) * base) < 1e-10);
        }
    }
}

TEST_CASE("exponential detuning schedule at the anchor and at the far edge") {
    const double kappa = 0.2;
    const double base = 1.0;
    const double horizon_time = 10.0;
    const auto model = ScaleFactorModel::make_de_sitter(kappa);
    const ConformalMap map = build_conformal_map(model, -1.0, horizon_time + 1.0);
    const auto schedule = trapcosmo::detuning_schedule(model, map, base);
    CHECK(rel_gap(schedule(-1.0 / kappa), base) < 1e-12);
    CHECK(rel_gap(schedule(-std::exp(-kappa * horizon_time) / kappa),
                  base * std::exp(kappa * horizon_time)) < 1e-12);
}

TEST_CASE("window transform carries the dimension-dependent power") {
    const double kappa = 0.3;
    const auto model = ScaleFactorModel::make_de_sitter(kappa);
    const ConformalMap map = build_conformal_map(model, -1.0, 9.0);
    WindowSpec window;
    window.t_init = 0.0;
    window.t_final = 8.0;

    const auto two_dim = trapcosmo::window_transform(window, model, map, 2);
    const auto four_dim = trapcosmo::window_transform(window, model, map, 4);
    for (double t : {0.5, 2.0, 5.0, 7.5}) {
        const double chi = map.forward(t);
        // n = 2: F = a * f = -1/(kappa chi) inside a rectangular window.
        CHECK(rel_gap(two_dim(chi), -1.0 / (kappa * chi)) < 1e-12);
        CHECK(rel_gap(two_dim(chi), map.scale_factor(t) * window.profile(t)) < 1e-12);
        // n = 4: the scale-factor power vanishes.
        CHECK(rel_gap(four_dim(chi), window.profile(t)) < 1e-12);
    }
    CHECK(two_dim(map.forward(8.5)) == 0.0);  // outside the window support
    CHECK_THROWS_AS(trapcosmo::window_transform(window, model, map, 1), trapcosmo::DomainError);
}

TEST_CASE("laser frequency schedule and its modulation span") {
    const double atomic = 1000.0;
    const double base = 1.0;

    const auto flat_model = ScaleFactorModel::make_flat();
    const ConformalMap flat_map = build_conformal_map(flat_model, 0.0, 5.0);
    const auto flat_sched =
        trapcosmo::laser_frequency_schedule(flat_model, flat_map, base, atomic);
    CHECK(flat_sched(2.0) == doctest::Approx(atomic - base).epsilon(1e-15));

    const double kappa = 0.2;
    const double horizon_time = std::log(21.0) / kappa;  // a grows to exactly 21
    const auto model = ScaleFactorModel::make_de_sitter(kappa);
    const ConformalMap map = build_conformal_map(model, 0.0, horizon_time);
    const auto sched = trapcosmo::laser_frequency_schedule(model, map, base, atomic);
    CHECK(rel_gap(sched(map.forward(0.0)), atomic - base) < 1e-12);
    const double span = std::abs(sched(map.forward(0.0)) - sched(map.forward(horizon_time)));
    CHECK(rel_gap(span, 20.0 * base) < 1e-12);
}

TEST_CASE("coupling drift follows the expansion") {
    const double laser_frequency = 1000.0;
    const double base = 1.0;  // detuning / laser frequency = 1e-3
    const double kappa = 0.1;
    const auto model = ScaleFactorModel::make_de_sitter(kappa);

    const double t_for_doubling = std::log(2.0) / kappa;    // a - 1 = 1
    const double t_for_21 = std::log(21.0) / kappa;         // a - 1 = 20
    const ConformalMap map = build_conformal_map(model, 0.0, t_for_21);
    const auto drift = trapcosmo::lamb_dicke_drift(model, map, base, laser_frequency);

    CHECK(rel_gap(drift(map.forward(0.0)), 1.0) < 1e-14);
    CHECK(rel_gap(1.0 - drift(map.forward(t_for_doubling)), 1e-3) < 1e-10);
    CHECK(rel_gap(1.0 - drift(map.forward(t_for_21)), 0.02) < 1e-10);
    CHECK_THROWS_AS(trapcosmo::lamb_dicke_drift(model, map, base, 0.0), trapcosmo::DomainError);
}

}  // TEST_SUITE
