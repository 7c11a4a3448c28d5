#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trapcosmo/cosmo.hpp"
#include "trapcosmo/detector.hpp"
#include "trapcosmo/ionchain.hpp"

namespace trapcosmo {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { csv, json };
enum class SweepAxis { detuning, kappa, t_final };

// Laser parameters in SI units; they feed only the Lamb-Dicke report and the
// laser-frequency schedule, never the dimensionless response.
struct PhysicalParams {
    double laser_wavenumber = 8.6193203873450394e6;  // 1/m
    double laser_angle = 0.0;                        // rad
    double atomic_frequency = 4.1115503899297856e14; // Hz

    bool operator==(const PhysicalParams&) const = default;
};

struct ExperimentConfig {
    IonChainConfig chain;
    PhysicalParams physical;
    DetectorSpec detector;          // includes the window
    ScaleFactorModel cosmology;
    SweepAxis axis = SweepAxis::detuning;
    double sweep_min = 1.0;
    double sweep_max = 1.0;
    int sweep_count = 1;
    bool log_spacing = false;
    std::vector<ResponseMethod> methods = {ResponseMethod::numeric};
    std::string output_path;        // empty means stdout
    OutputFormat format = OutputFormat::csv;

    bool operator==(const ExperimentConfig&) const = default;
};

// Parse the flat key = value configuration format ('#' comments, dotted
// prefixes). Unknown keys, type mismatches, and violated invariants raise
// ConfigError carrying the offending line.
ExperimentConfig parse_config(const std::string& text);

// Canonical serialization: every key in fixed order, 17 significant digits.
// parse_config(emit_config(c)) == c for any valid c.
std::string emit_config(const ExperimentConfig& config);

struct SweepRow {
    double axis_value = 0.0;
    std::optional<ResponseResult> numeric;
    std::optional<ResponseResult> analytic_infinite;
    std::optional<ResponseResult> analytic_finite;
    std::optional<double> gap_numeric_analytic_finite;  // relative gap of totals
    std::optional<double> ratio_red_blue;               // finite-window asymmetry
    std::string status = "ok";  // "ok" or the first per-method failure
};

struct SweepResult {
    ExperimentConfig config;
    std::string version = kVersion;
    long long generated_at_unix = 0;  // informational; never serialized
    std::vector<SweepRow> rows;
};

// One row per grid point; per-point failures are recorded in the row status
// without aborting the sweep.
SweepResult run_sweep(const ExperimentConfig& config,
                      const QuadratureSettings& settings = {});

// Deterministic CSV or JSON bytes: fixed column order, 17 significant digits,
// LF line endings, stable key order. Identical inputs give identical bytes.
std::string emit(const SweepResult& result, OutputFormat format);

const char* to_string(ResponseMethod method);
const char* to_string(SweepAxis axis);

}  // namespace trapcosmo
