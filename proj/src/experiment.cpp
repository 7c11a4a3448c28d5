#include "trapcosmo/experiment.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <map>
#include <sstream>

#include "json.hpp"

#include "trapcosmo/errors.hpp"

namespace trapcosmo {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_real(const std::string& value, const std::string& key, int line) {
    if (!value.empty()) {
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (end == value.c_str() + value.size() && std::isfinite(v))
            return v;
    }
    throw ConfigError("type-mismatch: key " + key + " expects a finite real, got '" +
                      value + "'", line);
}

int parse_int(const std::string& value, const std::string& key, int line) {
    if (!value.empty()) {
        char* end = nullptr;
        const long v = std::strtol(value.c_str(), &end, 10);
        if (end == value.c_str() + value.size() && v >= INT_MIN && v <= INT_MAX)
            return static_cast<int>(v);
    }
    throw ConfigError("type-mismatch: key " + key + " expects an integer, got '" +
                      value + "'", line);
}

[[noreturn]] void enum_mismatch(const std::string& key, const std::string& value,
                                const char* allowed, int line) {
    throw ConfigError("type-mismatch: key " + key + " expects one of {" + allowed +
                      "}, got '" + value + "'", line);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream stream(s);
    while (std::getline(stream, item, sep))
        out.push_back(trim(item));
    if (!s.empty() && s.back() == sep)
        out.push_back("");
    return out;
}

constexpr ResponseMethod kMethodOrder[3] = {
    ResponseMethod::numeric,
    ResponseMethod::analytic_infinite,
    ResponseMethod::analytic_finite,
};

const char* to_string(ScaleFactorKind kind) {
    switch (kind) {
        case ScaleFactorKind::flat: return "flat";
        case ScaleFactorKind::de_sitter: return "de_sitter";
        case ScaleFactorKind::power_law: return "power_law";
        case ScaleFactorKind::tabulated: return "tabulated";
    }
    return "?";
}

const char* to_string(WindowShape shape) {
    return shape == WindowShape::rectangular ? "rectangular" : "tukey";
}

const char* to_string(OutputFormat format) {
    return format == OutputFormat::csv ? "csv" : "json";
}

std::string table_to_string(const std::vector<std::pair<double, double>>& table) {
    std::string out;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (i)
            out += ',';
        out += fmt17(table[i].first);
        out += ':';
        out += fmt17(table[i].second);
    }
    return out;
}

std::string sanitize_cell(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n' || c == '\r')
            c = ';';
    }
    return s;
}

// Tracks where each key was last set, for error attribution.
struct KeyLines {
    std::map<std::string, int> lines;
    int of(const std::string& key) const {
        const auto it = lines.find(key);
        return it == lines.end() ? 0 : it->second;
    }
};

[[noreturn]] void violation(const std::string& message, const std::string& key,
                            const KeyLines& kl) {
    throw ConfigError("invariant-violation: " + message + " (key " + key + ")", kl.of(key));
}

void validate_config(const ExperimentConfig& c, const KeyLines& kl) {
    if (c.chain.n_ions < 2 || c.chain.n_ions > 32)
        violation("n_ions must be in [2, 32]", "chain.n_ions", kl);
    if (!(c.chain.trap_frequency > 0.0))
        violation("trap frequency must be positive", "physical.trap_frequency_hz", kl);
    if (!(c.chain.ion_mass > 0.0))
        violation("ion mass must be positive", "physical.ion_mass_kg", kl);
    if (!(c.physical.laser_wavenumber > 0.0))
        violation("laser wavenumber must be positive", "physical.laser_wavenumber_inv_m", kl);
    if (!(c.physical.atomic_frequency > 0.0))
        violation("atomic frequency must be positive", "physical.atomic_frequency_hz", kl);

    if (c.detector.ion_index < 1 || c.detector.ion_index > c.chain.n_ions)
        violation("ion_index must be in [1, n_ions]", "detector.ion_index", kl);
    if (c.detector.detuning == 0.0)
        violation("detuning must be nonzero", "detector.detuning", kl);
    if (!(c.detector.coupling > 0.0))
        violation("coupling must be positive", "detector.coupling", kl);
    if (c.detector.n_dim < 2)
        violation("n_dim must be >= 2", "detector.n_dim", kl);

    const WindowSpec& w = c.detector.window;
    if (!(w.t_final > w.t_init))
        violation("t_final must exceed t_init", "window.t_final", kl);
    if (w.shape == WindowShape::rectangular && w.ramp_fraction != 0.0)
        violation("rectangular window requires ramp_fraction = 0", "window.ramp_fraction", kl);
    if (w.ramp_fraction < 0.0 || w.ramp_fraction > 0.5)
        violation("ramp_fraction must lie in [0, 0.5]", "window.ramp_fraction", kl);

    switch (c.cosmology.kind) {
        case ScaleFactorKind::flat:
            break;
        case ScaleFactorKind::de_sitter:
            if (!(c.cosmology.kappa > 0.0))
                violation("de_sitter requires kappa > 0", "cosmology.kappa", kl);
            break;
        case ScaleFactorKind::power_law:
            if (!(w.t_init > 0.0))
                violation("power_law window requires t_init > 0", "window.t_init", kl);
            break;
        case ScaleFactorKind::tabulated: {
            if (c.cosmology.table.size() < 2)
                violation("tabulated requires >= 2 samples", "cosmology.table", kl);
            for (std::size_t i = 0; i < c.cosmology.table.size(); ++i) {
                if (!(c.cosmology.table[i].second > 0.0))
                    violation("tabulated scale factor must be positive", "cosmology.table", kl);
                if (i > 0 && !(c.cosmology.table[i].first > c.cosmology.table[i - 1].first))
                    violation("tabulated times must be strictly ascending", "cosmology.table", kl);
            }
            if (w.t_init < c.cosmology.table.front().first ||
                w.t_final > c.cosmology.table.back().first)
                violation("window must lie inside the tabulated time range", "window.t_init", kl);
            break;
        }
    }

    if (c.sweep_count < 1)
        violation("count must be >= 1", "sweep.count", kl);
    if (c.sweep_count > 1 && !(c.sweep_min < c.sweep_max))
        violation("min must be below max when count > 1", "sweep.min", kl);
    if (c.log_spacing && !(c.sweep_min > 0.0))
        violation("log spacing requires min > 0", "sweep.spacing", kl);
    if (c.axis == SweepAxis::kappa && c.cosmology.kind != ScaleFactorKind::de_sitter)
        violation("kappa axis requires a de_sitter cosmology", "sweep.axis", kl);

    if (c.methods.empty())
        violation("at least one method required", "sweep.methods", kl);
    const bool analytic =
        std::find(c.methods.begin(), c.methods.end(), ResponseMethod::analytic_infinite) !=
            c.methods.end() ||
        std::find(c.methods.begin(), c.methods.end(), ResponseMethod::analytic_finite) !=
            c.methods.end();
    if (analytic && c.cosmology.kind != ScaleFactorKind::de_sitter)
        violation("analytic methods require a de_sitter cosmology", "sweep.methods", kl);
    if (analytic && c.detector.n_dim != 2)
        violation("analytic methods require n_dim = 2", "sweep.methods", kl);
}

std::vector<double> sweep_grid(const ExperimentConfig& c) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(c.sweep_count));
    if (c.sweep_count == 1) {
        values.push_back(c.sweep_min);
        return values;
    }
    for (int i = 0; i < c.sweep_count; ++i) {
        if (i == 0) {
            values.push_back(c.sweep_min);
        } else if (i == c.sweep_count - 1) {
            values.push_back(c.sweep_max);
        } else if (c.log_spacing) {
            const double f = static_cast<double>(i) / (c.sweep_count - 1);
            values.push_back(std::exp(std::log(c.sweep_min) +
                                      f * (std::log(c.sweep_max) - std::log(c.sweep_min))));
        } else {
            const double f = static_cast<double>(i) / (c.sweep_count - 1);
            values.push_back(c.sweep_min + f * (c.sweep_max - c.sweep_min));
        }
    }
    return values;
}

bool requests(const ExperimentConfig& c, ResponseMethod m) {
    return std::find(c.methods.begin(), c.methods.end(), m) != c.methods.end();
}

}  // namespace

const char* to_string(ResponseMethod method) {
    switch (method) {
        case ResponseMethod::numeric: return "numeric";
        case ResponseMethod::analytic_infinite: return "analytic_infinite";
        case ResponseMethod::analytic_finite: return "analytic_finite";
    }
    return "?";
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::detuning: return "detuning";
        case SweepAxis::kappa: return "kappa";
        case SweepAxis::t_final: return "t_final";
    }
    return "?";
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig c;
    KeyLines kl;
    bool ramp_set = false;
    bool min_set = false;
    bool max_set = false;

    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", line_no);
        std::string key = trim(line.substr(0, eq));
        if (key == "n_ions")  // accepted shorthand for the chain size
            key = "chain.n_ions";
        const std::string value = trim(line.substr(eq + 1));
        kl.lines[key] = line_no;

        if (key == "chain.n_ions") {
            c.chain.n_ions = parse_int(value, key, line_no);
        } else if (key == "physical.trap_frequency_hz") {
            c.chain.trap_frequency = parse_real(value, key, line_no);
        } else if (key == "physical.ion_mass_kg") {
            c.chain.ion_mass = parse_real(value, key, line_no);
        } else if (key == "physical.laser_wavenumber_inv_m") {
            c.physical.laser_wavenumber = parse_real(value, key, line_no);
        } else if (key == "physical.laser_angle_rad") {
            c.physical.laser_angle = parse_real(value, key, line_no);
        } else if (key == "physical.atomic_frequency_hz") {
            c.physical.atomic_frequency = parse_real(value, key, line_no);
        } else if (key == "detector.ion_index") {
            c.detector.ion_index = parse_int(value, key, line_no);
        } else if (key == "detector.detuning") {
            c.detector.detuning = parse_real(value, key, line_no);
        } else if (key == "detector.coupling") {
            c.detector.coupling = parse_real(value, key, line_no);
        } else if (key == "detector.n_dim") {
            c.detector.n_dim = parse_int(value, key, line_no);
        } else if (key == "window.t_init") {
            c.detector.window.t_init = parse_real(value, key, line_no);
        } else if (key == "window.t_final") {
            c.detector.window.t_final = parse_real(value, key, line_no);
        } else if (key == "window.shape") {
            if (value == "rectangular")
                c.detector.window.shape = WindowShape::rectangular;
            else if (value == "tukey")
                c.detector.window.shape = WindowShape::tukey;
            else
                enum_mismatch(key, value, "rectangular, tukey", line_no);
        } else if (key == "window.ramp_fraction") {
            c.detector.window.ramp_fraction = parse_real(value, key, line_no);
            ramp_set = true;
        } else if (key == "cosmology.kind") {
            if (value == "flat")
                c.cosmology.kind = ScaleFactorKind::flat;
            else if (value == "de_sitter")
                c.cosmology.kind = ScaleFactorKind::de_sitter;
            else if (value == "power_law")
                c.cosmology.kind = ScaleFactorKind::power_law;
            else if (value == "tabulated")
                c.cosmology.kind = ScaleFactorKind::tabulated;
            else
                enum_mismatch(key, value, "flat, de_sitter, power_law, tabulated", line_no);
        } else if (key == "cosmology.kappa") {
            c.cosmology.kappa = parse_real(value, key, line_no);
        } else if (key == "cosmology.exponent") {
            c.cosmology.exponent = parse_real(value, key, line_no);
        } else if (key == "cosmology.table") {
            c.cosmology.table.clear();
            for (const std::string& pair_text : split(value, ',')) {
                const auto colon = pair_text.find(':');
                if (colon == std::string::npos)
                    throw ConfigError("type-mismatch: key " + key +
                                      " expects 't:a' pairs separated by commas", line_no);
                c.cosmology.table.emplace_back(
                    parse_real(trim(pair_text.substr(0, colon)), key, line_no),
                    parse_real(trim(pair_text.substr(colon + 1)), key, line_no));
            }
        } else if (key == "sweep.axis") {
            if (value == "detuning")
                c.axis = SweepAxis::detuning;
            else if (value == "kappa")
                c.axis = SweepAxis::kappa;
            else if (value == "t_final")
                c.axis = SweepAxis::t_final;
            else
                enum_mismatch(key, value, "detuning, kappa, t_final", line_no);
        } else if (key == "sweep.min") {
            c.sweep_min = parse_real(value, key, line_no);
            min_set = true;
        } else if (key == "sweep.max") {
            c.sweep_max = parse_real(value, key, line_no);
            max_set = true;
        } else if (key == "sweep.count") {
            c.sweep_count = parse_int(value, key, line_no);
        } else if (key == "sweep.spacing") {
            if (value == "linear")
                c.log_spacing = false;
            else if (value == "log")
                c.log_spacing = true;
            else
                enum_mismatch(key, value, "linear, log", line_no);
        } else if (key == "sweep.methods") {
            c.methods.clear();
            for (const std::string& name : split(value, ',')) {
                if (name == "numeric")
                    c.methods.push_back(ResponseMethod::numeric);
                else if (name == "analytic_infinite")
                    c.methods.push_back(ResponseMethod::analytic_infinite);
                else if (name == "analytic_finite")
                    c.methods.push_back(ResponseMethod::analytic_finite);
                else
                    enum_mismatch(key, name, "numeric, analytic_infinite, analytic_finite",
                                  line_no);
            }
            // Canonical order and uniqueness keep emission deterministic.
            std::vector<ResponseMethod> normalized;
            for (ResponseMethod m : kMethodOrder)
                if (std::find(c.methods.begin(), c.methods.end(), m) != c.methods.end())
                    normalized.push_back(m);
            c.methods = std::move(normalized);
        } else if (key == "output.path") {
            c.output_path = value;
        } else if (key == "output.format") {
            if (value == "csv")
                c.format = OutputFormat::csv;
            else if (value == "json")
                c.format = OutputFormat::json;
            else
                enum_mismatch(key, value, "csv, json", line_no);
        } else {
            throw ConfigError("unknown-key: " + key, line_no);
        }
    }

    if (c.detector.window.shape == WindowShape::tukey && !ramp_set)
        c.detector.window.ramp_fraction = 0.05;
    if (!min_set)
        c.sweep_min = c.detector.detuning;
    if (!max_set)
        c.sweep_max = c.detector.detuning;

    validate_config(c, kl);
    return c;
}

std::string emit_config(const ExperimentConfig& c) {
    std::string out;
    auto put = [&out](const std::string& key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    put("chain.n_ions", std::to_string(c.chain.n_ions));
    put("physical.trap_frequency_hz", fmt17(c.chain.trap_frequency));
    put("physical.ion_mass_kg", fmt17(c.chain.ion_mass));
    put("physical.laser_wavenumber_inv_m", fmt17(c.physical.laser_wavenumber));
    put("physical.laser_angle_rad", fmt17(c.physical.laser_angle));
    put("physical.atomic_frequency_hz", fmt17(c.physical.atomic_frequency));
    put("detector.ion_index", std::to_string(c.detector.ion_index));
    put("detector.detuning", fmt17(c.detector.detuning));
    put("detector.coupling", fmt17(c.detector.coupling));
    put("detector.n_dim", std::to_string(c.detector.n_dim));
    put("window.t_init", fmt17(c.detector.window.t_init));
    put("window.t_final", fmt17(c.detector.window.t_final));
    put("window.shape", to_string(c.detector.window.shape));
    put("window.ramp_fraction", fmt17(c.detector.window.ramp_fraction));
    put("cosmology.kind", to_string(c.cosmology.kind));
    put("cosmology.kappa", fmt17(c.cosmology.kappa));
    put("cosmology.exponent", fmt17(c.cosmology.exponent));
    if (!c.cosmology.table.empty())
        put("cosmology.table", table_to_string(c.cosmology.table));
    put("sweep.axis", to_string(c.axis));
    put("sweep.min", fmt17(c.sweep_min));
    put("sweep.max", fmt17(c.sweep_max));
    put("sweep.count", std::to_string(c.sweep_count));
    put("sweep.spacing", c.log_spacing ? "log" : "linear");
    std::string methods;
    for (std::size_t i = 0; i < c.methods.size(); ++i) {
        if (i)
            methods += ',';
        methods += to_string(c.methods[i]);
    }
    put("sweep.methods", methods);
    put("output.path", c.output_path);
    put("output.format", to_string(c.format));
    return out;
}

SweepResult run_sweep(const ExperimentConfig& config, const QuadratureSettings& settings) {
    SweepResult result;
    result.config = config;
    result.generated_at_unix = static_cast<long long>(std::time(nullptr));

    const NormalModes modes = normal_modes(config.chain);

    for (double v : sweep_grid(config)) {
        SweepRow row;
        row.axis_value = v;
        ExperimentConfig c = config;
        switch (config.axis) {
            case SweepAxis::detuning: c.detector.detuning = v; break;
            case SweepAxis::kappa: c.cosmology.kappa = v; break;
            case SweepAxis::t_final: c.detector.window.t_final = v; break;
        }
        const WindowSpec& w = c.detector.window;

        auto note_failure = [&row](const std::string& what, const std::exception& e) {
            const std::string entry = what + ": " + e.what();
            if (row.status == "ok")
                row.status = entry;
            else
                row.status += "; " + entry;
        };

        for (ResponseMethod m : kMethodOrder) {
            if (!requests(c, m))
                continue;
            try {
                switch (m) {
                    case ResponseMethod::numeric: {
                        const ConformalMap map =
                            build_conformal_map(c.cosmology, w.t_init, w.t_final);
                        row.numeric =
                            response_numeric(modes, c.detector, c.cosmology, map, settings);
                        break;
                    }
                    case ResponseMethod::analytic_infinite:
                        row.analytic_infinite =
                            response_desitter_infinite(modes, c.detector, c.cosmology.kappa);
                        break;
                    case ResponseMethod::analytic_finite:
                        row.analytic_finite = response_desitter_finite(
                            modes, c.detector, c.cosmology.kappa, w.t_init, w.t_final);
                        break;
                }
            } catch (const std::exception& e) {
                note_failure(to_string(m), e);
            }
        }

        if (row.numeric && row.analytic_finite &&
            c.cosmology.kind == ScaleFactorKind::de_sitter) {
            const double den = std::max(std::abs(row.analytic_finite->total), 1e-300);
            row.gap_numeric_analytic_finite =
                std::abs(row.numeric->total - row.analytic_finite->total) / den;
        }
        if (c.cosmology.kind == ScaleFactorKind::de_sitter &&
            requests(c, ResponseMethod::analytic_finite)) {
            try {
                row.ratio_red_blue = ratio_signature(modes, c.detector, c.cosmology.kappa,
                                                     w.t_init, w.t_final);
            } catch (const std::exception& e) {
                note_failure("ratio_red_blue", e);
            }
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

namespace {

std::string emit_csv(const SweepResult& result) {
    const ExperimentConfig& c = result.config;
    const int n = c.chain.n_ions;
    std::string out;

    out += to_string(c.axis);
    for (ResponseMethod m : kMethodOrder) {
        if (!requests(c, m))
            continue;
        const std::string name = to_string(m);
        out += "," + name + "_total";
        for (int p = 1; p <= n; ++p)
            out += "," + name + "_mode_" + std::to_string(p);
        out += "," + name + "_error";
    }
    out += ",gap_numeric_analytic_finite,ratio_red_blue,status\n";

    for (const SweepRow& row : result.rows) {
        out += fmt17(row.axis_value);
        for (ResponseMethod m : kMethodOrder) {
            if (!requests(c, m))
                continue;
            const std::optional<ResponseResult>* slot = nullptr;
            switch (m) {
                case ResponseMethod::numeric: slot = &row.numeric; break;
                case ResponseMethod::analytic_infinite: slot = &row.analytic_infinite; break;
                case ResponseMethod::analytic_finite: slot = &row.analytic_finite; break;
            }
            if (slot->has_value()) {
                const ResponseResult& r = **slot;
                out += "," + fmt17(r.total);
                for (double x : r.per_mode)
                    out += "," + fmt17(x);
                out += "," + fmt17(r.quadrature_error);
            } else {
                for (int k = 0; k < n + 2; ++k)
                    out += ",";
            }
        }
        out += ",";
        if (row.gap_numeric_analytic_finite)
            out += fmt17(*row.gap_numeric_analytic_finite);
        out += ",";
        if (row.ratio_red_blue)
            out += fmt17(*row.ratio_red_blue);
        out += "," + sanitize_cell(row.status) + "\n";
    }
    return out;
}

ordered_json config_to_json(const ExperimentConfig& c) {
    ordered_json j;
    j["chain.n_ions"] = c.chain.n_ions;
    j["physical.trap_frequency_hz"] = c.chain.trap_frequency;
    j["physical.ion_mass_kg"] = c.chain.ion_mass;
    j["physical.laser_wavenumber_inv_m"] = c.physical.laser_wavenumber;
    j["physical.laser_angle_rad"] = c.physical.laser_angle;
    j["physical.atomic_frequency_hz"] = c.physical.atomic_frequency;
    j["detector.ion_index"] = c.detector.ion_index;
    j["detector.detuning"] = c.detector.detuning;
    j["detector.coupling"] = c.detector.coupling;
    j["detector.n_dim"] = c.detector.n_dim;
    j["window.t_init"] = c.detector.window.t_init;
    j["window.t_final"] = c.detector.window.t_final;
    j["window.shape"] = to_string(c.detector.window.shape);
    j["window.ramp_fraction"] = c.detector.window.ramp_fraction;
    j["cosmology.kind"] = to_string(c.cosmology.kind);
    j["cosmology.kappa"] = c.cosmology.kappa;
    j["cosmology.exponent"] = c.cosmology.exponent;
    if (!c.cosmology.table.empty())
        j["cosmology.table"] = table_to_string(c.cosmology.table);
    j["sweep.axis"] = to_string(c.axis);
    j["sweep.min"] = c.sweep_min;
    j["sweep.max"] = c.sweep_max;
    j["sweep.count"] = c.sweep_count;
    j["sweep.spacing"] = c.log_spacing ? "log" : "linear";
    std::string methods;
    for (std::size_t i = 0; i < c.methods.size(); ++i) {
        if (i)
            methods += ',';
        methods += to_string(c.methods[i]);
    }
    j["sweep.methods"] = methods;
    j["output.path"] = c.output_path;
    j["output.format"] = to_string(c.format);
    return j;
}

ordered_json response_to_json(const ResponseResult& r) {
    ordered_json j;
    j["total"] = r.total;
    j["per_mode"] = r.per_mode;
    j["quadrature_error"] = r.quadrature_error;
    return j;
}

std::string emit_json(const SweepResult& result) {
    const ExperimentConfig& c = result.config;
    ordered_json j;
    j["metadata"]["version"] = result.version;
    j["metadata"]["axis"] = to_string(c.axis);
    j["metadata"]["config"] = config_to_json(c);
    if (c.cosmology.kind == ScaleFactorKind::de_sitter)
        j["metadata"]["gibbons_hawking_temperature"] =
            gibbons_hawking_temperature(c.cosmology.kappa);
    if (c.detector.n_dim != 2)
        j["metadata"]["detector_picture_extension"] = true;

    j["rows"] = ordered_json::array();
    for (const SweepRow& row : result.rows) {
        ordered_json rj;
        rj["axis_value"] = row.axis_value;
        for (ResponseMethod m : kMethodOrder) {
            if (!requests(c, m))
                continue;
            const std::optional<ResponseResult>* slot = nullptr;
            switch (m) {
                case ResponseMethod::numeric: slot = &row.numeric; break;
                case ResponseMethod::analytic_infinite: slot = &row.analytic_infinite; break;
                case ResponseMethod::analytic_finite: slot = &row.analytic_finite; break;
            }
            rj[to_string(m)] = slot->has_value() ? response_to_json(**slot) : ordered_json();
        }
        rj["gap_numeric_analytic_finite"] = row.gap_numeric_analytic_finite
                                                ? ordered_json(*row.gap_numeric_analytic_finite)
                                                : ordered_json();
        rj["ratio_red_blue"] =
            row.ratio_red_blue ? ordered_json(*row.ratio_red_blue) : ordered_json();
        rj["status"] = row.status;
        j["rows"].push_back(std::move(rj));
    }
    return j.dump(2) + "\n";
}

}  // namespace

std::string emit(const SweepResult& result, OutputFormat format) {
    return format == OutputFormat::csv ? emit_csv(result) : emit_json(result);
}

}  // namespace trapcosmo
