// Command line front end: normal-mode tables, conformal-map tables, single
// response points, parameter sweeps, and a numeric-vs-closed-form self test.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "trapcosmo/cosmo.hpp"
#include "trapcosmo/detector.hpp"
#include "trapcosmo/errors.hpp"
#include "trapcosmo/experiment.hpp"
#include "trapcosmo/ionchain.hpp"

namespace tc = trapcosmo;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw tc::IoError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw tc::IoError("read failed: " + path);
    return buffer.str();
}

// Empty path means stdout.
void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw tc::IoError("cannot open file for writing: " + path);
    out << text;
    out.flush();
    if (!out)
        throw tc::IoError("write failed: " + path);
}

int run_modes(const tc::ExperimentConfig& cfg, const std::string& output_path,
              tc::OutputFormat format) {
    const tc::NormalModes modes = tc::normal_modes(cfg.chain);
    const double eta = tc::lamb_dicke(cfg.physical.laser_wavenumber,
                                      cfg.physical.laser_angle, cfg.chain);
    const int n = modes.n();
    std::string text;
    if (format == tc::OutputFormat::csv) {
        text += "# n_ions = " + std::to_string(n) + "\n";
        text += "# lamb_dicke = " + fmt17(eta) + "\n";
        text += "# equilibrium_positions =";
        for (double x : modes.equilibrium_positions)
            text += " " + fmt17(x);
        text += "\n";
        text += "mode,eigenvalue,frequency";
        for (int m = 1; m <= n; ++m)
            text += ",b_ion_" + std::to_string(m);
        text += "\n";
        for (int p = 0; p < n; ++p) {
            text += std::to_string(p + 1);
            text += "," + fmt17(modes.eigenvalues_mu[static_cast<std::size_t>(p)]);
            text += "," + fmt17(modes.frequencies[static_cast<std::size_t>(p)]);
            for (int m = 0; m < n; ++m)
                text += "," + fmt17(modes.b(m, p));
            text += "\n";
        }
    } else {
        ordered_json j;
        j["n_ions"] = n;
        j["lamb_dicke"] = eta;
        j["equilibrium_positions"] = modes.equilibrium_positions;
        j["modes"] = ordered_json::array();
        for (int p = 0; p < n; ++p) {
            ordered_json mj;
            mj["index"] = p + 1;
            mj["eigenvalue"] = modes.eigenvalues_mu[static_cast<std::size_t>(p)];
            mj["frequency"] = modes.frequencies[static_cast<std::size_t>(p)];
            std::vector<double> b(static_cast<std::size_t>(n));
            for (int m = 0; m < n; ++m)
                b[static_cast<std::size_t>(m)] = modes.b(m, p);
            mj["b"] = b;
            j["modes"].push_back(std::move(mj));
        }
        text = j.dump(2) + "\n";
    }
    write_output(output_path, text);
    return 0;
}

int run_conformal(const tc::ExperimentConfig& cfg, const std::string& output_path,
                  tc::OutputFormat format, int samples) {
    const tc::WindowSpec& w = cfg.detector.window;
    const tc::ConformalMap map =
        tc::build_conformal_map(cfg.cosmology, w.t_init, w.t_final);
    std::string text;
    if (format == tc::OutputFormat::csv)
        text += "t,chi,scale_factor,dchi_dt\n";
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < samples; ++i) {
        const double f = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
        const double t = w.t_init + f * (w.t_final - w.t_init);
        const double chi = map.forward(t);
        const double a = map.scale_factor(t);
        const double d = map.derivative(t);
        if (format == tc::OutputFormat::csv) {
            text += fmt17(t) + "," + fmt17(chi) + "," + fmt17(a) + "," + fmt17(d) + "\n";
        } else {
            ordered_json rj;
            rj["t"] = t;
            rj["chi"] = chi;
            rj["scale_factor"] = a;
            rj["dchi_dt"] = d;
            rows.push_back(std::move(rj));
        }
    }
    if (format == tc::OutputFormat::json) {
        ordered_json j;
        j["metadata"]["t_min"] = map.t_min();
        j["metadata"]["t_max"] = map.t_max();
        j["metadata"]["chi_min"] = map.chi_min();
        j["metadata"]["chi_max"] = map.chi_max();
        j["rows"] = std::move(rows);
        text = j.dump(2) + "\n";
    }
    write_output(output_path, text);
    return 0;
}

int run_sweep_cmd(const tc::ExperimentConfig& cfg, const std::string& output_path,
                  tc::OutputFormat format, const tc::QuadratureSettings& settings) {
    const tc::SweepResult result = tc::run_sweep(cfg, settings);
    const std::string text = tc::emit(result, format);
    std::string path = output_path.empty() ? cfg.output_path : output_path;
    write_output(path, text);
    return 0;
}

int run_selftest(double match_tol, const std::string& output_path) {
    tc::IonChainConfig chain;
    chain.n_ions = 3;
    const tc::NormalModes modes = tc::normal_modes(chain);

    std::string report;
    int total = 0;
    int failures = 0;
    for (double kappa : {0.05, 0.2, 0.5}) {
        for (double detuning : {0.5, -0.5, 1.0, -1.0, 2.0, -2.0}) {
            for (double spans : {2.0, 5.0, 10.0}) {
                tc::DetectorSpec spec;
                spec.ion_index = 1;
                spec.detuning = detuning;
                spec.coupling = 1.0;
                spec.n_dim = 2;
                spec.window.t_init = 0.0;
                spec.window.t_final = spans / kappa;
                spec.window.shape = tc::WindowShape::rectangular;
                spec.window.ramp_fraction = 0.0;

                const auto model = tc::ScaleFactorModel::make_de_sitter(kappa);
                const auto map =
                    tc::build_conformal_map(model, 0.0, spec.window.t_final);
                const auto numeric =
                    tc::response_numeric(modes, spec, model, map, {});
                const auto closed = tc::response_desitter_finite(
                    modes, spec, kappa, 0.0, spec.window.t_final);
                const double gap = std::abs(numeric.total - closed.total) /
                                   std::max(std::abs(closed.total), 1e-300);
                const bool ok = gap <= match_tol;
                ++total;
                failures += ok ? 0 : 1;
                char line[256];
                std::snprintf(line, sizeof line,
                              "kappa=%-5g detuning=%-5g horizon_spans=%-3g "
                              "numeric=%.9e closed_form=%.9e gap=%.3e %s\n",
                              kappa, detuning, spans, numeric.total, closed.total,
                              gap, ok ? "ok" : "FAIL");
                report += line;
            }
        }
    }
    char summary[128];
    std::snprintf(summary, sizeof summary,
                  "selftest: %d/%d points within relative tolerance %g\n",
                  total - failures, total, match_tol);
    report += summary;
    write_output(output_path, report);
    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trapped-ion detector response in expanding backgrounds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tc::kVersion));

    std::string config_path;
    std::string output_path;
    std::string format_name;
    double tolerance = 0.0;
    int samples = 129;

    CLI::App* modes_cmd = app.add_subcommand("modes", "normal-mode table for the ion chain");
    CLI::App* conformal_cmd =
        app.add_subcommand("conformal", "conformal time map over the drive window");
    CLI::App* response_cmd =
        app.add_subcommand("response", "excitation response at the configured detuning");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "response sweep along the configured axis");
    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "compare numeric and closed-form exponential responses");

    for (CLI::App* cmd : {modes_cmd, conformal_cmd, response_cmd, sweep_cmd}) {
        cmd->add_option("--config", config_path, "configuration file")->required();
        cmd->add_option("--output", output_path, "output file (default stdout)");
        cmd->add_option("--format", format_name, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    }
    conformal_cmd->add_option("--samples", samples, "table rows")->check(CLI::PositiveNumber);
    CLI::Option* tol_opt =
        response_cmd->add_option("--tolerance", tolerance, "quadrature relative tolerance");
    CLI::Option* sweep_tol_opt =
        sweep_cmd->add_option("--tolerance", tolerance, "quadrature relative tolerance");
    selftest_cmd->add_option("--output", output_path, "output file (default stdout)");
    CLI::Option* self_tol_opt =
        selftest_cmd->add_option("--tolerance", tolerance, "match tolerance (default 1e-5)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (selftest_cmd->parsed()) {
            const double match_tol = self_tol_opt->count() ? tolerance : 1e-5;
            return run_selftest(match_tol, output_path);
        }

        const tc::ExperimentConfig cfg = tc::parse_config(read_file(config_path));
        tc::OutputFormat format = cfg.format;
        if (format_name == "csv")
            format = tc::OutputFormat::csv;
        else if (format_name == "json")
            format = tc::OutputFormat::json;

        tc::QuadratureSettings settings;
        if ((response_cmd->parsed() && tol_opt->count()) ||
            (sweep_cmd->parsed() && sweep_tol_opt->count()))
            settings.rel_tol = tolerance;

        if (modes_cmd->parsed())
            return run_modes(cfg, output_path, format);
        if (conformal_cmd->parsed())
            return run_conformal(cfg, output_path, format, samples);
        if (response_cmd->parsed()) {
            tc::ExperimentConfig single = cfg;
            single.axis = tc::SweepAxis::detuning;
            single.sweep_min = cfg.detector.detuning;
            single.sweep_max = cfg.detector.detuning;
            single.sweep_count = 1;
            return run_sweep_cmd(single, output_path, format, settings);
        }
        return run_sweep_cmd(cfg, output_path, format, settings);
    } catch (const tc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const tc::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const tc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
