// squidcouple: command-line front end
//
//   squidcouple squid-curves   [--ib-ratios 0,0.4,0.6,0.85] [--points N]
//   squidcouple coupling-sweep [--points N]
//   squidcouple beta-sweep     [--points N] [--beta-min B] [--beta-max B]
//   squidcouple noise          [--points N]
//   squidcouple synthesize     [--no-crosstalk] [--dt NS] [--trace PATH]
//
// Shared flags: --config PATH, --out PATH, --seed N. Data goes to --out or
// stdout; failures print one JSON object on stderr and exit nonzero.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "squidcouple/cli.hpp"
#include "squidcouple/errors.hpp"

using namespace squidcouple;

namespace {

void emit(const std::string& path, const std::string& data)
{
    if (path.empty()) {
        std::cout << data;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << data;
}

struct Common {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed{1};
    int points{0};
};

void add_common(CLI::App* cmd, Common& c, int default_points)
{
    cmd->add_option("--config", c.config_path, "device config JSON (defaults to the built-in reference device)");
    cmd->add_option("--out", c.out_path, "output file (default stdout)");
    cmd->add_option("--seed", c.seed, "seed recorded in the output and used by the optimizer");
    c.points = default_points;
    cmd->add_option("--points", c.points, "number of grid points")->capture_default_str();
}

DeviceConfig load(const Common& c)
{
    return c.config_path.empty() ? DeviceConfig{} : load_device_config(c.config_path);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Flux-qubit pair coupled through a dc SQUID: curves, noise and CNOT synthesis"};
    app.require_subcommand(1);

    Common curves_c, sweep_c, beta_c, noise_c, synth_c;
    std::vector<double> ib_ratios{0.0, 0.4, 0.6, 0.85};
    double phi_min = 0.0, phi_max = 0.5;
    auto* curves = app.add_subcommand("squid-curves", "J versus flux for several bias currents, and Ic");
    add_common(curves, curves_c, 101);
    curves->add_option("--ib-ratios", ib_ratios, "bias currents as fractions of Ic at the operating flux")
        ->delimiter(',');
    curves->add_option("--phi-min", phi_min);
    curves->add_option("--phi-max", phi_max);

    auto* sweep = app.add_subcommand("coupling-sweep", "net coupling versus bias current");
    add_common(sweep, sweep_c, 100);

    double beta_min = 0.01, beta_max = 0.5;
    auto* beta = app.add_subcommand("beta-sweep", "SQUID-mediated coupling at 0.85 Ic versus beta_L");
    add_common(beta, beta_c, 30);
    beta->add_option("--beta-min", beta_min);
    beta->add_option("--beta-max", beta_max);

    auto* noise = app.add_subcommand("noise", "ohmic coupling strength and dephasing estimate");
    add_common(noise, noise_c, 20);

    SynthesizeOptions sopt;
    std::string trace_path;
    bool control2 = false;
    auto* synth = app.add_subcommand("synthesize", "optimize a CNOT pulse sequence");
    add_common(synth, synth_c, 0);
    synth->add_flag("--no-crosstalk", sopt.no_crosstalk, "disable bias and microwave crosstalk");
    synth->add_option("--dt", sopt.dt_report_ns, "report time step, ns")->capture_default_str();
    synth->add_option("--trace", trace_path, "write eps1(t), eps2(t), K(t) CSV here");
    synth->add_flag("--control-qubit2", control2, "target CNOT with qubit 2 as control");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        nlohmann::json j = {{"error", {{"kind", "UsageError"}, {"message", e.what()}}}};
        std::cerr << j.dump() << "\n";
        return 2;
    }

    try {
        if (*curves) {
            emit(curves_c.out_path,
                 cmd_squid_curves(load(curves_c), ib_ratios, curves_c.points, curves_c.seed, phi_min, phi_max));
        } else if (*sweep) {
            emit(sweep_c.out_path, cmd_coupling_sweep(load(sweep_c), sweep_c.points, sweep_c.seed));
        } else if (*beta) {
            emit(beta_c.out_path, cmd_beta_sweep(load(beta_c), beta_c.points, beta_c.seed, beta_min, beta_max));
        } else if (*noise) {
            emit(noise_c.out_path, cmd_noise(load(noise_c), noise_c.points, noise_c.seed));
        } else if (*synth) {
            sopt.seed = synth_c.seed;
            sopt.control_is_qubit1 = !control2;
            const SynthesizeOutput out = cmd_synthesize(load(synth_c), sopt);
            emit(synth_c.out_path, out.json);
            if (!trace_path.empty()) emit(trace_path, out.trace_csv);
        }
    } catch (const std::exception& e) {
        std::cerr << error_json(e);
        return 1;
    }
    return 0;
}
