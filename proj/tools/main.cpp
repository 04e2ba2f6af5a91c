#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinlight/run.hpp"

namespace {

using spinlight::RunConfig;

struct RawOptions {
    std::string kappa = "1";
    std::string beta = "0";
    std::string eps = "0";
    double nbar = 4.0;
    double n0 = 350.0;
    int slices = 8192;
    std::int64_t samples = 100000;
    std::int64_t seed = -1;
    std::string out;
    std::string format = "csv";
    std::string config_file;
    spinlight::PhysicalParams physical;
};

void add_common(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--out", raw.out, "output file path");
    cmd->add_option("--format", raw.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--config", raw.config_file, "JSON file overriding flags");
}

void apply_config_file(RawOptions& raw) {
    if (raw.config_file.empty()) return;
    std::ifstream in(raw.config_file);
    if (!in) {
        throw std::invalid_argument("cannot read config file '" + raw.config_file + "'");
    }
    nlohmann::json doc = nlohmann::json::parse(in);
    auto get_grid = [&doc](const char* key, std::string& target) {
        if (!doc.contains(key)) return;
        if (doc[key].is_string()) {
            target = doc[key].get<std::string>();
        } else {
            target.clear();
            for (const auto& v : doc[key]) {
                if (!target.empty()) target += ",";
                target += std::to_string(v.get<double>());
            }
        }
    };
    get_grid("kappa", raw.kappa);
    get_grid("beta", raw.beta);
    get_grid("eps", raw.eps);
    if (doc.contains("nbar")) raw.nbar = doc["nbar"].get<double>();
    if (doc.contains("n0")) raw.n0 = doc["n0"].get<double>();
    if (doc.contains("slices")) raw.slices = doc["slices"].get<int>();
    if (doc.contains("samples")) raw.samples = doc["samples"].get<std::int64_t>();
    if (doc.contains("seed")) raw.seed = doc["seed"].get<std::int64_t>();
    if (doc.contains("out")) raw.out = doc["out"].get<std::string>();
    if (doc.contains("format")) raw.format = doc["format"].get<std::string>();
    if (doc.contains("physical")) {
        const auto& ph = doc["physical"];
        auto grab = [&ph](const char* key, double& target) {
            if (ph.contains(key)) target = ph[key].get<double>();
        };
        grab("atoms", raw.physical.n_atoms);
        grab("photons", raw.physical.n_photons);
        grab("fspin", raw.physical.f_spin);
        grab("a0", raw.physical.a0);
        grab("a1", raw.physical.a1);
        grab("sigma", raw.physical.sigma);
        grab("gamma", raw.physical.gamma_decay);
        grab("delta", raw.physical.delta);
        grab("area", raw.physical.area);
        grab("tpulse", raw.physical.t_pulse);
        grab("omega", raw.physical.omega_larmor);
    }
}

RunConfig to_config(const std::string& subcommand, const RawOptions& raw) {
    RunConfig config;
    config.subcommand = subcommand;
    config.kappa_grid = spinlight::parse_grid(raw.kappa);
    config.beta_grid = spinlight::parse_grid(raw.beta);
    config.eps_grid = spinlight::parse_grid(raw.eps);
    config.n_bar = raw.nbar;
    config.n0 = raw.n0;
    config.n_slices = raw.slices;
    config.mc_samples = raw.samples;
    if (raw.seed >= 0) config.seed = static_cast<std::uint64_t>(raw.seed);
    config.physical = raw.physical;
    config.out_path = raw.out;
    config.format = raw.format == "json" ? spinlight::OutputFormat::json
                                         : spinlight::OutputFormat::csv;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian model of light scattering off a Larmor-precessing atomic "
                 "ensemble: entanglement, teleportation, squeezing and validation sweeps"};
    app.require_subcommand(1);
    RawOptions raw;

    CLI::App* entanglement = app.add_subcommand("entanglement", "entropy vs coupling");
    entanglement->add_option("--kappa", raw.kappa, "coupling grid, start:stop:step or list");
    add_common(entanglement, raw);

    CLI::App* fidelity = app.add_subcommand("fidelity", "ideal fidelity and optimal bound");
    fidelity->add_option("--kappa", raw.kappa, "coupling grid");
    add_common(fidelity, raw);

    CLI::App* noisy = app.add_subcommand("noisy-sweep", "gain-optimized fidelity under noise");
    noisy->add_option("--kappa", raw.kappa, "coupling (single value)");
    noisy->add_option("--beta", raw.beta, "atomic decay grid");
    noisy->add_option("--eps", raw.eps, "photon loss grid");
    noisy->add_option("--nbar", raw.nbar, "mean photon number of the input distribution");
    add_common(noisy, raw);

    CLI::App* squeezing = app.add_subcommand("squeezing", "conditional spin variances");
    squeezing->add_option("--kappa", raw.kappa, "coupling grid");
    add_common(squeezing, raw);

    CLI::App* feasibility = app.add_subcommand("feasibility", "kappa and eta from physics");
    feasibility->add_option("--atoms", raw.physical.n_atoms, "atom number");
    feasibility->add_option("--photons", raw.physical.n_photons, "photon number");
    feasibility->add_option("--fspin", raw.physical.f_spin, "ground-state spin F");
    feasibility->add_option("--a0", raw.physical.a0, "scalar polarizability coefficient");
    feasibility->add_option("--a1", raw.physical.a1, "vector polarizability coefficient");
    feasibility->add_option("--sigma", raw.physical.sigma, "resonant cross section, m^2");
    feasibility->add_option("--gamma", raw.physical.gamma_decay, "decay rate, 1/s");
    feasibility->add_option("--delta", raw.physical.delta, "detuning, 1/s");
    feasibility->add_option("--area", raw.physical.area, "beam cross section, m^2");
    feasibility->add_option("--tpulse", raw.physical.t_pulse, "pulse duration, s");
    feasibility->add_option("--omega", raw.physical.omega_larmor, "Larmor rate, 1/s");
    add_common(feasibility, raw);

    CLI::App* oracle = app.add_subcommand("oracle", "run the validation oracles");
    oracle->add_option("--kappa", raw.kappa, "coupling (single value)");
    oracle->add_option("--n0", raw.n0, "pulse length in Larmor periods");
    oracle->add_option("--slices", raw.slices, "slice count N for the discretized chain");
    oracle->add_option("--samples", raw.samples, "Monte-Carlo sample count");
    oracle->add_option("--seed", raw.seed, "RNG seed (required)");
    add_common(oracle, raw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : 1;
    }

    try {
        apply_config_file(raw);
        return spinlight::execute(to_config(app.get_subcommands().front()->get_name(), raw));
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
