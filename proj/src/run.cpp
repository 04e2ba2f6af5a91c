#include "spinlight/run.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spinlight/squeezing.hpp"
#include "spinlight/teleport.hpp"
#include "spinlight/validation.hpp"

namespace spinlight {

std::vector<double> parse_grid(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("empty grid specification");
    }
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double start, stop, step;
        char extra;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra) != 3 ||
            !(step > 0.0)) {
            throw std::invalid_argument("bad range '" + text + "', expected start:stop:step");
        }
        if (stop < start) {
            throw std::invalid_argument("range stop below start in '" + text + "'");
        }
        for (int i = 0;; ++i) {
            double v = start + i * step;
            if (v > stop + 1e-12) break;
            values.push_back(std::min(v, stop));
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t used = 0;
            double v = std::stod(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument("bad number '" + item + "' in grid");
            }
            values.push_back(v);
        }
    }
    if (values.empty()) {
        throw std::invalid_argument("grid '" + text + "' is empty");
    }
    return values;
}

namespace {

using Row = std::vector<double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string to_csv(const Table& table) {
    std::string out;
    for (size_t i = 0; i < table.columns.size(); ++i) {
        out += table.columns[i];
        out += (i + 1 < table.columns.size()) ? ',' : '\n';
    }
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            out += format_value(row[i]);
            out += (i + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

nlohmann::json config_meta(const RunConfig& config) {
    nlohmann::json meta;
    meta["subcommand"] = config.subcommand;
    meta["kappa"] = config.kappa_grid;
    meta["beta"] = config.beta_grid;
    meta["eps"] = config.eps_grid;
    meta["nbar"] = config.n_bar;
    meta["n0"] = config.n0;
    meta["slices"] = config.n_slices;
    meta["mc_samples"] = config.mc_samples;
    if (config.seed) meta["seed"] = *config.seed;
    return meta;
}

std::string to_json(const Table& table, const RunConfig& config) {
    nlohmann::json doc;
    doc["meta"] = config_meta(config);
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj;
        for (size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
        doc["rows"].push_back(obj);
    }
    return doc.dump(2) + "\n";
}

double atoms_entropy(const LinearMap& map, const QuadratureLayout& layout) {
    GaussianState out = apply_map(vacuum_state(layout), map);
    return entropy_vn(reduce(out, {"A"}));
}

Table run_entanglement(const RunConfig& config) {
    Table t{{"kappa", "nu", "entropy_bits", "entropy_qnd_bits"}, {}};
    for (double kappa : config.kappa_grid) {
        GaussianState out = apply_map(vacuum_state(QuadratureLayout::canonical10()),
                                      interaction_map({kappa, config.n0}));
        GaussianState atoms = reduce(out, {"A"});
        double nu = symplectic_eigenvalues(atoms)(0);
        double bits = entropy_vn(atoms);
        double qnd_bits = atoms_entropy(qnd_map(kappa), QuadratureLayout::qnd4());
        t.rows.push_back({kappa, nu, bits, qnd_bits});
    }
    return t;
}

Table run_fidelity(const RunConfig& config) {
    Table t{{"kappa", "entropy_bits", "F_ours", "F_tms"}, {}};
    for (double kappa : config.kappa_grid) {
        double bits = atoms_entropy(interaction_map({kappa, config.n0}),
                                    QuadratureLayout::canonical10());
        double ours = teleport_closed_form(kappa, {0.0, 0.0}).fidelity;
        t.rows.push_back({kappa, bits, ours, tms_benchmark_fidelity(bits)});
    }
    return t;
}

Table run_noisy_sweep(const RunConfig& config) {
    Table t{{"beta", "eps", "F_avg", "g_x_opt", "g_q_opt", "benchmark"}, {}};
    const double kappa = config.kappa_grid.front();
    const double bench = classical_benchmark(config.n_bar);
    for (double beta : config.beta_grid) {
        for (double eps : config.eps_grid) {
            Gains gains = optimize_gains(kappa, {beta, eps}, config.n_bar);
            double f_avg = average_fidelity_gaussian(kappa, {beta, eps}, gains, config.n_bar);
            t.rows.push_back({beta, eps, f_avg, gains.g_x, gains.g_q, bench});
        }
    }
    return t;
}

Table run_squeezing(const RunConfig& config) {
    Table t{{"kappa", "factor_squeezed", "factor_antisqueezed", "var_x_cond", "var_p_cond",
             "qnd_factor"},
            {}};
    for (double kappa : config.kappa_grid) {
        SqueezingFactors factors = squeezing_factor_closed_form(kappa);
        ReadoutResult readout = readout_condition(kappa, make_readout_spec(ReadoutTarget::X));
        t.rows.push_back({kappa, factors.squeezed, factors.antisqueezed,
                          readout.conditional_var_x, readout.conditional_var_p,
                          qnd_squeezing_factor(kappa)});
    }
    return t;
}

Table run_feasibility(const RunConfig& config) {
    Table t{{"kappa", "eta", "n0", "detuning_warning"}, {}};
    CouplingResult res = coupling_from_physical(config.physical);
    double pulse_periods =
        config.physical.omega_larmor * config.physical.t_pulse / (2.0 * M_PI);
    t.rows.push_back({res.kappa, res.eta, pulse_periods, res.detuning_warning ? 1.0 : 0.0});
    return t;
}

std::string resolve_out_path(const RunConfig& config) {
    if (!config.out_path.empty()) {
        return config.out_path;
    }
    std::string name =
        config.subcommand + (config.format == OutputFormat::csv ? ".csv" : ".json");
    const char* dir = std::getenv(kOutputDirEnvVar);
    if (dir != nullptr && dir[0] != '\0') {
        return std::string(dir) + "/" + name;
    }
    return name;
}

std::string oracle_report_string(const OracleReport& report, const RunConfig& config) {
    if (config.format == OutputFormat::json) {
        nlohmann::json doc;
        doc["meta"] = config_meta(config);
        doc["all_pass"] = report.all_pass();
        doc["checks"] = nlohmann::json::array();
        for (const auto& c : report.checks) {
            nlohmann::json obj;
            obj["name"] = c.name;
            obj["pass"] = c.pass;
            obj["deviation"] = c.deviation;
            obj["tolerance"] = c.tolerance;
            obj["detail"] = c.detail;
            doc["checks"].push_back(obj);
        }
        return doc.dump(2) + "\n";
    }
    std::string out = "name,pass,deviation,tolerance,detail\n";
    for (const auto& c : report.checks) {
        out += c.name + "," + (c.pass ? "1" : "0") + "," + format_value(c.deviation) + "," +
               format_value(c.tolerance) + "," + c.detail + "\n";
    }
    return out;
}

}  // namespace

int execute_to_string(const RunConfig& config, std::string& table_out,
                      std::string* resolved_path) {
    try {
        if (resolved_path != nullptr) {
            *resolved_path = resolve_out_path(config);
        }
        bool oracle_failed = false;
        if (config.subcommand == "entanglement") {
            Table t = run_entanglement(config);
            table_out = config.format == OutputFormat::csv ? to_csv(t) : to_json(t, config);
        } else if (config.subcommand == "fidelity") {
            Table t = run_fidelity(config);
            table_out = config.format == OutputFormat::csv ? to_csv(t) : to_json(t, config);
        } else if (config.subcommand == "noisy-sweep") {
            Table t = run_noisy_sweep(config);
            table_out = config.format == OutputFormat::csv ? to_csv(t) : to_json(t, config);
        } else if (config.subcommand == "squeezing") {
            Table t = run_squeezing(config);
            table_out = config.format == OutputFormat::csv ? to_csv(t) : to_json(t, config);
        } else if (config.subcommand == "feasibility") {
            Table t = run_feasibility(config);
            table_out = config.format == OutputFormat::csv ? to_csv(t) : to_json(t, config);
        } else if (config.subcommand == "oracle") {
            if (!config.seed) {
                throw std::invalid_argument("oracle subcommand requires a seed");
            }
            OracleConfig oc{config.n0, config.n_slices, config.kappa_grid.front(),
                            config.mc_samples, *config.seed};
            OracleReport report = run_all_oracles(oc);
            table_out = oracle_report_string(report, config);
            oracle_failed = !report.all_pass();
        } else {
            throw std::invalid_argument("unknown subcommand '" + config.subcommand + "'");
        }
        return oracle_failed ? 2 : 0;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}

int execute(const RunConfig& config) {
    std::string table;
    std::string path;
    int code = execute_to_string(config, table, &path);
    if (code == 1) {
        return 1;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot write output file '" << path << "'\n";
        return 1;
    }
    file << table;
    file.close();
    std::cout << config.subcommand << ": wrote " << path << "\n";
    return code;
}

}  // namespace spinlight
