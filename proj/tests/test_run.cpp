#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spinlight/gaussian.hpp"
#include "spinlight/run.hpp"
#include "spinlight/scattering.hpp"
#include "spinlight/teleport.hpp"

using namespace spinlight;

TEST_CASE("grid parsing") {
    std::vector<double> range = parse_grid("0:3:0.5");
    REQUIRE(range.size() == 7);
    CHECK(range.front() == 0.0);
    CHECK(range.back() == doctest::Approx(3.0).epsilon(1e-14));

    // End point inclusive also when the step does not divide evenly within
    // a rounding slack.
    std::vector<double> uneven = parse_grid("0:1:0.1");
    CHECK(uneven.size() == 11);
    CHECK(uneven.back() == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> list = parse_grid("0.08,0.12,0.16");
    REQUIRE(list.size() == 3);
    CHECK(list[1] == 0.12);

    CHECK(parse_grid("0.96").size() == 1);

    CHECK_THROWS_AS(parse_grid(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("1:0:0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0:1:-0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("a,b"), std::invalid_argument);
}

TEST_CASE("entanglement table values match the model") {
    RunConfig config;
    config.subcommand = "entanglement";
    config.kappa_grid = parse_grid("0:2:0.5");
    std::string table;
    REQUIRE(execute_to_string(config, table) == 0);

    std::stringstream ss(table);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "kappa,nu,entropy_bits,entropy_qnd_bits");

    std::string line;
    int rows = 0;
    while (std::getline(ss, line)) {
        double kappa, nu, bits, qnd_bits;
        char comma;
        std::stringstream row(line);
        row >> kappa >> comma >> nu >> comma >> bits >> comma >> qnd_bits;
        CHECK(nu == doctest::Approx(1.0 + 0.5 * kappa * kappa).epsilon(1e-10));
        GaussianState atoms = reduce(apply_map(vacuum_state(QuadratureLayout::canonical10()),
                                               interaction_map({kappa, 350.0})),
                                     {"A"});
        CHECK(bits == doctest::Approx(entropy_vn(atoms)).epsilon(1e-10));
        if (kappa > 0.0) CHECK(bits > qnd_bits);
        ++rows;
    }
    CHECK(rows == 5);
}

TEST_CASE("fidelity table carries the paper anchor point") {
    RunConfig config;
    config.subcommand = "fidelity";
    config.kappa_grid = {1.64};
    std::string table;
    REQUIRE(execute_to_string(config, table) == 0);
    std::stringstream ss(table);
    std::string header, line;
    std::getline(ss, header);
    CHECK(header == "kappa,entropy_bits,F_ours,F_tms");
    std::getline(ss, line);
    std::stringstream row(line);
    double kappa, bits, ours, tms;
    char comma;
    row >> kappa >> comma >> bits >> comma >> ours >> comma >> tms;
    CHECK(std::abs(ours - 0.77) < 0.005);
    CHECK(tms >= ours);
}

TEST_CASE("golden file: entanglement on a tiny grid") {
    RunConfig config;
    config.subcommand = "entanglement";
    config.kappa_grid = parse_grid("0:1:0.5");
    std::string out;
    REQUIRE(execute_to_string(config, out) == 0);
    CHECK(out ==
          "kappa,nu,entropy_bits,entropy_qnd_bits\n"
          "0,1,0,0\n"
          "0.5,1.125,0.342929268828,0.328558167561\n"
          "1,1.5,0.902410118609,0.798247926614\n");
}

TEST_CASE("identical config gives identical bytes") {
    RunConfig config;
    config.subcommand = "noisy-sweep";
    config.kappa_grid = {0.96};
    config.beta_grid = parse_grid("0:0.1:0.05");
    config.eps_grid = {0.08, 0.16};
    config.n_bar = 4.0;
    std::string first, second;
    REQUIRE(execute_to_string(config, first) == 0);
    REQUIRE(execute_to_string(config, second) == 0);
    CHECK(first == second);
    CHECK(first.substr(0, first.find('\n')) == "beta,eps,F_avg,g_x_opt,g_q_opt,benchmark");
}

TEST_CASE("json output carries rows and meta") {
    RunConfig config;
    config.subcommand = "squeezing";
    config.kappa_grid = parse_grid("0:1:0.5");
    config.format = OutputFormat::json;
    std::string out;
    REQUIRE(execute_to_string(config, out) == 0);
    nlohmann::json doc = nlohmann::json::parse(out);
    CHECK(doc.contains("meta"));
    CHECK(doc["meta"]["subcommand"] == "squeezing");
    REQUIRE(doc["rows"].size() == 3);
    CHECK(doc["rows"][2]["factor_squeezed"].get<double>() ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("feasibility subcommand") {
    RunConfig config;
    config.subcommand = "feasibility";
    config.physical.n_atoms = 1e12;
    config.physical.n_photons = 2.5e13;
    config.physical.f_spin = 4.0;
    config.physical.a0 = 0.89;
    config.physical.a1 = 0.37;
    config.physical.sigma = 1.0e-14;
    config.physical.gamma_decay = 3.28e7;
    config.physical.delta = 1.0e9;
    config.physical.area = 6.0e-4;
    config.physical.t_pulse = 1.0e-3;
    config.physical.omega_larmor = 2.2e6;
    std::string out;
    REQUIRE(execute_to_string(config, out) == 0);
    std::stringstream ss(out);
    std::string header, line;
    std::getline(ss, header);
    CHECK(header == "kappa,eta,n0,detuning_warning");
    std::getline(ss, line);
    double kappa = std::stod(line);
    CHECK(kappa == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("unknown subcommand is a usage error") {
    RunConfig config;
    config.subcommand = "frobnicate";
    std::string out;
    CHECK(execute_to_string(config, out) == 1);
}

TEST_CASE("oracle passes at the default configuration") {
    RunConfig config;
    config.subcommand = "oracle";
    config.seed = 1;  // defaults elsewhere: n0=350, N=8192, kappa=1, 1e5 samples
    config.format = OutputFormat::json;
    std::string out;
    CHECK(execute_to_string(config, out) == 0);
    nlohmann::json doc = nlohmann::json::parse(out);
    CHECK(doc["all_pass"].get<bool>());
    CHECK(doc["checks"].size() == 8);
}

TEST_CASE("oracle subcommand fails cleanly on a too-coarse slicing") {
    RunConfig config;
    config.subcommand = "oracle";
    config.n_slices = 64;  // hopeless at n0 = 350
    config.n0 = 350.0;
    config.mc_samples = 2000;
    config.seed = 5;
    config.format = OutputFormat::json;
    std::string out;
    CHECK(execute_to_string(config, out) == 2);
    nlohmann::json doc = nlohmann::json::parse(out);
    CHECK_FALSE(doc["all_pass"].get<bool>());
    bool found = false;
    for (const auto& check : doc["checks"]) {
        if (check["name"] == "slice_chain_vs_analytic") {
            found = true;
            CHECK_FALSE(check["pass"].get<bool>());
        }
    }
    CHECK(found);
}

TEST_CASE("oracle requires a seed") {
    RunConfig config;
    config.subcommand = "oracle";
    config.seed.reset();
    std::string out;
    CHECK(execute_to_string(config, out) == 1);
}

TEST_CASE("oracle reports are byte-identical under a fixed seed") {
    RunConfig config;
    config.subcommand = "oracle";
    config.n0 = 20.0;
    config.n_slices = 512;
    config.mc_samples = 2000;
    config.seed = 9;
    config.format = OutputFormat::json;
    std::string first, second;
    int code1 = execute_to_string(config, first);
    int code2 = execute_to_string(config, second);
    CHECK(code1 == code2);
    CHECK(first == second);
}

TEST_CASE("output path resolution honors the environment variable") {
    RunConfig config;
    config.subcommand = "entanglement";
    config.kappa_grid = {1.0};
    setenv(kOutputDirEnvVar, "/tmp/spinlight_test_out", 1);
    REQUIRE(system("mkdir -p /tmp/spinlight_test_out") == 0);
    std::string table, path;
    REQUIRE(execute_to_string(config, table, &path) == 0);
    CHECK(path == "/tmp/spinlight_test_out/entanglement.csv");

    REQUIRE(execute(config) == 0);
    std::ifstream file(path);
    REQUIRE(file.good());
    std::stringstream content;
    content << file.rdbuf();
    CHECK(content.str() == table);
    unsetenv(kOutputDirEnvVar);

    config.out_path = "/tmp/spinlight_explicit.csv";
    std::string explicit_path;
    REQUIRE(execute_to_string(config, table, &explicit_path) == 0);
    CHECK(explicit_path == "/tmp/spinlight_explicit.csv");
}
