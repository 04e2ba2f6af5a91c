#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spinlight/gaussian.hpp"
#include "spinlight/numerics.hpp"
#include "spinlight/scattering.hpp"

using namespace spinlight;

namespace {

GaussianState interaction_out(double kappa) {
    return apply_map(vacuum_state(QuadratureLayout::canonical10()),
                     interaction_map({kappa, 350.0}));
}

// Random symplectic built from exact generators: per-mode rotations and
// squeezers plus beamsplitters between adjacent modes.
Eigen::MatrixXd random_symplectic(int n_modes, GaussianRng& rng) {
    const int dim = 2 * n_modes;
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(dim, dim);
    auto rot2 = [](double angle) {
        Eigen::Matrix2d r;
        r << std::cos(angle), std::sin(angle), -std::sin(angle), std::cos(angle);
        return r;
    };
    for (int pass = 0; pass < 3; ++pass) {
        for (int m = 0; m < n_modes; ++m) {
            Eigen::MatrixXd step = Eigen::MatrixXd::Identity(dim, dim);
            Eigen::Matrix2d block = rot2(2.0 * M_PI * rng.uniform());
            double r = 0.4 * (rng.uniform() - 0.5);
            block.row(0) *= std::exp(r);
            block.row(1) *= std::exp(-r);
            step.block<2, 2>(2 * m, 2 * m) = block;
            s = step * s;
        }
        for (int m = 0; m + 1 < n_modes; ++m) {
            Eigen::MatrixXd step = Eigen::MatrixXd::Identity(dim, dim);
            double th = 2.0 * M_PI * rng.uniform();
            double c = std::cos(th), sn = std::sin(th);
            for (int k = 0; k < 2; ++k) {
                step(2 * m + k, 2 * m + k) = c;
                step(2 * m + k, 2 * m + 2 + k) = sn;
                step(2 * m + 2 + k, 2 * m + k) = -sn;
                step(2 * m + 2 + k, 2 * m + 2 + k) = c;
            }
            s = step * s;
        }
    }
    return s;
}

}  // namespace

TEST_CASE("quadrature labels and layout indexing") {
    QuadLabel xc1 = QuadLabel::parse("x_c1");
    CHECK(xc1.mode == "c1");
    CHECK(xc1.kind == Quad::x);
    CHECK(xc1.str() == "x_c1");
    CHECK(QuadLabel::parse("X").mode == "A");
    CHECK(QuadLabel::parse("P").kind == Quad::p);
    CHECK(QuadLabel::parse("P").str() == "P");
    CHECK_THROWS_AS(QuadLabel::parse("bogus"), std::invalid_argument);

    QuadratureLayout layout = QuadratureLayout::canonical10();
    CHECK(layout.dim() == 10);
    CHECK(layout.index(QuadLabel::parse("x_c")) == 2);
    CHECK(layout.index(QuadLabel::parse("p_s1")) == 9);
    CHECK(layout.index_x("A") == 0);
    CHECK_THROWS_AS(layout.mode_index("nope"), std::invalid_argument);
    CHECK_THROWS_AS(QuadratureLayout({"a", "a"}), std::invalid_argument);

    Eigen::MatrixXd form = layout.symplectic_form();
    CHECK(form(0, 1) == 1.0);
    CHECK(form(1, 0) == -1.0);
    CHECK((form + form.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("vacuum state") {
    GaussianState v10 = vacuum_state(QuadratureLayout::canonical10());
    CHECK(v10.mean.isZero(0.0));
    CHECK((v10.cov - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() == 0.0);

    GaussianState v1 = vacuum_state(QuadratureLayout({"m"}));
    CHECK(v1.cov.rows() == 2);
    CHECK((v1.cov - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    for (const auto& mode : v10.layout.modes()) {
        CHECK(entropy_vn(reduce(v10, {mode})) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("apply_map basics") {
    GaussianState v = vacuum_state(QuadratureLayout::canonical10());
    GaussianState same = apply_map(v, LinearMap::identity(10));
    CHECK((same.cov - v.cov).cwiseAbs().maxCoeff() == 0.0);

    GaussianState out = interaction_out(1.0);
    CHECK(out.cov(0, 0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(out.cov(1, 1) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(std::abs(out.cov(0, 1)) < 1e-12);

    // kappa = 0 is the identity, so composing changes nothing.
    GaussianState chained = apply_map(interaction_out(0.0), interaction_map({1.3, 350.0}));
    GaussianState direct = interaction_out(1.3);
    CHECK((chained.cov - direct.cov).cwiseAbs().maxCoeff() < 1e-14);

    GaussianState small = vacuum_state(QuadratureLayout::qnd4());
    CHECK_THROWS_AS(apply_map(small, interaction_map({1.0, 350.0})), std::invalid_argument);
}

TEST_CASE("homodyne conditioning reproduces the conditional variances") {
    GaussianState out = interaction_out(1.0);
    HomodyneSpec spec;
    spec.measured = {{"s", Quad::x}, {"c", Quad::p}, {"c1", Quad::p}};
    spec.traced = {"s1"};
    GaussianState atoms = homodyne_condition(out, spec);
    CHECK(atoms.layout.modes() == std::vector<std::string>{"A"});
    CHECK(atoms.cov(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(atoms.cov(1, 1) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("homodyne conditioning on an uncorrelated mode is a no-op") {
    GaussianState out = interaction_out(0.8);
    // s1 has zero cross-covariance to the atoms after tracing everything else.
    GaussianState before = reduce(out, {"A"});
    HomodyneSpec spec;
    spec.measured = {{"s1", Quad::p}};
    spec.traced = {"c", "s", "c1"};
    GaussianState after = homodyne_condition(out, spec);
    CHECK((after.cov - before.cov).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gamma-limit form agrees with the pseudoinverse form") {
    GaussianState out = interaction_out(1.0);
    HomodyneSpec spec;
    spec.measured = {{"s", Quad::x}, {"c", Quad::p}, {"c1", Quad::p}};
    spec.traced = {"s1"};
    GaussianState direct = homodyne_condition(out, spec);
    GaussianState limit = homodyne_condition_gamma_limit(out, spec, 1e8, 1e8);
    CHECK((direct.cov - limit.cov).cwiseAbs().maxCoeff() < 1e-6);

    // Finite-parameter sweep: the gamma-limit form converges to the
    // pseudoinverse result as the measurement sharpens, error ~ 1/x.
    double prev = 1e300;
    for (double x : {1e2, 1e4, 1e6, 1e8}) {
        GaussianState at_x = homodyne_condition_gamma_limit(out, spec, x, x);
        double dev = (direct.cov - at_x.cov).cwiseAbs().maxCoeff();
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("homodyne conditioning rejects non-commuting measured sets") {
    GaussianState out = interaction_out(1.0);
    HomodyneSpec spec;
    spec.measured = {{"s", Quad::x}, {"s", Quad::p}};
    CHECK_THROWS_AS(homodyne_condition(out, spec), std::invalid_argument);
}

TEST_CASE("conditional covariance is outcome independent, mean is linear") {
    GaussianState out = interaction_out(1.2);
    HomodyneSpec spec;
    spec.measured = {{"s", Quad::x}, {"c", Quad::p}};
    spec.traced = {"c1", "s1"};

    Eigen::VectorXd r1(2), r2(2);
    r1 << 0.7, -0.3;
    r2 << -1.1, 0.2;
    GaussianState s0 = homodyne_condition(out, spec);
    GaussianState s1 = homodyne_condition(out, spec, r1);
    GaussianState s2 = homodyne_condition(out, spec, r2);
    CHECK((s1.cov - s2.cov).cwiseAbs().maxCoeff() == 0.0);
    CHECK(s0.satisfies_uncertainty());
    // Mean response is linear in the outcomes.
    GaussianState s12 = homodyne_condition(out, spec, Eigen::VectorXd(r1 + r2));
    CHECK(((s1.mean + s2.mean) - (s12.mean + s0.mean)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("displace") {
    GaussianState v = vacuum_state(QuadratureLayout({"m"}));
    GaussianState same = displace(v, Eigen::Vector2d(0.0, 0.0));
    CHECK(same.mean.isZero(0.0));

    GaussianState shifted = displace(v, Eigen::Vector2d(0.7, 0.0));
    CHECK(shifted.mean(0) == 0.7);
    CHECK(shifted.mean(1) == 0.0);
    CHECK((shifted.cov - v.cov).cwiseAbs().maxCoeff() == 0.0);

    GaussianState twice = displace(displace(v, Eigen::Vector2d(0.2, -0.4)),
                                   Eigen::Vector2d(0.5, 0.4));
    CHECK(twice.mean(0) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(twice.mean(1) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("reduce") {
    GaussianState v = vacuum_state(QuadratureLayout::canonical10());
    GaussianState sub = reduce(v, {"c", "s1"});
    CHECK(sub.cov.rows() == 4);
    CHECK((sub.cov - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    GaussianState atoms = reduce(interaction_out(1.0), {"A"});
    CHECK(atoms.cov(0, 0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(atoms.cov(1, 1) == doctest::Approx(1.5).epsilon(1e-12));

    GaussianState twice = reduce(reduce(interaction_out(1.0), {"A", "c"}), {"A"});
    CHECK((twice.cov - atoms.cov).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(reduce(v, {"nope"}), std::invalid_argument);
}

TEST_CASE("symplectic eigenvalues") {
    GaussianState v = vacuum_state(QuadratureLayout::canonical10());
    Eigen::VectorXd nus = symplectic_eigenvalues(v);
    CHECK(nus.size() == 5);
    CHECK((nus.array() - 1.0).abs().maxCoeff() < 1e-12);

    GaussianState atoms = reduce(interaction_out(1.0), {"A"});
    CHECK(symplectic_eigenvalues(atoms)(0) == doctest::Approx(1.5).epsilon(1e-12));

    GaussianState qnd = apply_map(vacuum_state(QuadratureLayout::qnd4()), qnd_map(1.0));
    GaussianState qnd_atoms = reduce(qnd, {"A"});
    CHECK(qnd_atoms.cov(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(qnd_atoms.cov(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(symplectic_eigenvalues(qnd_atoms)(0) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    GaussianState bad = v;
    bad.cov *= 0.5;  // below vacuum: unphysical
    CHECK_THROWS_AS(symplectic_eigenvalues(bad), std::runtime_error);
}

TEST_CASE("von Neumann entropy") {
    CHECK(entropy_vn(vacuum_state(QuadratureLayout::canonical10())) ==
          doctest::Approx(0.0).epsilon(1e-12));

    GaussianState atoms = reduce(interaction_out(1.0), {"A"});
    CHECK(entropy_vn(atoms) == doctest::Approx(0.902410118609203).epsilon(1e-10));

    GaussianState qnd_atoms =
        reduce(apply_map(vacuum_state(QuadratureLayout::qnd4()), qnd_map(1.0)), {"A"});
    double qnd_bits = entropy_vn(qnd_atoms);
    CHECK(qnd_bits == doctest::Approx(0.798247926614288).epsilon(1e-10));
    CHECK(qnd_bits < entropy_vn(atoms));
}

TEST_CASE("entropy is invariant under symplectic conjugation") {
    GaussianState out = reduce(interaction_out(1.4), {"A", "c", "s"});
    double before = entropy_vn(out);
    GaussianRng rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        LinearMap map = LinearMap::symplectic_only(random_symplectic(3, rng));
        map.validate();
        CHECK(std::abs(entropy_vn(apply_map(out, map)) - before) < 1e-9);
    }
}

TEST_CASE("entropy grows monotonically with the coupling") {
    double prev = -1.0;
    for (double kappa = 0.0; kappa <= 3.0 + 1e-12; kappa += 0.1) {
        double bits = entropy_vn(reduce(interaction_out(kappa), {"A"}));
        CHECK(bits > prev);
        prev = bits;
    }
}

TEST_CASE("ppt inseparability") {
    GaussianState v = vacuum_state(QuadratureLayout({"a", "b", "c"}));
    PptResult sep = ppt_inseparable(v, {"a"});
    CHECK_FALSE(sep.inseparable);
    CHECK(sep.min_nu == doctest::Approx(1.0).epsilon(1e-9));

    GaussianState three = reduce(interaction_out(1.0), {"A", "c", "s"});
    for (const auto& mode : {"A", "c", "s"}) {
        PptResult res = ppt_inseparable(three, {mode});
        CHECK(res.inseparable);
        CHECK(res.min_nu < 1.0 - 1e-3);
    }

    GaussianState product = reduce(interaction_out(0.0), {"A", "c", "s"});
    for (const auto& mode : {"A", "c", "s"}) {
        CHECK_FALSE(ppt_inseparable(product, {mode}).inseparable);
    }

    CHECK_THROWS_AS(ppt_inseparable(three, {}), std::invalid_argument);
    CHECK_THROWS_AS(ppt_inseparable(three, {"A", "c", "s"}), std::invalid_argument);
}

TEST_CASE("noiseless maps preserve the symplectic form") {
    for (double kappa : {0.0, 0.5, 1.0, 1.64, 2.0, 3.0}) {
        CHECK(LinearMap::symplectic_only(interaction_map({kappa, 350.0}).S)
                  .symplectic_defect() < 1e-10);
        CHECK(LinearMap::symplectic_only(interaction_map_extended(kappa).S)
                  .symplectic_defect() < 1e-10);
        CHECK(qnd_map(kappa).symplectic_defect() < 1e-10);
    }
    Eigen::MatrixXd not_symplectic = 2.0 * Eigen::MatrixXd::Identity(4, 4);
    CHECK_THROWS_AS(LinearMap::symplectic_only(not_symplectic).validate(),
                    std::invalid_argument);
}

TEST_CASE("uncertainty relation holds for conditioned states") {
    for (double kappa : {0.3, 1.0, 2.4}) {
        GaussianState out = interaction_out(kappa);
        HomodyneSpec spec;
        spec.measured = {{"s", Quad::x}, {"c", Quad::p}, {"c1", Quad::p}};
        spec.traced = {"s1"};
        GaussianState atoms = homodyne_condition(out, spec);
        CHECK(atoms.satisfies_uncertainty());
    }
}
