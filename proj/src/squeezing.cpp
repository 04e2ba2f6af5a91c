#include "spinlight/squeezing.hpp"

#include <cmath>
#include <stdexcept>

#include "spinlight/scattering.hpp"

namespace spinlight {

std::vector<QuadLabel> default_measured_set(ReadoutTarget target) {
    if (target == ReadoutTarget::X) {
        return {{"s", Quad::x}, {"c", Quad::p}, {"c1", Quad::p}};
    }
    return {{"c", Quad::x}, {"s", Quad::p}, {"s1", Quad::p}};
}

ReadoutSpec make_readout_spec(ReadoutTarget target, std::optional<Eigen::Vector3d> outcomes) {
    return ReadoutSpec{target, default_measured_set(target), std::move(outcomes)};
}

ReadoutResult readout_condition(double kappa, const ReadoutSpec& spec) {
    if (kappa < 0.0) {
        throw std::invalid_argument("kappa must be nonnegative");
    }
    if (spec.measured_set.size() != 3) {
        throw std::invalid_argument("readout measures exactly three quadratures");
    }
    QuadratureLayout layout = QuadratureLayout::canonical10();
    GaussianState out = apply_map(vacuum_state(layout), interaction_map({kappa, 350.0}));

    HomodyneSpec homodyne;
    homodyne.measured = spec.measured_set;
    std::vector<std::string> measured_modes;
    for (const auto& label : spec.measured_set) measured_modes.push_back(label.mode);
    for (const auto& mode : layout.modes()) {
        if (mode == "A") continue;
        bool used = false;
        for (const auto& m : measured_modes) used = used || (m == mode);
        if (!used) homodyne.traced.push_back(mode);
    }

    GaussianState atoms = homodyne_condition(out, homodyne);
    ReadoutResult res;
    res.conditional_var_x = 0.5 * atoms.cov(0, 0);
    res.conditional_var_p = 0.5 * atoms.cov(1, 1);
    if (spec.outcomes) {
        if (spec.measured_set != default_measured_set(spec.target)) {
            throw std::invalid_argument(
                "mean estimation is defined for the canonical measured set");
        }
        Eigen::Vector3d oc = *spec.outcomes;
        if (spec.target == ReadoutTarget::X) {
            res.estimated_mean = estimate_spin_mean(kappa, oc);
        } else {
            // P sits in x_c^out with coefficient +kappa/sqrt2.
            const double b = 0.25 * kappa * kappa;
            const double c = b / std::sqrt(3.0);
            if (kappa == 0.0) throw std::invalid_argument("kappa = 0 carries no signal");
            res.estimated_mean = std::sqrt(2.0) / kappa * (oc(0) - b * oc(1) - c * oc(2));
        }
    }
    return res;
}

SqueezingFactors squeezing_factor_closed_form(double kappa) {
    if (kappa < 0.0) {
        throw std::invalid_argument("kappa must be nonnegative");
    }
    const double k2 = kappa * kappa;
    return {2.0 / (2.0 + k2), (2.0 + k2) / 2.0};
}

double qnd_squeezing_factor(double kappa) {
    if (kappa < 0.0) {
        throw std::invalid_argument("kappa must be nonnegative");
    }
    return 1.0 / (1.0 + kappa * kappa);
}

double qnd_squeezing_factor_conditioned(double kappa) {
    GaussianState out = apply_map(vacuum_state(QuadratureLayout::qnd4()), qnd_map(kappa));
    HomodyneSpec spec;
    spec.measured = {{"L", Quad::x}};  // x_L' = x_L + kappa P reads the atomic P
    GaussianState atoms = homodyne_condition(out, spec);
    return atoms.cov(1, 1);  // conditional gamma_PP relative to vacuum 1
}

Eigen::Vector3d spin_estimator_coefficients(double kappa) {
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("kappa must be positive: kappa = 0 carries no signal");
    }
    const double b = 0.25 * kappa * kappa;
    const double c = b / std::sqrt(3.0);
    return -std::sqrt(2.0) / kappa * Eigen::Vector3d(1.0, b, c);
}

double estimate_spin_mean(double kappa, const Eigen::Vector3d& outcomes) {
    return spin_estimator_coefficients(kappa).dot(outcomes);
}

}  // namespace spinlight
