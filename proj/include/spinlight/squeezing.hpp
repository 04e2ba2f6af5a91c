#pragma once

#include <optional>
#include <vector>

#include "spinlight/gaussian.hpp"

namespace spinlight {

enum class ReadoutTarget { X, P };

/// Which three commuting light quadratures to homodyne, and optionally their
/// outcomes. default_measured_set picks the combination that squeezes the
/// requested spin component: {x_s, p_c, p_c1} for X, {x_c, p_s, p_s1} for P.
struct ReadoutSpec {
    ReadoutTarget target = ReadoutTarget::X;
    std::vector<QuadLabel> measured_set;
    std::optional<Eigen::Vector3d> outcomes;
};

std::vector<QuadLabel> default_measured_set(ReadoutTarget target);
ReadoutSpec make_readout_spec(ReadoutTarget target,
                              std::optional<Eigen::Vector3d> outcomes = std::nullopt);

struct ReadoutResult {
    double conditional_var_x = 0.0;  // physical convention, vacuum 1/2
    double conditional_var_p = 0.0;
    std::optional<double> estimated_mean;  // set when outcomes were supplied
};

/// Scatter a vacuum pulse off the ensemble at coupling kappa, homodyne the
/// quadratures in the spec, trace the rest, and return the conditional atomic
/// variances. With outcomes supplied, also the closed-form mean estimate for
/// the target component (canonical measured set only).
ReadoutResult readout_condition(double kappa, const ReadoutSpec& spec);

struct SqueezingFactors {
    double squeezed = 1.0;      // 2/(2+kappa^2), multiplies the input variance
    double antisqueezed = 1.0;  // (2+kappa^2)/2
};
SqueezingFactors squeezing_factor_closed_form(double kappa);

/// Zero-field baseline: variance reduction 1/(1+kappa^2) from a QND probe of
/// the same coupling.
double qnd_squeezing_factor(double kappa);
/// Same number obtained by actually conditioning the qnd_map output.
double qnd_squeezing_factor_conditioned(double kappa);

/// Coefficients of the unbiased linear estimate of <X> from the outcomes of
/// {x_s, p_c, p_c1}: -(sqrt2/kappa) * (1, (kappa/2)^2, (1/sqrt3)(kappa/2)^2).
Eigen::Vector3d spin_estimator_coefficients(double kappa);

/// The estimate itself; expectation equals <X> over the outcome distribution.
double estimate_spin_mean(double kappa, const Eigen::Vector3d& outcomes);

}  // namespace spinlight
