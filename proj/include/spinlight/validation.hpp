#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinlight/teleport.hpp"

namespace spinlight {

/// One validation check: an independently computed quantity compared with the
/// model prediction. `deviation <= tolerance` decides `pass`.
struct OracleCheck {
    std::string name;
    bool pass = false;
    double deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct OracleConfig {
    double n0 = 350.0;
    int n_slices = 8192;
    double kappa = 1.0;
    std::int64_t mc_samples = 100000;
    std::uint64_t seed = 1;
};

struct OracleReport {
    std::vector<OracleCheck> checks;
    bool all_pass() const;
};

/// Slice-chain covariance versus the analytic transform extended by the
/// second-order modes, entrywise.
OracleCheck check_slice_chain(double n0, int n_slices, double kappa);
/// Doubling the slice count must shrink the maximal deviation.
OracleCheck check_slice_chain_convergence(double n0, int n_slices, double kappa);
/// Discretized mode-function Gram/commutator defects, bound 5/n0.
OracleCheck check_mode_algebra(double n0, int n_slices);
/// Squared norm of projected outputs beyond the retained modes, bound (k/2)^6.
OracleCheck check_slice_residual(double n0, int n_slices, double kappa);
/// Pipeline vs closed-form teleportation over a kappa grid, bound 1e-10.
OracleCheck check_pipeline_equivalence();
/// Monte-Carlo feedback vs closed form, bound 5 standard errors.
OracleCheck check_mc_feedback(double kappa, std::int64_t n_samples, std::uint64_t seed);
/// Closed-form Gaussian-averaged fidelity vs 2d Gauss-Hermite quadrature on a
/// 27-point (beta, epsilon, n_bar) grid, bound 1e-6.
OracleCheck check_average_fidelity_quadrature();
/// Homodyne conditioning: Moore-Penrose form vs the finite-parameter
/// Gamma-limit form evaluated at x = n = 1e8, bound 1e-6.
OracleCheck check_gamma_limit();

OracleReport run_all_oracles(const OracleConfig& config);

/// The quadrature reference itself, exposed for tests: average fidelity by
/// 2d Gauss-Hermite integration of the pointwise fidelity.
double average_fidelity_quadrature(double kappa, const NoiseParams& noise, const Gains& gains,
                                   double n_bar, int nodes = 64);

}  // namespace spinlight
