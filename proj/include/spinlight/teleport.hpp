#pragma once

#include <cstdint>

#include "spinlight/gaussian.hpp"

namespace spinlight {

/// Coherent amplitude to be teleported, in dimensionless quadrature units.
struct CoherentInput {
    double mean_y = 0.0;
    double mean_q = 0.0;
};

struct NoiseParams {
    double beta = 0.0;     // atomic transverse decay in [0,1)
    double epsilon = 0.0;  // photon loss in [0,1)
};

struct Gains {
    double g_x = 1.0;
    double g_q = 1.0;
};

struct NoisyOptions {
    /// The decay model damps the atomic state once during the interaction and
    /// once more between scattering and feedback. Setting this to false drops
    /// the second stage, for sensitivity analysis of that reading.
    bool storage_decay_stage = true;
};

struct TeleportationResult {
    Eigen::Vector2d final_mean;  // (<X>, <P>)
    Eigen::Vector2d final_var;   // physical convention, vacuum = 1/2
    double fidelity = 0.0;
};

/// Two-mode Gaussian state of the upper-sideband input: cosine and sine
/// modulation modes (y_c,q_c), (y_s,q_s) with identity covariance and means
/// chosen so y = (y_s+q_c)/sqrt2 and q = -(y_c-q_s)/sqrt2 reproduce the
/// requested amplitude while the orthogonal lower-sideband mode stays empty.
GaussianState encode_input(const CoherentInput& input);

/// Balanced beamsplitter combining the scattered cosine/sine modes with the
/// input modulation modes, plus the homodyne pattern measuring
///   xt_c=(x_c+y_c)/sqrt2, qt_c=(p_c-q_c)/sqrt2, and the sine counterparts.
struct BellSetup {
    LinearMap map;                // 14x14, symplectic
    QuadratureLayout in_layout;   // canonical10 + input modes
    QuadratureLayout out_layout;  // sum/difference ports
    HomodyneSpec spec;            // measured order: xt_c, qt_c, xt_s, qt_s
};
BellSetup bell_measure_map();

/// Ideal protocol at unit gain; means map identically and the variance is the
/// closed-form sum over the independent input modes.
TeleportationResult teleport_closed_form(double kappa, const CoherentInput& input);

/// Same protocol assembled from the Gaussian pieces: 14-mode state,
/// interaction, Bell splitter, homodyne conditioning, affine feedback. Agrees
/// with the closed form to numerical precision; kept as a cross-check path.
TeleportationResult teleport_pipeline(double kappa, const CoherentInput& input);

/// Protocol with transverse atomic decay beta (interaction stage and, by
/// default, a second storage stage), photon loss epsilon on each measured
/// channel, and feedback gains. All Langevin terms are independent with
/// vacuum variance.
TeleportationResult teleport_noisy(double kappa, const NoiseParams& noise, const Gains& gains,
                                   const CoherentInput& input, const NoisyOptions& opts = {});

/// Overlap fidelity of a coherent input with a Gaussian state of the given
/// means and physical variances.
double fidelity_coherent(const Eigen::Vector2d& final_mean, const Eigen::Vector2d& final_var,
                         const CoherentInput& input);

/// Fidelity averaged over coherent amplitudes drawn from the isotropic
/// Gaussian with mean photon number n_bar. Closed form of the 2d integral.
double average_fidelity_gaussian(double kappa, const NoiseParams& noise, const Gains& gains,
                                 double n_bar, const NoisyOptions& opts = {});

/// Deterministic gain optimization: 41x41 grid on [0,2]^2 followed by
/// Nelder-Mead refinement of the average fidelity.
Gains optimize_gains(double kappa, const NoiseParams& noise, double n_bar,
                     const NoisyOptions& opts = {});

/// Best classical (measure-and-prepare) average fidelity, (1+n)/(1+2n).
double classical_benchmark(double n_bar);

/// Fidelity a two-mode squeezed resource of the given entanglement entropy
/// (bits) would reach: solve E(r), return 1/(1+exp(-2r)). This is the optimal
/// frontier at fixed entanglement.
double tms_benchmark_fidelity(double entropy_bits);

struct McMoments {
    Eigen::Vector2d mean;
    Eigen::Matrix2d cov;  // physical convention
    Eigen::Vector2d mean_standard_error;
    Eigen::Vector2d var_standard_error;
    std::int64_t n_samples = 0;
};

/// Samples Bell outcomes from their Gaussian law, conditions, applies the
/// per-sample feedback displacement and accumulates the empirical final
/// atomic moments. Validates that the deterministic affine-update treatment
/// of feedback is exact.
McMoments monte_carlo_feedback(double kappa, const CoherentInput& input, std::int64_t n_samples,
                               std::uint64_t seed);

}  // namespace spinlight
