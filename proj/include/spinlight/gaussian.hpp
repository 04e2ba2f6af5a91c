#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinlight/layout.hpp"

namespace spinlight {

/// Tolerances shared by the state/map validity checks.
namespace tol {
inline constexpr double symplectic = 1e-10;   // ||S W S^T - W||_inf
inline constexpr double psd_rel = 1e-9;       // min eig >= -psd_rel * max eig
inline constexpr double nu_pairing = 1e-9;    // symplectic eigenvalue dedup
inline constexpr double pinv_rel = 1e-12;     // pseudoinverse cutoff
}  // namespace tol

/// Gaussian state over a quadrature layout. The covariance convention is
/// gamma_ij = tr{rho (R_i R_j + R_j R_i)} with zero-mean R, so vacuum has
/// gamma = identity and a physical variance of 1/2 corresponds to a diagonal
/// entry of 1.
struct GaussianState {
    QuadratureLayout layout;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;

    /// Throws if cov is not symmetric PSD of the right dimension.
    void validate() const;
    /// True if cov + i*Omega >= 0 within tolerance (Heisenberg uncertainty).
    bool satisfies_uncertainty(double slack = tol::psd_rel) const;
};

/// Affine Gaussian channel: mean -> S mean + displacement,
/// cov -> S cov S^T + noise. S may be rectangular (2M_out x 2M_in); reduction
/// and measurement-plus-feedback extractions are rectangular instances.
struct LinearMap {
    Eigen::MatrixXd S;
    Eigen::MatrixXd noise;         // symmetric PSD, 2M_out x 2M_out
    Eigen::VectorXd displacement;  // length 2M_out

    static LinearMap identity(int dim);
    /// S only; noise = 0, displacement = 0.
    static LinearMap symplectic_only(Eigen::MatrixXd s);

    /// ||S W_in S^T - W_out||_inf where the forms follow the row/column count.
    double symplectic_defect() const;
    /// Noiseless maps must preserve the symplectic form; throws otherwise.
    void validate() const;
};

/// Homodyne measurement pattern: one measured quadrature per measured mode
/// (the set must be commuting, which the one-per-mode rule guarantees), plus
/// modes that are simply traced out. Kept modes are everything else.
struct HomodyneSpec {
    std::vector<QuadLabel> measured;
    std::vector<std::string> traced;
};

GaussianState vacuum_state(const QuadratureLayout& layout);

GaussianState apply_map(const GaussianState& state, const LinearMap& map);
/// Rectangular maps change the layout; the caller names the output modes.
GaussianState apply_map(const GaussianState& state, const LinearMap& map,
                        const QuadratureLayout& out_layout);

GaussianState displace(const GaussianState& state, const Eigen::VectorXd& deltas);

GaussianState reduce(const GaussianState& state, const std::vector<std::string>& kept_modes);

/// Everything homodyne conditioning produces, for callers that need the
/// outcome statistics as well as the conditional state: the Bell-measurement
/// pipeline and the Monte-Carlo feedback sampler both do.
struct ConditionDetail {
    GaussianState kept;              // conditional state of kept modes (zero-outcome mean)
    QuadratureLayout kept_layout;
    Eigen::VectorXd measured_mean;   // prior mean of measured quadratures
    Eigen::MatrixXd measured_cov;    // prior gamma-covariance of measured quadratures
    Eigen::MatrixXd regression;      // kept-mean shift per unit outcome deviation
};

ConditionDetail homodyne_condition_detail(const GaussianState& state, const HomodyneSpec& spec);

/// Conditional state of the kept modes after measuring the quadratures in
/// `spec`. With outcomes given the conditional mean is updated; without, only
/// the (outcome-independent) covariance is meaningful and the mean is the
/// zero-outcome one. Implementation is the Moore-Penrose Schur complement
/// A' = A - C_pi (pi B pi)^+ C_pi^T over the measured projection pi.
GaussianState homodyne_condition(const GaussianState& state, const HomodyneSpec& spec,
                                 const std::optional<Eigen::VectorXd>& outcomes = std::nullopt);

/// Finite-parameter form A' = A - C (Gamma + B)^-1 C^T with
/// Gamma = diag[1/x on measured, x on their conjugates, n on traced]; the
/// x, n -> infinity limit of this expression is what homodyne_condition
/// computes directly. Kept as an independent cross-check route.
GaussianState homodyne_condition_gamma_limit(const GaussianState& state,
                                             const HomodyneSpec& spec, double x, double n);

/// Williamson spectrum: the M absolute eigenvalues of i*Omega*cov. Physical
/// states have every value >= 1 - tolerance; this routine enforces that.
Eigen::VectorXd symplectic_eigenvalues(const GaussianState& state);

/// Same spectrum without the nu >= 1 physicality check (partial transposes
/// legitimately dip below 1).
Eigen::VectorXd symplectic_spectrum_unchecked(const Eigen::MatrixXd& cov,
                                              const Eigen::MatrixXd& form);

/// Von Neumann entropy in bits: sum of g(nu_k) with
/// g(nu) = ((nu+1)/2)log2((nu+1)/2) - ((nu-1)/2)log2((nu-1)/2).
double entropy_vn(const GaussianState& state);

struct PptResult {
    bool inseparable = false;
    double min_nu = 0.0;
};

/// Positive-partial-transpose test for the splitting (partition | rest):
/// momenta of the partition modes are sign-flipped and the resulting matrix
/// is inseparable iff its smallest symplectic eigenvalue drops below 1.
PptResult ppt_inseparable(const GaussianState& state, const std::vector<std::string>& partition);

}  // namespace spinlight
