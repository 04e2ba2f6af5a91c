#pragma once

#include <functional>
#include <string>

#include "spinlight/gaussian.hpp"

namespace spinlight {

struct InteractionParams {
    double kappa = 0.0;  // dimensionless coupling
    double n0 = 350.0;   // pulse length in Larmor periods; only bounds/oracle use it
};

/// Inputs of the dimensionless-coupling calculator. All SI; Gamma and Delta
/// must use the same frequency convention (both angular or both ordinary) as
/// only their ratio enters.
struct PhysicalParams {
    double n_atoms = 0.0;
    double n_photons = 0.0;
    double f_spin = 0.0;       // ground-state spin F
    double a0 = 0.0;           // scalar polarizability coefficient
    double a1 = 0.0;           // vector polarizability coefficient
    double sigma = 0.0;        // resonant scattering cross section, m^2
    double gamma_decay = 0.0;  // excited-state decay rate, 1/s
    double delta = 0.0;        // detuning, 1/s
    double area = 0.0;         // effective beam cross section, m^2
    double t_pulse = 0.0;      // pulse duration, s
    double omega_larmor = 0.0; // Larmor rate, 1/s
};

struct CouplingResult {
    double kappa = 0.0;
    double eta = 0.0;           // depumping per pulse
    bool detuning_warning = false;  // Delta/Gamma below 10
};

/// kappa = sqrt(N_ph J) a1 sigma Gamma / (2 A Delta) with J = N_at F,
/// eta = N_ph a0 sigma Gamma^2 / (4 A Delta^2).
CouplingResult coupling_from_physical(const PhysicalParams& p);

enum class ModeKind { cos, sin, cos_back1, sin_back1, cos_back2, sin_back2 };

ModeKind mode_kind_from_string(const std::string& name);
std::string to_string(ModeKind kind);

/// Temporal mode function on the normalized pulse time u = tau/T in [0,1],
/// in units of T^(-1/2). The trig phase is 2*pi*n0*u. Normalization is exact
/// in the fast-oscillation average; actual norms are 1 + O(1/n0).
struct TemporalMode {
    ModeKind kind;
    double n0;
    double operator()(double u) const;
};

TemporalMode mode_function(ModeKind kind, double n0);

/// integral_0^1 f g du by composite Gauss-Legendre, at least 32 panels per
/// Larmor period, refined to abs_tol.
double mode_overlap(const TemporalMode& f, const TemporalMode& g, double abs_tol = 1e-10);

/// The scattering transform on the canonical 10-mode layout. The symplectic
/// part implements the asymptotic input-output relations
///   X'    = X + (k/sqrt2) p_c              x_c'  = x_c + (k/sqrt2) P + (k/2)^2 p_s
///   P'    = P + (k/sqrt2) p_s                          + (1/sqrt3)(k/2)^2 p_s1
///   x_s'  = x_s - (k/sqrt2) X - (k/2)^2 p_c - (1/sqrt3)(k/2)^2 p_c1
///   x_c1' = x_c1 - (1/sqrt3)(k/2)^2 p_s
///   x_s1' = x_s1 + (1/sqrt3)(k/2)^2 p_c
/// with all p quadratures conserved. The truncated second-order couplings
/// appear as diagonal noise (k/2)^4/15 on x_c1 and x_s1.
///
/// The sign of the p_c term in x_s1' is fixed by preservation of the
/// canonical commutators ([x_c', x_s1'] = 0 requires it); the slice-chain
/// oracle reproduces the same sign.
LinearMap interaction_map(const InteractionParams& params);

/// Same transform on the 14-quadrature layout that carries the second-order
/// modes explicitly; noise (k/2)^4/35 moves out to x_c2, x_s2 (truncated
/// third order). This is what the slice-chain oracle is compared against.
LinearMap interaction_map_extended(double kappa);

/// Zero-field baseline: X' = X + k p_L, x_L' = x_L + k P on the 4-quadrature
/// (atoms, light) layout. Noiseless QND interaction.
LinearMap qnd_map(double kappa);

struct SliceChainConfig {
    int n_slices = 0;
    double n0 = 350.0;
    double kappa = 1.0;
    bool include_second_order_projections = true;
};

struct SliceChainResult {
    QuadratureLayout layout;    // extended14 or canonical10 per config
    Eigen::MatrixXd cov;        // covariance of atoms + projected modes
    Eigen::MatrixXd gram;       // discretized mode Gram matrix (x-type rows)
    Eigen::VectorXd residual_sq;       // per projected x-output: squared norm
                                       // outside the span of the retained modes
    double max_gram_defect = 0.0;      // ||gram - I||_inf over projected modes
    double max_residual_sq = 0.0;
    bool slices_per_period_warning = false;  // fewer than 16 slices per period
};

/// Discretized-propagation oracle. The pulse is cut into n_slices independent
/// vacuum modes; per slice k at t_k = (k+1/2)T/N the exact symplectic kicks
///   X   += g cos(w t_k) p_k,   P += g sin(w t_k) p_k,
///   x_k += g [cos(w t_k) P - sin(w t_k) X]   (pre-kick atomic values;
/// the half-weight inclusion of the slice's own contribution cancels exactly)
/// are applied with g = kappa sqrt(dt/T). Output slice quadratures are then
/// projected onto the discretized temporal modes and the covariance of
/// (atoms + projected modes) is returned.
SliceChainResult slice_chain_covariance(const SliceChainConfig& config);

}  // namespace spinlight
