#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace spinlight {

/// Moore-Penrose pseudoinverse of a symmetric matrix. Eigenvalues below
/// rel_tol * max|eigenvalue| are treated as zero.
Eigen::MatrixXd pseudo_inverse_sym(const Eigen::MatrixXd& m, double rel_tol = 1e-12);

/// Symmetric PSD square root; eigenvalues clipped at zero from below.
Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& m);

/// Integrates f over [a, b] with composite Gauss-Legendre quadrature,
/// doubling the panel count until two refinements agree to abs_tol.
/// Throws on non-convergence.
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int initial_panels, double abs_tol = 1e-10);

/// Gauss-Hermite nodes and weights for weight exp(-t^2) (Golub-Welsch).
struct GaussHermite {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};
GaussHermite gauss_hermite(int n);

/// Deterministic Nelder-Mead maximization of a 2d objective. Fixed reflection
/// schedule; stops once the simplex f-spread falls below f_tol.
struct NelderMead2dResult {
    Eigen::Vector2d arg;
    double value = 0.0;
};
NelderMead2dResult nelder_mead_2d_max(const std::function<double(double, double)>& f,
                                      const Eigen::Vector2d& start, double step,
                                      double f_tol = 1e-9, int max_iter = 500);

/// Seeded normal generator: mt19937_64 driving a Box-Muller transform, so a
/// fixed seed produces the same stream on every platform.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // in (0,1]
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal();

    /// Sample from N(mean, cov); cov must be PSD.
    Eigen::VectorXd normal_vec(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace spinlight
