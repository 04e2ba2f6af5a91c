#include "spinlight/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace spinlight {

Eigen::MatrixXd pseudo_inverse_sym(const Eigen::MatrixXd& m, double rel_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const Eigen::VectorXd& ev = es.eigenvalues();
    double cutoff = rel_tol * ev.cwiseAbs().maxCoeff();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
    for (int i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i)) > cutoff) {
            inv(i) = 1.0 / ev(i);
        }
    }
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

namespace {

// 16-point Gauss-Legendre rule on [-1, 1] (positive half; nodes symmetric).
constexpr int kGlOrder = 16;
constexpr double kGlNodes[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeights[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

double gl_fixed(const std::function<double(double)>& f, double a, double b, int panels) {
    double total = 0.0;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * h;
        double half = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < kGlOrder / 2; ++i) {
            acc += kGlWeights[i] * (f(mid - half * kGlNodes[i]) + f(mid + half * kGlNodes[i]));
        }
        total += acc * half;
    }
    return total;
}

}  // namespace

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int initial_panels, double abs_tol) {
    if (initial_panels < 1) initial_panels = 1;
    int panels = initial_panels;
    double prev = gl_fixed(f, a, b, panels);
    for (int iter = 0; iter < 8; ++iter) {
        panels *= 2;
        double cur = gl_fixed(f, a, b, panels);
        if (std::abs(cur - prev) <= abs_tol) {
            return cur;
        }
        prev = cur;
    }
    throw std::runtime_error("quadrature did not converge to requested tolerance");
}

GaussHermite gauss_hermite(int n) {
    // Golub-Welsch on the Hermite Jacobi matrix: off-diagonals sqrt(k/2).
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        double off = std::sqrt(k / 2.0);
        jac(k, k - 1) = off;
        jac(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    GaussHermite gh;
    gh.nodes = es.eigenvalues();
    gh.weights.resize(n);
    const double sqrt_pi = std::sqrt(M_PI);
    for (int i = 0; i < n; ++i) {
        double first = es.eigenvectors()(0, i);
        gh.weights(i) = sqrt_pi * first * first;
    }
    return gh;
}

NelderMead2dResult nelder_mead_2d_max(const std::function<double(double, double)>& f,
                                      const Eigen::Vector2d& start, double step,
                                      double f_tol, int max_iter) {
    std::array<Eigen::Vector2d, 3> pts = {start, start + Eigen::Vector2d(step, 0.0),
                                          start + Eigen::Vector2d(0.0, step)};
    std::array<double, 3> vals;
    for (int i = 0; i < 3; ++i) vals[i] = f(pts[i](0), pts[i](1));

    auto order = [&]() {
        // descending by value: pts[0] best
        for (int i = 0; i < 2; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (vals[j] > vals[i]) {
                    std::swap(vals[i], vals[j]);
                    std::swap(pts[i], pts[j]);
                }
    };

    for (int it = 0; it < max_iter; ++it) {
        order();
        if (vals[0] - vals[2] < f_tol) break;
        Eigen::Vector2d centroid = 0.5 * (pts[0] + pts[1]);
        Eigen::Vector2d refl = centroid + (centroid - pts[2]);
        double f_refl = f(refl(0), refl(1));
        if (f_refl > vals[0]) {
            Eigen::Vector2d expan = centroid + 2.0 * (centroid - pts[2]);
            double f_exp = f(expan(0), expan(1));
            if (f_exp > f_refl) {
                pts[2] = expan;
                vals[2] = f_exp;
            } else {
                pts[2] = refl;
                vals[2] = f_refl;
            }
        } else if (f_refl > vals[1]) {
            pts[2] = refl;
            vals[2] = f_refl;
        } else {
            Eigen::Vector2d contr = centroid + 0.5 * (pts[2] - centroid);
            double f_con = f(contr(0), contr(1));
            if (f_con > vals[2]) {
                pts[2] = contr;
                vals[2] = f_con;
            } else {  // shrink toward best
                for (int i = 1; i < 3; ++i) {
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
                    vals[i] = f(pts[i](0), pts[i](1));
                }
            }
        }
    }
    order();
    return {pts[0], vals[0]};
}

double GaussianRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

Eigen::VectorXd GaussianRng::normal_vec(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    Eigen::MatrixXd chol;
    if (llt.info() == Eigen::Success) {
        chol = llt.matrixL();
    } else {
        chol = sqrt_psd(cov);  // PSD but rank-deficient covariances
    }
    Eigen::VectorXd z(mean.size());
    for (int i = 0; i < z.size(); ++i) z(i) = normal();
    return mean + chol * z;
}

}  // namespace spinlight
