#include "spinlight/scattering.hpp"

#include <cmath>
#include <stdexcept>

#include "spinlight/numerics.hpp"

namespace spinlight {

CouplingResult coupling_from_physical(const PhysicalParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) {
            throw std::invalid_argument(std::string("physical parameter must be positive: ") +
                                        name);
        }
    };
    positive(p.n_atoms, "n_atoms");
    positive(p.f_spin, "f_spin");
    positive(p.a0, "a0");
    positive(p.a1, "a1");
    positive(p.sigma, "sigma");
    positive(p.gamma_decay, "gamma_decay");
    positive(p.delta, "delta");
    positive(p.area, "area");
    positive(p.t_pulse, "t_pulse");
    positive(p.omega_larmor, "omega_larmor");
    if (p.n_photons < 0.0) {
        throw std::invalid_argument("n_photons must be nonnegative");
    }

    const double j_spin = p.n_atoms * p.f_spin;
    CouplingResult res;
    res.kappa = std::sqrt(p.n_photons * j_spin) * p.a1 * p.sigma * p.gamma_decay /
                (2.0 * p.area * p.delta);
    res.eta = p.n_photons * p.a0 * p.sigma * p.gamma_decay * p.gamma_decay /
              (4.0 * p.area * p.delta * p.delta);
    res.detuning_warning = p.delta / p.gamma_decay < 10.0;
    return res;
}

ModeKind mode_kind_from_string(const std::string& name) {
    if (name == "cos") return ModeKind::cos;
    if (name == "sin") return ModeKind::sin;
    if (name == "cos_back1") return ModeKind::cos_back1;
    if (name == "sin_back1") return ModeKind::sin_back1;
    if (name == "cos_back2") return ModeKind::cos_back2;
    if (name == "sin_back2") return ModeKind::sin_back2;
    throw std::invalid_argument("unknown mode kind '" + name + "'");
}

std::string to_string(ModeKind kind) {
    switch (kind) {
        case ModeKind::cos: return "cos";
        case ModeKind::sin: return "sin";
        case ModeKind::cos_back1: return "cos_back1";
        case ModeKind::sin_back1: return "sin_back1";
        case ModeKind::cos_back2: return "cos_back2";
        case ModeKind::sin_back2: return "sin_back2";
    }
    throw std::invalid_argument("unknown mode kind");
}

namespace {

bool is_cos_kind(ModeKind kind) {
    return kind == ModeKind::cos || kind == ModeKind::cos_back1 || kind == ModeKind::cos_back2;
}

// Polynomial envelopes: shifted-Legendre factors normalized so the full mode
// function has unit norm under the fast-oscillation average of the trig part.
double envelope(ModeKind kind, double u) {
    switch (kind) {
        case ModeKind::cos:
        case ModeKind::sin:
            return std::sqrt(2.0);
        case ModeKind::cos_back1:
        case ModeKind::sin_back1:
            return 2.0 * std::sqrt(6.0) * (0.5 - u);
        case ModeKind::cos_back2:
        case ModeKind::sin_back2:
            return 6.0 * std::sqrt(10.0) * (1.0 / 6.0 - u + u * u);
    }
    return 0.0;
}

}  // namespace

double TemporalMode::operator()(double u) const {
    double phase = 2.0 * M_PI * n0 * u;
    double trig = is_cos_kind(kind) ? std::cos(phase) : std::sin(phase);
    return envelope(kind, u) * trig;
}

TemporalMode mode_function(ModeKind kind, double n0) {
    if (!(n0 > 0.0)) {
        throw std::invalid_argument("n0 must be positive");
    }
    return TemporalMode{kind, n0};
}

double mode_overlap(const TemporalMode& f, const TemporalMode& g, double abs_tol) {
    if (f.n0 != g.n0) {
        throw std::invalid_argument("mode overlap requires matching n0");
    }
    int panels = std::max(32, static_cast<int>(std::ceil(32.0 * f.n0)));
    return integrate_gl([&](double u) { return f(u) * g(u); }, 0.0, 1.0, panels, abs_tol);
}

LinearMap interaction_map(const InteractionParams& params) {
    const double kappa = params.kappa;
    if (kappa < 0.0) {
        throw std::invalid_argument("kappa must be nonnegative");
    }
    const double a = kappa / std::sqrt(2.0);
    const double b = 0.25 * kappa * kappa;
    const double c = b / std::sqrt(3.0);

    const int X = 0, P = 1, xc = 2, pc = 3, xs = 4, ps = 5, xc1 = 6, pc1 = 7, xs1 = 8, ps1 = 9;

    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(10, 10);
    s(X, pc) = a;
    s(P, ps) = a;
    s(xc, P) = a;
    s(xc, ps) = b;
    s(xc, ps1) = c;
    s(xs, X) = -a;
    s(xs, pc) = -b;
    s(xs, pc1) = -c;
    s(xc1, ps) = -c;
    s(xs1, pc) = c;

    Eigen::MatrixXd noise = Eigen::MatrixXd::Zero(10, 10);
    const double second_order = std::pow(0.5 * kappa, 4) / 15.0;
    noise(xc1, xc1) = second_order;
    noise(xs1, xs1) = second_order;

    return LinearMap{s, noise, Eigen::VectorXd::Zero(10)};
}

LinearMap interaction_map_extended(double kappa) {
    if (kappa < 0.0) {
        throw std::invalid_argument("kappa must be nonnegative");
    }
    const double a = kappa / std::sqrt(2.0);
    const double b = 0.25 * kappa * kappa;
    const double c = b / std::sqrt(3.0);
    const double d = b / std::sqrt(15.0);

    const int X = 0, P = 1, xc = 2, pc = 3, xs = 4, ps = 5;
    const int xc1 = 6, pc1 = 7, xs1 = 8, ps1 = 9, xc2 = 10, pc2 = 11, xs2 = 12, ps2 = 13;

    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(14, 14);
    s(X, pc) = a;
    s(P, ps) = a;
    s(xc, P) = a;
    s(xc, ps) = b;
    s(xc, ps1) = c;
    s(xs, X) = -a;
    s(xs, pc) = -b;
    s(xs, pc1) = -c;
    s(xc1, ps) = -c;
    s(xc1, ps2) = d;
    s(xs1, pc) = c;
    s(xs1, pc2) = -d;
    s(xc2, ps1) = -d;
    s(xs2, pc1) = d;

    Eigen::MatrixXd noise = Eigen::MatrixXd::Zero(14, 14);
    const double third_order = std::pow(0.5 * kappa, 4) / 35.0;
    noise(xc2, xc2) = third_order;
    noise(xs2, xs2) = third_order;

    return LinearMap{s, noise, Eigen::VectorXd::Zero(14)};
}

LinearMap qnd_map(double kappa) {
    if (kappa < 0.0) {
        throw std::invalid_argument("kappa must be nonnegative");
    }
    const int X = 0, P = 1, xl = 2, pl = 3;
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(4, 4);
    s(X, pl) = kappa;
    s(xl, P) = kappa;
    return LinearMap::symplectic_only(s);
}

SliceChainResult slice_chain_covariance(const SliceChainConfig& config) {
    const int n = config.n_slices;
    if (n < 2) {
        throw std::invalid_argument("n_slices must be at least 2");
    }
    if (!(config.n0 >= 1.0)) {
        throw std::invalid_argument("slice chain requires n0 >= 1");
    }
    if (config.kappa < 0.0) {
        throw std::invalid_argument("kappa must be nonnegative");
    }

    const double dt = 1.0 / n;
    const double sq_dt = std::sqrt(dt);
    const double g = config.kappa * sq_dt;

    Eigen::VectorXd cosv(n), sinv(n);
    for (int k = 0; k < n; ++k) {
        double theta = 2.0 * M_PI * config.n0 * (k + 0.5) * dt;
        cosv(k) = std::cos(theta);
        sinv(k) = std::sin(theta);
    }

    // All six mode kinds are always sampled: the residual is measured against
    // the full second-order span even when the projection stops at first order.
    const std::vector<ModeKind> all_kinds = {ModeKind::cos,       ModeKind::sin,
                                             ModeKind::cos_back1, ModeKind::sin_back1,
                                             ModeKind::cos_back2, ModeKind::sin_back2};
    const int n_all = static_cast<int>(all_kinds.size());
    const int n_proj = config.include_second_order_projections ? 6 : 4;

    Eigen::MatrixXd samples(n_all, n);  // rows: f(t_k) * sqrt(dt)
    for (int m = 0; m < n_all; ++m) {
        TemporalMode f = mode_function(all_kinds[m], config.n0);
        for (int k = 0; k < n; ++k) {
            samples(m, k) = f((k + 0.5) * dt) * sq_dt;
        }
    }

    Eigen::MatrixXd gram = samples * samples.transpose();
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        if (es.eigenvalues().minCoeff() < 0.5) {
            throw std::invalid_argument(
                "n_slices too small: discretized mode functions are ill-conditioned");
        }
    }

    SliceChainResult res{
        config.include_second_order_projections ? QuadratureLayout::extended14()
                                                : QuadratureLayout::canonical10(),
        Eigen::MatrixXd(), gram, Eigen::VectorXd(),
        (gram - Eigen::MatrixXd::Identity(n_all, n_all)).cwiseAbs().maxCoeff(), 0.0,
        static_cast<double>(n) < 16.0 * config.n0};

    // Closed form of the exact discrete symplectic evolution:
    //   X^out = X + g sum_k c_k p_k,   P^out = P + g sum_k s_k p_k,
    //   x_k^out = x_k + g c_k P - g s_k X - g^2 sum_{j<k} sin(th_k - th_j) p_j.
    // Suffix sums turn the double sum in the projections into O(N) work:
    // the p_j weight of the projected x_f is g^2 [s_j A_j - c_j B_j] with
    // A_j = sum_{k>j} f_k c_k, B_j = sum_{k>j} f_k s_k.
    const int rows = 2 + 2 * n_proj;
    Eigen::MatrixXd coeff_x = Eigen::MatrixXd::Zero(rows, n);  // weights on slice x_j
    Eigen::MatrixXd coeff_p = Eigen::MatrixXd::Zero(rows, n);  // weights on slice p_j
    Eigen::MatrixXd coeff_at = Eigen::MatrixXd::Zero(rows, 2); // weights on (X, P)

    coeff_at(0, 0) = 1.0;
    coeff_at(1, 1) = 1.0;
    coeff_p.row(0) = g * cosv.transpose();
    coeff_p.row(1) = g * sinv.transpose();

    for (int m = 0; m < n_proj; ++m) {
        const int rx = 2 + 2 * m;
        const int rp = rx + 1;
        const auto f = samples.row(m);

        // p-type projection: out-of-phase field is conserved.
        coeff_p.row(rp) = f;

        // x-type projection.
        coeff_x.row(rx) = f;
        coeff_at(rx, 0) = -g * f.dot(sinv);
        coeff_at(rx, 1) = g * f.dot(cosv);
        double suffix_c = 0.0, suffix_s = 0.0;
        for (int j = n - 1; j >= 0; --j) {
            coeff_p(rx, j) = g * g * (sinv(j) * suffix_c - cosv(j) * suffix_s);
            suffix_c += f(j) * cosv(j);
            suffix_s += f(j) * sinv(j);
        }
    }

    res.cov = coeff_at * coeff_at.transpose() + coeff_x * coeff_x.transpose() +
              coeff_p * coeff_p.transpose();
    res.cov = 0.5 * (res.cov + res.cov.transpose());

    // Residual: the part of each projected x-output living outside the span of
    // the retained (order <= 2) input modes, i.e. third order and beyond.
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    res.residual_sq = Eigen::VectorXd::Zero(n_proj);
    for (int m = 0; m < n_proj; ++m) {
        const int rx = 2 + 2 * m;
        Eigen::VectorXd w = coeff_p.row(rx).transpose();
        Eigen::VectorXd overlaps = samples * w;
        double captured = overlaps.dot(llt.solve(overlaps));
        res.residual_sq(m) = w.squaredNorm() - captured;
        res.max_residual_sq = std::max(res.max_residual_sq, res.residual_sq(m));
    }

    return res;
}

}  // namespace spinlight
