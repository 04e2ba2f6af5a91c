#include "spinlight/teleport.hpp"

#include <cmath>
#include <stdexcept>

#include "spinlight/numerics.hpp"
#include "spinlight/scattering.hpp"

namespace spinlight {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

struct Couplings {
    double a, b, c;
};

Couplings couplings(double kappa) {
    double b = 0.25 * kappa * kappa;
    return {kappa / kSqrt2, b, b / std::sqrt(3.0)};
}

// Feedback weights on the measured quartet (xt_c, qt_c, xt_s, qt_s):
// X += xt_s - qt_c, P += -xt_c - qt_s.
Eigen::Matrix<double, 2, 4> feedback_weights(const Gains& gains) {
    Eigen::Matrix<double, 2, 4> w;
    w << 0.0, -gains.g_q, gains.g_x, 0.0,
        -gains.g_x, 0.0, 0.0, -gains.g_q;
    return w;
}

// 14-mode pre-measurement state: scattered vacuum plus encoded input.
GaussianState pre_measurement_state(double kappa, const CoherentInput& input) {
    QuadratureLayout layout = QuadratureLayout::teleport14();
    GaussianState state = vacuum_state(layout);

    GaussianState enc = encode_input(input);
    state.mean.segment(layout.index_x("in_c"), 4) = enc.mean;

    LinearMap inter = interaction_map({kappa, 350.0});
    Eigen::MatrixXd s14 = Eigen::MatrixXd::Identity(14, 14);
    s14.topLeftCorner(10, 10) = inter.S;
    Eigen::MatrixXd noise14 = Eigen::MatrixXd::Zero(14, 14);
    noise14.topLeftCorner(10, 10) = inter.noise;
    return apply_map(state, LinearMap{s14, noise14, Eigen::VectorXd::Zero(14)});
}

struct BellConditioned {
    ConditionDetail detail;  // kept = atoms
    GaussianState bell_state;
};

BellConditioned bell_conditioned(double kappa, const CoherentInput& input) {
    BellSetup bell = bell_measure_map();
    GaussianState pre = pre_measurement_state(kappa, input);
    GaussianState mixed = apply_map(pre, bell.map, bell.out_layout);
    return {homodyne_condition_detail(mixed, bell.spec), mixed};
}

TeleportationResult result_from_moments(const Eigen::Vector2d& mean_gamma,
                                        const Eigen::Matrix2d& cov_gamma,
                                        const CoherentInput& input) {
    TeleportationResult res;
    res.final_mean = mean_gamma;
    res.final_var = 0.5 * cov_gamma.diagonal();
    res.fidelity = fidelity_coherent(res.final_mean, res.final_var, input);
    return res;
}

}  // namespace

GaussianState encode_input(const CoherentInput& input) {
    if (!std::isfinite(input.mean_y) || !std::isfinite(input.mean_q)) {
        throw std::invalid_argument("input amplitude must be finite");
    }
    GaussianState state = vacuum_state(QuadratureLayout::input4());
    const double y = input.mean_y, q = input.mean_q;
    state.mean(0) = -q / kSqrt2;  // y_c
    state.mean(1) = y / kSqrt2;   // q_c
    state.mean(2) = y / kSqrt2;   // y_s
    state.mean(3) = q / kSqrt2;   // q_s
    return state;
}

BellSetup bell_measure_map() {
    BellSetup setup{LinearMap::identity(14), QuadratureLayout::teleport14(),
                    QuadratureLayout({"A", "bc_sum", "bs_sum", "c1", "s1", "bc_dif", "bs_dif"}),
                    HomodyneSpec{}};

    const QuadratureLayout& in = setup.in_layout;
    const QuadratureLayout& out = setup.out_layout;
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(14, 14);
    const double h = 1.0 / kSqrt2;

    auto splitter = [&](const std::string& light, const std::string& inp,
                        const std::string& sum_port, const std::string& dif_port) {
        for (int k = 0; k < 2; ++k) {  // x then p
            int row_sum = out.index_x(sum_port) + k;
            int row_dif = out.index_x(dif_port) + k;
            int col_light = in.index_x(light) + k;
            int col_inp = in.index_x(inp) + k;
            s(row_sum, row_sum) = 0.0;
            s(row_dif, row_dif) = 0.0;
            s(row_sum, col_light) = h;
            s(row_sum, col_inp) = h;
            s(row_dif, col_light) = h;
            s(row_dif, col_inp) = -h;
        }
    };
    splitter("c", "in_c", "bc_sum", "bc_dif");
    splitter("s", "in_s", "bs_sum", "bs_dif");

    setup.map = LinearMap::symplectic_only(s);
    setup.spec.measured = {{"bc_sum", Quad::x},   // xt_c
                           {"bc_dif", Quad::p},   // qt_c
                           {"bs_sum", Quad::x},   // xt_s
                           {"bs_dif", Quad::p}};  // qt_s
    setup.spec.traced = {"c1", "s1"};
    return setup;
}

TeleportationResult teleport_closed_form(double kappa, const CoherentInput& input) {
    if (kappa < 0.0) {
        throw std::invalid_argument("kappa must be nonnegative");
    }
    const double half = 1.0 - 0.5 * kappa;
    const double quart = std::pow(0.5 * kappa, 4);
    double var = 0.5 * (half * half + 0.5 * std::pow(half, 4) + 0.5 + quart / 6.0 + 1.0);

    TeleportationResult res;
    res.final_mean = Eigen::Vector2d(input.mean_y, input.mean_q);
    res.final_var = Eigen::Vector2d(var, var);
    res.fidelity = fidelity_coherent(res.final_mean, res.final_var, input);
    return res;
}

TeleportationResult teleport_pipeline(double kappa, const CoherentInput& input) {
    BellConditioned cond = bell_conditioned(kappa, input);
    const ConditionDetail& d = cond.detail;

    Eigen::Matrix<double, 2, 4> w = feedback_weights(Gains{1.0, 1.0});
    Eigen::MatrixXd shift = d.regression + w;
    Eigen::Matrix2d cov_gamma = d.kept.cov + shift * d.measured_cov * shift.transpose();
    Eigen::Vector2d mean_gamma = d.kept.mean + w * d.measured_mean;
    return result_from_moments(mean_gamma, cov_gamma, input);
}

TeleportationResult teleport_noisy(double kappa, const NoiseParams& noise, const Gains& gains,
                                   const CoherentInput& input, const NoisyOptions& opts) {
    if (kappa < 0.0) {
        throw std::invalid_argument("kappa must be nonnegative");
    }
    if (noise.beta < 0.0 || noise.beta >= 1.0 || noise.epsilon < 0.0 || noise.epsilon >= 1.0) {
        throw std::invalid_argument("beta and epsilon must lie in [0,1)");
    }
    const Couplings cp = couplings(kappa);
    const double w_loss = std::sqrt(1.0 - noise.epsilon);
    const double gx_eff = gains.g_x * w_loss / kSqrt2;
    const double gq_eff = gains.g_q * w_loss / kSqrt2;

    // Atomic damping: sqrt(1-beta) during the interaction and (by default)
    // once more before feedback, each with its own Langevin term.
    const double damp = opts.storage_decay_stage ? (1.0 - noise.beta) : std::sqrt(1.0 - noise.beta);
    const double langevin = opts.storage_decay_stage ? noise.beta * (2.0 - noise.beta) : noise.beta;

    double v = 0.0;
    v += std::pow(damp - cp.a * gx_eff, 2);                  // X / P
    v += std::pow(damp * cp.a - cp.b * gx_eff - gq_eff, 2);  // p_c / p_s
    v += (2.0 + cp.c * cp.c) * gx_eff * gx_eff;              // x_s, y_s, p_c1 channels
    v += gq_eff * gq_eff;                                    // q_c channel
    v += langevin;
    v += noise.epsilon * (gains.g_x * gains.g_x + gains.g_q * gains.g_q);

    const double gain_eff = 0.5 * w_loss * (gains.g_x + gains.g_q);
    TeleportationResult res;
    res.final_mean = gain_eff * Eigen::Vector2d(input.mean_y, input.mean_q);
    res.final_var = Eigen::Vector2d(0.5 * v, 0.5 * v);
    res.fidelity = fidelity_coherent(res.final_mean, res.final_var, input);
    return res;
}

double fidelity_coherent(const Eigen::Vector2d& final_mean, const Eigen::Vector2d& final_var,
                         const CoherentInput& input) {
    if (!(final_var(0) > 0.0) || !(final_var(1) > 0.0)) {
        throw std::invalid_argument("variances must be positive");
    }
    const double dx = 1.0 + 2.0 * final_var(0);
    const double dp = 1.0 + 2.0 * final_var(1);
    const double mx = input.mean_y - final_mean(0);
    const double mp = input.mean_q - final_mean(1);
    return 2.0 / std::sqrt(dx * dp) * std::exp(-mx * mx / dx - mp * mp / dp);
}

double average_fidelity_gaussian(double kappa, const NoiseParams& noise, const Gains& gains,
                                 double n_bar, const NoisyOptions& opts) {
    if (n_bar < 0.0) {
        throw std::invalid_argument("n_bar must be nonnegative");
    }
    TeleportationResult base = teleport_noisy(kappa, noise, gains, CoherentInput{0.0, 0.0}, opts);
    const double gain_eff = 0.5 * std::sqrt(1.0 - noise.epsilon) * (gains.g_x + gains.g_q);
    const double mismatch = 2.0 * n_bar * (1.0 - gain_eff) * (1.0 - gain_eff);
    const double dx = 1.0 + 2.0 * base.final_var(0) + mismatch;
    const double dp = 1.0 + 2.0 * base.final_var(1) + mismatch;
    if (!(dx > 0.0) || !(dp > 0.0)) {
        throw std::runtime_error("average fidelity integral diverges");
    }
    return 2.0 / std::sqrt(dx * dp);
}

Gains optimize_gains(double kappa, const NoiseParams& noise, double n_bar,
                     const NoisyOptions& opts) {
    auto objective = [&](double gx, double gq) {
        return average_fidelity_gaussian(kappa, noise, Gains{gx, gq}, n_bar, opts);
    };

    const int grid = 41;
    const double step = 2.0 / (grid - 1);
    double best = -1.0;
    Eigen::Vector2d best_pt(1.0, 1.0);
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            double val = objective(i * step, j * step);
            if (val > best) {
                best = val;
                best_pt = Eigen::Vector2d(i * step, j * step);
            }
        }
    }
    NelderMead2dResult refined = nelder_mead_2d_max(objective, best_pt, step, 1e-9, 500);
    if (refined.value < best) {
        return Gains{best_pt(0), best_pt(1)};
    }
    return Gains{refined.arg(0), refined.arg(1)};
}

double classical_benchmark(double n_bar) {
    if (n_bar < 0.0) {
        throw std::invalid_argument("n_bar must be nonnegative");
    }
    return (1.0 + n_bar) / (1.0 + 2.0 * n_bar);
}

namespace {
double tms_entropy(double r) {
    const double ch = std::cosh(r), sh = std::sinh(r);
    const double c2 = ch * ch, s2 = sh * sh;
    double e = c2 * std::log2(c2);
    if (s2 > 0.0) e -= s2 * std::log2(s2);
    return e;
}
}  // namespace

double tms_benchmark_fidelity(double entropy_bits) {
    if (entropy_bits < 0.0) {
        throw std::invalid_argument("entropy must be nonnegative");
    }
    if (entropy_bits == 0.0) {
        return 0.5;
    }
    double lo = 0.0, hi = 1.0;
    while (tms_entropy(hi) < entropy_bits) {
        hi *= 2.0;
        if (hi > 1e4) break;
    }
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        (tms_entropy(mid) < entropy_bits ? lo : hi) = mid;
    }
    double r = 0.5 * (lo + hi);
    return 1.0 / (1.0 + std::exp(-2.0 * r));
}

McMoments monte_carlo_feedback(double kappa, const CoherentInput& input, std::int64_t n_samples,
                               std::uint64_t seed) {
    if (n_samples < 1000) {
        throw std::invalid_argument("need at least 1000 samples");
    }
    BellConditioned cond = bell_conditioned(kappa, input);
    const ConditionDetail& d = cond.detail;

    // Physical covariances for sampling: gamma-convention entries are twice
    // the physical ones.
    Eigen::MatrixXd outcome_cov = 0.5 * d.measured_cov;
    Eigen::Matrix2d conditional_cov = 0.5 * d.kept.cov;
    Eigen::Matrix<double, 2, 4> w = feedback_weights(Gains{1.0, 1.0});

    GaussianRng rng(seed);
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    Eigen::Matrix2d sum_sq = Eigen::Matrix2d::Zero();
    for (std::int64_t i = 0; i < n_samples; ++i) {
        Eigen::VectorXd outcome = rng.normal_vec(d.measured_mean, outcome_cov);
        Eigen::Vector2d cond_mean =
            d.kept.mean + d.regression * (outcome - d.measured_mean);
        Eigen::Vector2d atomic = rng.normal_vec(cond_mean, conditional_cov);
        Eigen::Vector2d final_sample = atomic + w * outcome;
        sum += final_sample;
        sum_sq += final_sample * final_sample.transpose();
    }

    McMoments mc;
    mc.n_samples = n_samples;
    mc.mean = sum / static_cast<double>(n_samples);
    mc.cov = sum_sq / static_cast<double>(n_samples) - mc.mean * mc.mean.transpose();
    mc.cov *= static_cast<double>(n_samples) / static_cast<double>(n_samples - 1);
    for (int i = 0; i < 2; ++i) {
        mc.mean_standard_error(i) = std::sqrt(mc.cov(i, i) / static_cast<double>(n_samples));
        mc.var_standard_error(i) = mc.cov(i, i) * std::sqrt(2.0 / static_cast<double>(n_samples - 1));
    }
    return mc;
}

}  // namespace spinlight
