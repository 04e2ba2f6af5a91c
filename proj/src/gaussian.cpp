#include "spinlight/gaussian.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "spinlight/numerics.hpp"

namespace spinlight {

void GaussianState::validate() const {
    const int d = layout.dim();
    if (mean.size() != d || cov.rows() != d || cov.cols() != d) {
        throw std::invalid_argument("state dimensions do not match layout");
    }
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("covariance matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    double max_ev = es.eigenvalues().maxCoeff();
    if (es.eigenvalues().minCoeff() < -tol::psd_rel * std::max(max_ev, 1.0)) {
        throw std::invalid_argument("covariance matrix is not positive semidefinite");
    }
}

bool GaussianState::satisfies_uncertainty(double slack) const {
    Eigen::MatrixXcd test = cov.cast<std::complex<double>>();
    test += std::complex<double>(0, 1) * layout.symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(test);
    double max_ev = std::max(es.eigenvalues().maxCoeff(), 1.0);
    return es.eigenvalues().minCoeff() >= -slack * max_ev;
}

LinearMap LinearMap::identity(int dim) {
    return {Eigen::MatrixXd::Identity(dim, dim), Eigen::MatrixXd::Zero(dim, dim),
            Eigen::VectorXd::Zero(dim)};
}

LinearMap LinearMap::symplectic_only(Eigen::MatrixXd s) {
    const int rows = static_cast<int>(s.rows());
    return {std::move(s), Eigen::MatrixXd::Zero(rows, rows), Eigen::VectorXd::Zero(rows)};
}

namespace {
Eigen::MatrixXd standard_form(int dim) {
    Eigen::MatrixXd form = Eigen::MatrixXd::Zero(dim, dim);
    for (int m = 0; 2 * m + 1 < dim; ++m) {
        form(2 * m, 2 * m + 1) = 1.0;
        form(2 * m + 1, 2 * m) = -1.0;
    }
    return form;
}
}  // namespace

double LinearMap::symplectic_defect() const {
    Eigen::MatrixXd w_in = standard_form(static_cast<int>(S.cols()));
    Eigen::MatrixXd w_out = standard_form(static_cast<int>(S.rows()));
    return (S * w_in * S.transpose() - w_out).cwiseAbs().maxCoeff();
}

void LinearMap::validate() const {
    if (noise.rows() != S.rows() || noise.cols() != S.rows() || displacement.size() != S.rows()) {
        throw std::invalid_argument("linear map dimensions are inconsistent");
    }
    if (noise.cwiseAbs().maxCoeff() == 0.0 && symplectic_defect() > tol::symplectic) {
        throw std::invalid_argument("noiseless map does not preserve the symplectic form");
    }
}

GaussianState vacuum_state(const QuadratureLayout& layout) {
    return {layout, Eigen::VectorXd::Zero(layout.dim()),
            Eigen::MatrixXd::Identity(layout.dim(), layout.dim())};
}

GaussianState apply_map(const GaussianState& state, const LinearMap& map) {
    if (map.S.rows() != map.S.cols()) {
        throw std::invalid_argument("square-map overload used with a rectangular map");
    }
    return apply_map(state, map, state.layout);
}

GaussianState apply_map(const GaussianState& state, const LinearMap& map,
                        const QuadratureLayout& out_layout) {
    if (map.S.cols() != state.layout.dim() || map.S.rows() != out_layout.dim()) {
        throw std::invalid_argument("map dimensions do not match state/output layout");
    }
    GaussianState out{out_layout, map.S * state.mean + map.displacement,
                      map.S * state.cov * map.S.transpose() + map.noise};
    out.cov = 0.5 * (out.cov + out.cov.transpose());
    return out;
}

GaussianState displace(const GaussianState& state, const Eigen::VectorXd& deltas) {
    if (deltas.size() != state.layout.dim()) {
        throw std::invalid_argument("displacement length does not match layout");
    }
    return {state.layout, state.mean + deltas, state.cov};
}

GaussianState reduce(const GaussianState& state, const std::vector<std::string>& kept_modes) {
    QuadratureLayout sub = state.layout.subset(kept_modes);
    std::vector<int> idx;
    idx.reserve(sub.dim());
    for (const auto& m : kept_modes) {
        idx.push_back(state.layout.index_x(m));
        idx.push_back(state.layout.index_p(m));
    }
    GaussianState out{sub, Eigen::VectorXd(sub.dim()), Eigen::MatrixXd(sub.dim(), sub.dim())};
    for (size_t i = 0; i < idx.size(); ++i) {
        out.mean(i) = state.mean(idx[i]);
        for (size_t j = 0; j < idx.size(); ++j) {
            out.cov(i, j) = state.cov(idx[i], idx[j]);
        }
    }
    return out;
}

namespace {

struct Partition {
    std::vector<int> kept;      // quadrature indices of kept modes
    std::vector<int> measured;  // quadrature indices in spec order
    std::vector<std::string> kept_modes;
};

Partition split_indices(const GaussianState& state, const HomodyneSpec& spec) {
    const auto& layout = state.layout;
    std::set<std::string> measured_modes;
    for (const auto& label : spec.measured) {
        if (!measured_modes.insert(label.mode).second) {
            throw std::invalid_argument(
                "measured set is not commuting: mode '" + label.mode +
                "' contributes more than one quadrature");
        }
    }
    std::set<std::string> traced_modes(spec.traced.begin(), spec.traced.end());
    for (const auto& m : traced_modes) {
        layout.mode_index(m);
        if (measured_modes.count(m)) {
            throw std::invalid_argument("mode '" + m + "' is both measured and traced");
        }
    }

    Partition part;
    for (const auto& label : spec.measured) {
        part.measured.push_back(layout.index(label));
    }
    for (const auto& mode : layout.modes()) {
        if (!measured_modes.count(mode) && !traced_modes.count(mode)) {
            part.kept_modes.push_back(mode);
        }
    }
    if (part.kept_modes.empty()) {
        throw std::invalid_argument("no kept modes left after measurement and trace");
    }
    for (const auto& mode : part.kept_modes) {
        part.kept.push_back(layout.index_x(mode));
        part.kept.push_back(layout.index_p(mode));
    }
    return part;
}

Eigen::MatrixXd pick(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
    return out;
}

Eigen::VectorXd pick(const Eigen::VectorXd& v, const std::vector<int>& idx) {
    Eigen::VectorXd out(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) out(i) = v(idx[i]);
    return out;
}

}  // namespace

ConditionDetail homodyne_condition_detail(const GaussianState& state, const HomodyneSpec& spec) {
    state.validate();
    Partition part = split_indices(state, spec);

    Eigen::MatrixXd a = pick(state.cov, part.kept, part.kept);
    Eigen::MatrixXd b = pick(state.cov, part.measured, part.measured);
    Eigen::MatrixXd c = pick(state.cov, part.kept, part.measured);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    double max_ev = std::max(es.eigenvalues().maxCoeff(), 1.0);
    if (es.eigenvalues().minCoeff() < -tol::psd_rel * max_ev) {
        throw std::runtime_error("measured block is not PSD: invalid input state");
    }

    Eigen::MatrixXd b_pinv = pseudo_inverse_sym(b, tol::pinv_rel);
    Eigen::MatrixXd regression = c * b_pinv;

    ConditionDetail detail{
        GaussianState{state.layout.subset(part.kept_modes), pick(state.mean, part.kept),
                      a - regression * c.transpose()},
        state.layout.subset(part.kept_modes),
        pick(state.mean, part.measured),
        b,
        regression,
    };
    detail.kept.cov = 0.5 * (detail.kept.cov + detail.kept.cov.transpose());
    return detail;
}

GaussianState homodyne_condition(const GaussianState& state, const HomodyneSpec& spec,
                                 const std::optional<Eigen::VectorXd>& outcomes) {
    ConditionDetail detail = homodyne_condition_detail(state, spec);
    if (outcomes) {
        if (outcomes->size() != static_cast<Eigen::Index>(spec.measured.size())) {
            throw std::invalid_argument("outcome vector length does not match measured set");
        }
        detail.kept.mean += detail.regression * (*outcomes - detail.measured_mean);
    }
    return detail.kept;
}

GaussianState homodyne_condition_gamma_limit(const GaussianState& state,
                                             const HomodyneSpec& spec, double x, double n) {
    state.validate();
    Partition part = split_indices(state, spec);

    // Everything that is not kept enters the B block; Gamma assigns 1/x to
    // measured quadratures, x to their conjugates and n to traced modes.
    std::vector<int> rest;
    std::vector<double> gamma_diag;
    std::set<int> kept_set(part.kept.begin(), part.kept.end());
    std::set<int> measured_set(part.measured.begin(), part.measured.end());
    std::set<std::string> measured_modes;
    for (const auto& label : spec.measured) measured_modes.insert(label.mode);

    for (int i = 0; i < state.layout.dim(); ++i) {
        if (kept_set.count(i)) continue;
        rest.push_back(i);
        const std::string& mode = state.layout.modes()[i / 2];
        if (measured_set.count(i)) {
            gamma_diag.push_back(1.0 / x);
        } else if (measured_modes.count(mode)) {
            gamma_diag.push_back(x);
        } else {
            gamma_diag.push_back(n);
        }
    }

    Eigen::MatrixXd a = pick(state.cov, part.kept, part.kept);
    Eigen::MatrixXd b = pick(state.cov, rest, rest);
    Eigen::MatrixXd c = pick(state.cov, part.kept, rest);
    for (size_t i = 0; i < rest.size(); ++i) b(i, i) += gamma_diag[i];

    GaussianState out{state.layout.subset(part.kept_modes), pick(state.mean, part.kept),
                      a - c * b.ldlt().solve(c.transpose())};
    out.cov = 0.5 * (out.cov + out.cov.transpose());
    return out;
}

Eigen::VectorXd symplectic_spectrum_unchecked(const Eigen::MatrixXd& cov,
                                              const Eigen::MatrixXd& form) {
    // gamma^{1/2} W gamma^{1/2} is real antisymmetric; its singular values are
    // the symplectic eigenvalues, each twice.
    Eigen::MatrixXd root = sqrt_psd(cov);
    Eigen::MatrixXd k = root * form * root;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(k);
    Eigen::VectorXd sv = svd.singularValues();  // descending
    const int m = static_cast<int>(sv.size()) / 2;
    Eigen::VectorXd nus(m);
    for (int i = 0; i < m; ++i) {
        double a = sv(2 * i), b = sv(2 * i + 1);
        if (std::abs(a - b) > tol::nu_pairing * std::max(1.0, a)) {
            throw std::runtime_error("symplectic eigenvalues failed to pair up");
        }
        nus(i) = 0.5 * (a + b);
    }
    std::sort(nus.data(), nus.data() + nus.size());
    return nus;
}

Eigen::VectorXd symplectic_eigenvalues(const GaussianState& state) {
    state.validate();
    Eigen::VectorXd nus = symplectic_spectrum_unchecked(state.cov, state.layout.symplectic_form());
    if (nus.minCoeff() < 1.0 - tol::nu_pairing) {
        throw std::runtime_error("state violates the uncertainty relation (nu < 1)");
    }
    return nus;
}

namespace {
double entropy_term(double nu) {
    if (nu <= 1.0 + 1e-12) return 0.0;
    double up = 0.5 * (nu + 1.0);
    double dn = 0.5 * (nu - 1.0);
    return up * std::log2(up) - dn * std::log2(dn);
}
}  // namespace

double entropy_vn(const GaussianState& state) {
    Eigen::VectorXd nus = symplectic_eigenvalues(state);
    double total = 0.0;
    for (int i = 0; i < nus.size(); ++i) total += entropy_term(nus(i));
    return total;
}

PptResult ppt_inseparable(const GaussianState& state, const std::vector<std::string>& partition) {
    state.validate();
    if (partition.empty() || partition.size() >= state.layout.modes().size()) {
        throw std::invalid_argument("partition must be a nonempty proper subset of the modes");
    }
    Eigen::VectorXd flip = Eigen::VectorXd::Ones(state.layout.dim());
    for (const auto& mode : partition) {
        flip(state.layout.index_p(mode)) = -1.0;
    }
    Eigen::MatrixXd transposed = flip.asDiagonal() * state.cov * flip.asDiagonal();
    Eigen::VectorXd nus =
        symplectic_spectrum_unchecked(transposed, state.layout.symplectic_form());
    PptResult res;
    res.min_nu = nus.minCoeff();
    res.inseparable = res.min_nu < 1.0 - tol::nu_pairing;
    return res;
}

}  // namespace spinlight
