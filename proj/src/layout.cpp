#include "spinlight/layout.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace spinlight {

std::string QuadLabel::str() const {
    if (mode == "A") {
        return kind == Quad::x ? "X" : "P";
    }
    return (kind == Quad::x ? "x_" : "p_") + mode;
}

QuadLabel QuadLabel::parse(const std::string& text) {
    if (text == "X") return {"A", Quad::x};
    if (text == "P") return {"A", Quad::p};
    if (text.size() > 2 && text[1] == '_') {
        if (text[0] == 'x') return {text.substr(2), Quad::x};
        if (text[0] == 'p') return {text.substr(2), Quad::p};
    }
    throw std::invalid_argument("cannot parse quadrature label '" + text + "'");
}

QuadratureLayout::QuadratureLayout(std::vector<std::string> modes) : modes_(std::move(modes)) {
    if (modes_.empty()) {
        throw std::invalid_argument("layout needs at least one mode");
    }
    std::set<std::string> seen;
    for (const auto& m : modes_) {
        if (m.empty() || !seen.insert(m).second) {
            throw std::invalid_argument("mode names must be unique and nonempty");
        }
    }
}

bool QuadratureLayout::has_mode(const std::string& name) const {
    return std::find(modes_.begin(), modes_.end(), name) != modes_.end();
}

int QuadratureLayout::mode_index(const std::string& name) const {
    auto it = std::find(modes_.begin(), modes_.end(), name);
    if (it == modes_.end()) {
        throw std::invalid_argument("unknown mode '" + name + "'");
    }
    return static_cast<int>(it - modes_.begin());
}

int QuadratureLayout::index(const QuadLabel& label) const {
    return label.kind == Quad::x ? index_x(label.mode) : index_p(label.mode);
}

Eigen::MatrixXd QuadratureLayout::symplectic_form() const {
    Eigen::MatrixXd form = Eigen::MatrixXd::Zero(dim(), dim());
    for (int m = 0; m < n_modes(); ++m) {
        form(2 * m, 2 * m + 1) = 1.0;
        form(2 * m + 1, 2 * m) = -1.0;
    }
    return form;
}

QuadratureLayout QuadratureLayout::subset(const std::vector<std::string>& kept) const {
    for (const auto& m : kept) {
        mode_index(m);  // validate
    }
    return QuadratureLayout(kept);
}

QuadratureLayout QuadratureLayout::canonical10() {
    return QuadratureLayout({"A", "c", "s", "c1", "s1"});
}

QuadratureLayout QuadratureLayout::extended14() {
    return QuadratureLayout({"A", "c", "s", "c1", "s1", "c2", "s2"});
}

QuadratureLayout QuadratureLayout::teleport14() {
    return QuadratureLayout({"A", "c", "s", "c1", "s1", "in_c", "in_s"});
}

QuadratureLayout QuadratureLayout::qnd4() {
    return QuadratureLayout({"A", "L"});
}

QuadratureLayout QuadratureLayout::input4() {
    return QuadratureLayout({"in_c", "in_s"});
}

}  // namespace spinlight
