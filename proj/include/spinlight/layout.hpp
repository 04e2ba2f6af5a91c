#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spinlight {

enum class Quad { x, p };

/// A single quadrature of a named mode, e.g. {"c", Quad::p} for p_c.
/// The atomic mode is named "A"; its quadratures print as "X" and "P".
struct QuadLabel {
    std::string mode;
    Quad kind = Quad::x;

    bool operator==(const QuadLabel& other) const {
        return mode == other.mode && kind == other.kind;
    }

    std::string str() const;
    static QuadLabel parse(const std::string& text);
};

/// Ordered list of mode names; each mode contributes an adjacent (x, p) pair,
/// so a layout with M modes spans 2M quadratures. Keeping indices behind this
/// class is what prevents row/column mixups between the 10-, 12- and 14-mode
/// configurations used across the library.
class QuadratureLayout {
public:
    explicit QuadratureLayout(std::vector<std::string> modes);

    int n_modes() const { return static_cast<int>(modes_.size()); }
    int dim() const { return 2 * n_modes(); }
    const std::vector<std::string>& modes() const { return modes_; }

    bool has_mode(const std::string& name) const;
    int mode_index(const std::string& name) const;
    int index_x(const std::string& name) const { return 2 * mode_index(name); }
    int index_p(const std::string& name) const { return 2 * mode_index(name) + 1; }
    int index(const QuadLabel& label) const;

    /// Block-diagonal symplectic form: [[0,1],[-1,0]] per mode.
    Eigen::MatrixXd symplectic_form() const;

    QuadratureLayout subset(const std::vector<std::string>& kept) const;

    bool operator==(const QuadratureLayout& other) const { return modes_ == other.modes_; }
    bool operator!=(const QuadratureLayout& other) const { return !(*this == other); }

    /// (X,P, x_c,p_c, x_s,p_s, x_c1,p_c1, x_s1,p_s1)
    static QuadratureLayout canonical10();
    /// canonical10 extended by the second-order scattering modes c2, s2.
    static QuadratureLayout extended14();
    /// canonical10 extended by the input sideband-modulation modes in_c, in_s.
    static QuadratureLayout teleport14();
    /// Atoms plus a single light mode, for the zero-field baseline.
    static QuadratureLayout qnd4();
    /// The two input modulation modes alone.
    static QuadratureLayout input4();

private:
    std::vector<std::string> modes_;
};

}  // namespace spinlight
