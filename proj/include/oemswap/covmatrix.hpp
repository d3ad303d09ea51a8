#pragma once

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace oemswap {

/// Label of one bosonic mode: a site index (1 or 2) and a role letter.
/// Roles: 'w' microwave, 'b' Bell optical, 'c' certifying optical,
/// 'm' mechanical.
struct ModeLabel {
    int site = 1;
    char role = 'w';

    friend bool operator==(const ModeLabel&, const ModeLabel&) = default;
};

std::string to_string(const ModeLabel& m);
ModeLabel parse_mode_label(const std::string& s);

/// Standard symplectic form of N modes in interleaved (X1,Y1,...) ordering:
/// direct sum of [[0,1],[-1,0]] blocks.
Eigen::MatrixXd symplectic_form(int n_modes);

/// Real symmetric covariance matrix over a list of labeled modes.
///
/// Quadrature ordering is interleaved (X1,Y1,X2,Y2,...), dimensionless with
/// vacuum variance 1/2 per quadrature.  Construction validates symmetry
/// (1e-12 absolute), label uniqueness and dimension; physicality is checked
/// on demand via min_symplectic_eigenvalue().
class CovMatrix {
public:
    CovMatrix(std::vector<ModeLabel> modes, Eigen::MatrixXd data);

    static CovMatrix vacuum(std::vector<ModeLabel> modes);

    const std::vector<ModeLabel>& modes() const { return modes_; }
    const Eigen::MatrixXd& data() const { return data_; }
    int num_modes() const { return static_cast<int>(modes_.size()); }
    int dim() const { return static_cast<int>(data_.rows()); }

    /// Index of a mode within the label list; throws std::invalid_argument
    /// for an unknown label.
    int index_of(const ModeLabel& m) const;
    bool has_mode(const ModeLabel& m) const;

    /// 2x2 quadrature block of one mode (or the cross block of a pair).
    Eigen::Matrix2d mode_block(const ModeLabel& a, const ModeLabel& b) const;

    /// Reduced CM of a subset of modes, in the order given.
    CovMatrix reduced(const std::vector<ModeLabel>& keep) const;

    /// Same matrix with modes permuted into the given order.
    CovMatrix reordered(const std::vector<ModeLabel>& order) const;

    /// Same matrix with labels replaced one-for-one (order preserved).
    CovMatrix relabeled(const std::vector<ModeLabel>& new_labels) const;

    nlohmann::json to_json() const;
    static CovMatrix from_json(const nlohmann::json& j);

private:
    std::vector<ModeLabel> modes_;
    Eigen::MatrixXd data_;
};

}  // namespace oemswap
