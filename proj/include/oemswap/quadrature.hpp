#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace oemswap {

struct QuadratureResult {
    Eigen::VectorXd value;
    Eigen::VectorXd error;   // per-component estimate
    std::size_t evaluations = 0;
    std::size_t intervals = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7,K15) for a vector-valued integrand on
/// [breakpoints.front(), breakpoints.back()].  Interior breakpoints seed the
/// initial subdivision; the worst interval (by largest per-component error)
/// is bisected until every component k satisfies
/// err_k <= max(abs_tol, rel_tol * |I_k|) or max_intervals is reached.
QuadratureResult integrate_adaptive(
    const std::function<Eigen::VectorXd(double)>& f,
    std::vector<double> breakpoints, double rel_tol, double abs_tol,
    std::size_t max_intervals = 4000);

}  // namespace oemswap
