#include "oemswap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace oemswap {

namespace {

// Gauss-Kronrod (G7, K15) nodes and weights on [-1, 1].
constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,
    0.741531185599394,  0.864864423359769,  0.949107912342759,
    0.991455371120813};

constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};

// Gauss weights attach to the odd Kronrod nodes (indices 1,3,...,13).
constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct Interval {
    double a, b;
    Eigen::VectorXd value;
    Eigen::VectorXd error;
    double worst;  // max component error, priority key

    bool operator<(const Interval& other) const { return worst < other.worst; }
};

Interval evaluate_interval(const std::function<Eigen::VectorXd(double)>& f,
                           double a, double b, std::size_t& evals) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Eigen::VectorXd kronrod, gauss;
    for (int i = 0; i < 15; ++i) {
        const Eigen::VectorXd fx = f(mid + half * kKronrodNodes[i]);
        ++evals;
        if (i == 0) {
            kronrod = Eigen::VectorXd::Zero(fx.size());
            gauss = Eigen::VectorXd::Zero(fx.size());
        }
        kronrod += kKronrodWeights[i] * fx;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fx;
    }
    Interval iv;
    iv.a = a;
    iv.b = b;
    iv.value = half * kronrod;
    iv.error = (half * (kronrod - gauss)).cwiseAbs();
    iv.worst = iv.error.size() > 0 ? iv.error.maxCoeff() : 0.0;
    return iv;
}

}  // namespace

QuadratureResult integrate_adaptive(
    const std::function<Eigen::VectorXd(double)>& f,
    std::vector<double> breakpoints, double rel_tol, double abs_tol,
    std::size_t max_intervals) {
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                      breakpoints.end());
    if (breakpoints.size() < 2)
        throw std::invalid_argument("integrate_adaptive: need at least 2 points");

    QuadratureResult res;
    std::priority_queue<Interval> queue;
    Eigen::VectorXd total_value, total_error;
    auto push = [&](Interval iv) {
        if (total_value.size() == 0) {
            total_value = Eigen::VectorXd::Zero(iv.value.size());
            total_error = Eigen::VectorXd::Zero(iv.value.size());
        }
        total_value += iv.value;
        total_error += iv.error;
        queue.push(std::move(iv));
    };
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        push(evaluate_interval(f, breakpoints[i], breakpoints[i + 1],
                               res.evaluations));

    auto converged = [&]() {
        for (Eigen::Index k = 0; k < total_value.size(); ++k)
            if (total_error[k] >
                std::max(abs_tol, rel_tol * std::abs(total_value[k])))
                return false;
        return true;
    };

    while (!converged() && queue.size() < max_intervals) {
        Interval worst = queue.top();
        queue.pop();
        total_value -= worst.value;
        total_error -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        push(evaluate_interval(f, worst.a, mid, res.evaluations));
        push(evaluate_interval(f, mid, worst.b, res.evaluations));
    }

    res.value = total_value;
    res.error = total_error;
    res.converged = converged();
    res.intervals = queue.size();
    return res;
}

}  // namespace oemswap
