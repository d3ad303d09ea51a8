#pragma once

#include <Eigen/Dense>

namespace oemswap {

/// Solves the continuous Lyapunov equation A X + X A^T + Q = 0 for X by a
/// Bartels-Stewart style reduction (complex Schur form of A, triangular
/// back substitution).  Requires A Hurwitz; Q symmetric.
Eigen::MatrixXd solve_continuous_lyapunov(const Eigen::MatrixXd& a,
                                          const Eigen::MatrixXd& q);

}  // namespace oemswap
