#include "oemswap/lyapunov.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace oemswap {

Eigen::MatrixXd solve_continuous_lyapunov(const Eigen::MatrixXd& a,
                                          const Eigen::MatrixXd& q) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || q.rows() != n || q.cols() != n)
        throw std::invalid_argument("solve_continuous_lyapunov: size mismatch");

    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(a.cast<std::complex<double>>());
    if (schur.info() != Eigen::Success)
        throw std::runtime_error("solve_continuous_lyapunov: Schur failed");
    const Eigen::MatrixXcd t = schur.matrixT();
    const Eigen::MatrixXcd u = schur.matrixU();

    // T Y + Y T^T = -C with C = U^* Q conj(U); columns solved back to front,
    // each a triangular system (T + T_jj I) y_j = -c_j - sum_{k>j} T_jk y_k
    Eigen::MatrixXcd c = u.adjoint() * q * u.conjugate();
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        Eigen::VectorXcd rhs = -c.col(j);
        for (Eigen::Index k = j + 1; k < n; ++k) rhs -= t(j, k) * y.col(k);
        Eigen::MatrixXcd lhs = t;
        lhs.diagonal().array() += t(j, j);
        y.col(j) = lhs.triangularView<Eigen::Upper>().solve(rhs);
    }

    Eigen::MatrixXd x = (u * y * u.transpose()).real();
    return 0.5 * (x + x.transpose());
}

}  // namespace oemswap
