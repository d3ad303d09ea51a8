#pragma once

#include "oemswap/covmatrix.hpp"

#include <utility>
#include <vector>

namespace oemswap {

enum class Quadrature { X, Y };

/// Moduli of the eigenvalues of i*Sigma*V, one per +/- pair, sorted
/// ascending.  A physical state has all values >= 1/2.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& v);
std::vector<double> symplectic_eigenvalues(const CovMatrix& v);

double min_symplectic_eigenvalue(const CovMatrix& v);
bool is_physical(const CovMatrix& v, double tol = 1e-10);

/// Sign-flips the Y quadrature of the selected modes (V -> PVP).
CovMatrix partial_transpose(const CovMatrix& v,
                            const std::vector<ModeLabel>& transposed);

/// max{0, -ln(2*eta_-)} with eta_- the minimum symplectic eigenvalue of the
/// partial transpose over side_a.  side_a and side_b must partition the
/// modes of v; v must be physical.
double log_negativity(const CovMatrix& v, const std::vector<ModeLabel>& side_a,
                      const std::vector<ModeLabel>& side_b);

/// Purity (2^N sqrt(det V))^{-1}; equals 1 iff the state is pure.
double purity(const CovMatrix& v);
double purity(const Eigen::MatrixXd& v);

/// Balanced beam splitter acting as (a,b) -> ((a+b)/sqrt2, (b-a)/sqrt2)
/// on the two selected modes, identity elsewhere: V -> S V S^T.
CovMatrix beamsplitter_apply(const CovMatrix& v, const ModeLabel& mode_a,
                             const ModeLabel& mode_b);

/// Conditional CM of the unmeasured modes after ideal homodyne detection of
/// one quadrature per measured mode (Schur complement with pseudoinverse,
/// relative singular-value threshold 1e-12).  Measured modes are removed
/// from the label list; the result is outcome independent.
CovMatrix homodyne_condition(
    const CovMatrix& v,
    const std::vector<std::pair<ModeLabel, Quadrature>>& measurements);

/// Applies a single-mode symplectic (2x2, det 1) to one mode of v.
CovMatrix apply_local_symplectic(const CovMatrix& v, const ModeLabel& mode,
                                 const Eigen::Matrix2d& s);

/// Two-mode standard form: diagonal blocks a*I and b*I, off-diagonal
/// diag(c_plus, c_minus) with c_plus >= |c_minus|, c_plus >= 0, together
/// with the local symplectics that realize it.
struct StandardFormResult {
    CovMatrix cm;
    Eigen::Matrix2d local_a;  // applied to the first mode
    Eigen::Matrix2d local_b;  // applied to the second mode
    double a = 0.0;
    double b = 0.0;
    double c_plus = 0.0;
    double c_minus = 0.0;
};

StandardFormResult standard_form_two_mode(const CovMatrix& v);

}  // namespace oemswap
