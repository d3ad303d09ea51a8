#include "oemswap/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oemswap {

namespace {

void require_symmetric(const Eigen::MatrixXd& v) {
    if (v.rows() != v.cols() || (v - v.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("expected a symmetric matrix");
    if (v.rows() % 2 != 0)
        throw std::invalid_argument("expected even dimension");
}

}  // namespace

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& v) {
    require_symmetric(v);
    const int n = static_cast<int>(v.rows()) / 2;
    const std::complex<double> im(0.0, 1.0);
    Eigen::MatrixXcd isv = im * symplectic_form(n) * v;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(isv, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symplectic_eigenvalues: eigensolver failed");
    std::vector<double> moduli(2 * n);
    for (int i = 0; i < 2 * n; ++i) moduli[i] = std::abs(solver.eigenvalues()[i]);
    std::sort(moduli.begin(), moduli.end());
    // moduli come in +/- pairs; keep one per pair
    const double scale = std::max(moduli.back(), 1.0);
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) {
        const double lo = moduli[2 * k], hi = moduli[2 * k + 1];
        if (hi - lo > 1e-9 * scale)
            throw std::runtime_error(
                "symplectic_eigenvalues: eigenvalue pairing failed");
        out[k] = 0.5 * (lo + hi);
    }
    return out;
}

std::vector<double> symplectic_eigenvalues(const CovMatrix& v) {
    return symplectic_eigenvalues(v.data());
}

double min_symplectic_eigenvalue(const CovMatrix& v) {
    return symplectic_eigenvalues(v.data()).front();
}

bool is_physical(const CovMatrix& v, double tol) {
    return min_symplectic_eigenvalue(v) >= 0.5 - tol;
}

CovMatrix partial_transpose(const CovMatrix& v,
                            const std::vector<ModeLabel>& transposed) {
    Eigen::VectorXd p = Eigen::VectorXd::Ones(v.dim());
    for (const auto& m : transposed) p[2 * v.index_of(m) + 1] = -1.0;
    Eigen::MatrixXd out = p.asDiagonal() * v.data() * p.asDiagonal();
    return CovMatrix(v.modes(), std::move(out));
}

double log_negativity(const CovMatrix& v, const std::vector<ModeLabel>& side_a,
                      const std::vector<ModeLabel>& side_b) {
    if (side_a.size() + side_b.size() != v.modes().size())
        throw std::invalid_argument("log_negativity: sides must partition modes");
    for (const auto& m : side_b)
        if (std::find(side_a.begin(), side_a.end(), m) != side_a.end())
            throw std::invalid_argument("log_negativity: overlapping bipartition");
    for (const auto& m : side_a) (void)v.index_of(m);
    for (const auto& m : side_b) (void)v.index_of(m);
    if (!is_physical(v))
        throw std::invalid_argument("log_negativity: unphysical covariance matrix");
    const double eta = min_symplectic_eigenvalue(partial_transpose(v, side_a));
    const double en = -std::log(2.0 * eta);
    // snap floating-point dust on separable states to an exact zero
    return en > 1e-12 ? en : 0.0;
}

double purity(const Eigen::MatrixXd& v) {
    require_symmetric(v);
    const int n = static_cast<int>(v.rows()) / 2;
    const double det = v.determinant();
    if (det <= 0.0)
        throw std::invalid_argument("purity: non-positive determinant");
    return 1.0 / (std::pow(2.0, n) * std::sqrt(det));
}

double purity(const CovMatrix& v) { return purity(v.data()); }

CovMatrix beamsplitter_apply(const CovMatrix& v, const ModeLabel& mode_a,
                             const ModeLabel& mode_b) {
    if (mode_a == mode_b)
        throw std::invalid_argument("beamsplitter_apply: identical modes");
    const int ia = 2 * v.index_of(mode_a);
    const int ib = 2 * v.index_of(mode_b);
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(v.dim(), v.dim());
    // (a, b) -> ((a+b)/sqrt2, (b-a)/sqrt2), per quadrature
    for (int q = 0; q < 2; ++q) {
        s(ia + q, ia + q) = r;
        s(ia + q, ib + q) = r;
        s(ib + q, ia + q) = -r;
        s(ib + q, ib + q) = r;
    }
    Eigen::MatrixXd out = s * v.data() * s.transpose();
    out = 0.5 * (out + out.transpose()).eval();
    return CovMatrix(v.modes(), std::move(out));
}

CovMatrix homodyne_condition(
    const CovMatrix& v,
    const std::vector<std::pair<ModeLabel, Quadrature>>& measurements) {
    if (measurements.empty()) return v;
    if (measurements.size() >= v.modes().size())
        throw std::invalid_argument("homodyne_condition: cannot measure all modes");
    std::vector<ModeLabel> measured;
    std::vector<int> sel;  // measured quadrature indices in v
    for (const auto& [m, q] : measurements) {
        if (std::find(measured.begin(), measured.end(), m) != measured.end())
            throw std::invalid_argument("homodyne_condition: mode measured twice");
        measured.push_back(m);
        sel.push_back(2 * v.index_of(m) + (q == Quadrature::X ? 0 : 1));
    }
    std::vector<ModeLabel> kept;
    std::vector<int> kq;  // retained quadrature indices
    for (const auto& m : v.modes()) {
        if (std::find(measured.begin(), measured.end(), m) != measured.end())
            continue;
        kept.push_back(m);
        kq.push_back(2 * v.index_of(m));
        kq.push_back(2 * v.index_of(m) + 1);
    }

    const auto nr = static_cast<Eigen::Index>(kq.size());
    const auto nm = static_cast<Eigen::Index>(sel.size());
    Eigen::MatrixXd vr(nr, nr), cross(nr, nm), vm(nm, nm);
    for (Eigen::Index i = 0; i < nr; ++i) {
        for (Eigen::Index j = 0; j < nr; ++j) vr(i, j) = v.data()(kq[i], kq[j]);
        for (Eigen::Index j = 0; j < nm; ++j) cross(i, j) = v.data()(kq[i], sel[j]);
    }
    for (Eigen::Index i = 0; i < nm; ++i)
        for (Eigen::Index j = 0; j < nm; ++j) vm(i, j) = v.data()(sel[i], sel[j]);

    // pseudoinverse of the measured block, relative threshold 1e-12
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(vm,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cutoff = 1e-12 * svd.singularValues().maxCoeff();
    Eigen::VectorXd inv_sv = svd.singularValues();
    for (Eigen::Index i = 0; i < inv_sv.size(); ++i)
        inv_sv[i] = inv_sv[i] > cutoff ? 1.0 / inv_sv[i] : 0.0;
    Eigen::MatrixXd pinv =
        svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();

    Eigen::MatrixXd out = vr - cross * pinv * cross.transpose();
    out = 0.5 * (out + out.transpose()).eval();
    return CovMatrix(std::move(kept), std::move(out));
}

CovMatrix apply_local_symplectic(const CovMatrix& v, const ModeLabel& mode,
                                 const Eigen::Matrix2d& s) {
    if (std::abs(s.determinant() - 1.0) > 1e-9)
        throw std::invalid_argument("apply_local_symplectic: det(S) must be 1");
    Eigen::MatrixXd full = Eigen::MatrixXd::Identity(v.dim(), v.dim());
    full.block<2, 2>(2 * v.index_of(mode), 2 * v.index_of(mode)) = s;
    Eigen::MatrixXd out = full * v.data() * full.transpose();
    out = 0.5 * (out + out.transpose()).eval();
    return CovMatrix(v.modes(), std::move(out));
}

namespace {

// Local symplectic bringing a 2x2 SPD block M to sqrt(det M) * I:
// S = (det M)^{1/4} M^{-1/2}.
Eigen::Matrix2d isotropizing_symplectic(const Eigen::Matrix2d& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("standard_form_two_mode: block not positive");
    Eigen::Matrix2d inv_sqrt = es.operatorInverseSqrt();
    const double scale = std::sqrt(std::sqrt(m.determinant()));
    return scale * inv_sqrt;
}

}  // namespace

StandardFormResult standard_form_two_mode(const CovMatrix& v) {
    if (v.num_modes() != 2)
        throw std::invalid_argument("standard_form_two_mode: need exactly 2 modes");
    const Eigen::Matrix2d w = v.data().block<2, 2>(0, 0);
    const Eigen::Matrix2d b = v.data().block<2, 2>(2, 2);
    const Eigen::Matrix2d c = v.data().block<2, 2>(0, 2);

    const Eigen::Matrix2d s1 = isotropizing_symplectic(w);
    const Eigen::Matrix2d s2 = isotropizing_symplectic(b);
    Eigen::Matrix2d cp = s1 * c * s2.transpose();

    // rotate both sides to diagonalize the cross block; rotations keep the
    // isotropic diagonal blocks untouched
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(cp,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix2d u = svd.matrixU();
    Eigen::Matrix2d t = svd.matrixV();
    Eigen::Vector2d sv = svd.singularValues();
    if (u.determinant() < 0.0) {
        u.col(1) *= -1.0;
        sv[1] *= -1.0;
    }
    if (t.determinant() < 0.0) {
        t.col(1) *= -1.0;
        sv[1] *= -1.0;
    }

    StandardFormResult res{
        CovMatrix::vacuum(v.modes()),  // placeholder, replaced below
        u.transpose() * s1,
        t.transpose() * s2,
        std::sqrt(w.determinant()),
        std::sqrt(b.determinant()),
        sv[0],
        sv[1]};

    Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
    out.block<2, 2>(0, 0) = res.a * Eigen::Matrix2d::Identity();
    out.block<2, 2>(2, 2) = res.b * Eigen::Matrix2d::Identity();
    out(0, 2) = res.c_plus;
    out(1, 3) = res.c_minus;
    out(2, 0) = res.c_plus;
    out(3, 1) = res.c_minus;
    res.cm = CovMatrix(v.modes(), out);
    return res;
}

}  // namespace oemswap
