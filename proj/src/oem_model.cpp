#include "oemswap/oem_model.hpp"

#include "oemswap/lyapunov.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace oemswap {

const ModeParams& SystemParams::mode(char role) const {
    switch (role) {
        case 'b': return b;
        case 'c': return c;
        case 'w': return w;
        default: throw std::invalid_argument("SystemParams: unknown mode role");
    }
}

ModeParams& SystemParams::mode(char role) {
    return const_cast<ModeParams&>(std::as_const(*this).mode(role));
}

void SystemParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) {
            std::ostringstream os;
            os << "SystemParams: " << name << " must be positive";
            throw std::invalid_argument(os.str());
        }
    };
    positive(omega_m, "omega_m");
    positive(mass, "mass");
    if (!(q_m > 1.0))
        throw std::invalid_argument("SystemParams: q_m must exceed 1");
    if (temperature < 0.0)
        throw std::invalid_argument("SystemParams: temperature must be >= 0");
    for (char role : {'b', 'c', 'w'}) {
        const auto& m = mode(role);
        positive(m.wavelength, "wavelength");
        positive(m.kappa, "kappa");
        if (m.power < 0.0)
            throw std::invalid_argument("SystemParams: power must be >= 0");
        if (m.g < 0.0)
            throw std::invalid_argument("SystemParams: coupling must be >= 0");
    }
}

const DerivedMode& DerivedRates::mode(char role) const {
    switch (role) {
        case 'b': return b;
        case 'c': return c;
        case 'w': return w;
        default: throw std::invalid_argument("DerivedRates: unknown mode role");
    }
}

namespace {

double thermal_occupancy(double omega, double temperature) {
    if (temperature <= 0.0) return 0.0;
    const double x = constants::hbar * omega /
                     (constants::k_boltzmann * temperature);
    return 1.0 / std::expm1(x);
}

}  // namespace

DerivedRates derive_rates(const SystemParams& p) {
    p.validate();
    DerivedRates r;
    r.gamma_m = p.omega_m / p.q_m;
    r.nbar_m = thermal_occupancy(p.omega_m, p.temperature);

    double mean_q_numerator = 0.0;
    for (char role : {'b', 'c', 'w'}) {
        const auto& mp = p.mode(role);
        DerivedMode d;
        const double omega_drive =
            2.0 * std::numbers::pi * constants::c_light / mp.wavelength;
        d.drive_rate =
            std::sqrt(2.0 * mp.power * mp.kappa / (constants::hbar * omega_drive));
        d.alpha = d.drive_rate /
                  std::complex<double>(mp.kappa, mp.detuning);
        d.coupling = std::sqrt(2.0) * mp.g * std::abs(d.alpha);
        mean_q_numerator += mp.g * std::norm(d.alpha);
        if (role == 'w') r.nbar_w = thermal_occupancy(omega_drive, p.temperature);
        switch (role) {
            case 'b': r.b = d; break;
            case 'c': r.c = d; break;
            default: r.w = d; break;
        }
    }
    r.mean_position = mean_q_numerator / p.omega_m;
    return r;
}

Eigen::Matrix<double, 8, 8> drift_matrix(const DerivedRates& r,
                                         const SystemParams& p) {
    Eigen::Matrix<double, 8, 8> a = Eigen::Matrix<double, 8, 8>::Zero();
    a(0, 1) = p.omega_m;
    a(1, 0) = -p.omega_m;
    a(1, 1) = -r.gamma_m;
    int row = 2;
    for (char role : {'b', 'c', 'w'}) {
        const auto& mp = p.mode(role);
        const double g_eff = r.mode(role).coupling;
        a(row, row) = -mp.kappa;
        a(row, row + 1) = mp.detuning;
        a(row + 1, row) = -mp.detuning;
        a(row + 1, row + 1) = -mp.kappa;
        a(1, row) = g_eff;      // p row <- X_x
        a(row + 1, 0) = g_eff;  // Y_x row <- q
        row += 2;
    }
    return a;
}

Eigen::Matrix<double, 8, 8> diffusion_matrix(const DerivedRates& r,
                                             const SystemParams& p) {
    Eigen::Matrix<double, 8, 8> d = Eigen::Matrix<double, 8, 8>::Zero();
    d(1, 1) = r.gamma_m * (2.0 * r.nbar_m + 1.0);
    d(2, 2) = d(3, 3) = p.b.kappa;  // optical baths at zero occupancy
    d(4, 4) = d(5, 5) = p.c.kappa;
    d(6, 6) = d(7, 7) = p.w.kappa * (2.0 * r.nbar_w + 1.0);
    return d;
}

LinearModel build_linear_model(const DerivedRates& r, const SystemParams& p) {
    LinearModel m;
    m.drift = drift_matrix(r, p);
    m.diffusion = diffusion_matrix(r, p);
    m.omega_m = p.omega_m;
    m.gamma_m = r.gamma_m;
    m.kappa = {p.b.kappa, p.c.kappa, p.w.kappa};
    m.nbar_m = r.nbar_m;
    m.nbar_w = r.nbar_w;
    return m;
}

LinearModel build_linear_model(const SystemParams& p) {
    return build_linear_model(derive_rates(p), p);
}

StabilityReport check_stability(const LinearModel& m) {
    StabilityReport rep;
    Eigen::EigenSolver<Eigen::Matrix<double, 8, 8>> solver(m.drift, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("check_stability: eigensolver failed");
    const double margin = 1e-6 * m.omega_m;
    rep.spectral_abscissa = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < 8; ++i) {
        const std::complex<double> lambda = solver.eigenvalues()[i];
        rep.eigenvalues.push_back(lambda);
        rep.spectral_abscissa = std::max(rep.spectral_abscissa, lambda.real());
        if (lambda.real() >= -margin) rep.offending.push_back(lambda);
    }
    rep.stable = rep.offending.empty();
    return rep;
}

CovMatrix solve_lyapunov(const LinearModel& m, int site) {
    const auto rep = check_stability(m);
    if (!rep.stable) {
        std::ostringstream os;
        os << "solve_lyapunov: drift matrix is not stable "
           << "(spectral abscissa " << rep.spectral_abscissa
           << "); see check_stability";
        throw std::runtime_error(os.str());
    }
    Eigen::MatrixXd v = solve_continuous_lyapunov(m.drift, m.diffusion);
    return CovMatrix({ModeLabel{site, 'm'}, ModeLabel{site, 'b'},
                      ModeLabel{site, 'c'}, ModeLabel{site, 'w'}},
                     std::move(v));
}

}  // namespace oemswap
