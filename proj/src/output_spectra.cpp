#include "oemswap/output_spectra.hpp"

#include "oemswap/lyapunov.hpp"
#include "oemswap/oem_model.hpp"
#include "oemswap/quadrature.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oemswap {

const FilterSpec& FilterBank::mode(char role) const {
    switch (role) {
        case 'b': return b;
        case 'c': return c;
        case 'w': return w;
        default: throw std::invalid_argument("FilterBank: unknown mode role");
    }
}

std::complex<double> filter_transfer(const FilterSpec& f, double omega) {
    if (!(f.tau > 0.0))
        throw std::invalid_argument("filter_transfer: tau must be positive");
    return std::sqrt(2.0 / f.tau) /
           std::complex<double>(1.0 / f.tau, -(omega - f.omega));
}

Eigen::MatrixXcd frequency_transfer(const LinearModel& m, double omega) {
    const std::complex<double> im(0.0, 1.0);
    Eigen::MatrixXcd lhs =
        -im * omega * Eigen::MatrixXcd::Identity(8, 8) -
        m.drift.cast<std::complex<double>>();
    return lhs.partialPivLu().inverse();
}

namespace {

// Elementary noise basis: v = (xi, X_b^in, Y_b^in, X_c^in, Y_c^in,
// X_w^in, Y_w^in).

// 8x7 injection of the elementary noises into the equations of motion.
Eigen::MatrixXd noise_injection(const LinearModel& m) {
    Eigen::MatrixXd n = Eigen::MatrixXd::Zero(8, 7);
    n(1, 0) = 1.0;  // Brownian force on p
    for (int ch = 0; ch < 3; ++ch) {
        const double s = std::sqrt(2.0 * m.kappa[ch]);
        n(2 + 2 * ch, 1 + 2 * ch) = s;
        n(3 + 2 * ch, 2 + 2 * ch) = s;
    }
    return n;
}

// 6x8 selection of the cavity quadratures scaled by sqrt(2 kappa).
Eigen::MatrixXd cavity_pickoff(const LinearModel& m) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(6, 8);
    for (int ch = 0; ch < 3; ++ch) {
        const double s = std::sqrt(2.0 * m.kappa[ch]);
        c(2 * ch, 2 + 2 * ch) = s;
        c(2 * ch + 1, 3 + 2 * ch) = s;
    }
    return c;
}

// 6x7 reflected-input subtraction of a^out = sqrt(2 kappa) a - a^in.
Eigen::MatrixXd input_reflection() {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(6, 7);
    for (int q = 0; q < 6; ++q) e(q, 1 + q) = 1.0;
    return e;
}

// Full (unsymmetrized) spectral matrix of the elementary noises: the cavity
// inputs carry (nbar + 1/2) I + (i/2) J per channel; the commutator part is
// what keeps filtered vacuum at exactly I/2.
Eigen::MatrixXcd noise_spectrum(const LinearModel& m) {
    const std::complex<double> im(0.0, 1.0);
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(7, 7);
    s(0, 0) = m.gamma_m * (2.0 * m.nbar_m + 1.0);
    const double occ[3] = {0.0, 0.0, m.nbar_w};
    for (int ch = 0; ch < 3; ++ch) {
        const int i = 1 + 2 * ch;
        s(i, i) = s(i + 1, i + 1) = occ[ch] + 0.5;
        s(i, i + 1) = im * 0.5;
        s(i + 1, i) = -im * 0.5;
    }
    return s;
}

// 2x2 quadrature action of a scalar filter: built from h+ = h~(omega) and
// h- = h~(-omega)^* acting on the annihilation/creation components.
Eigen::Matrix2cd filter_quadrature_block(const FilterSpec& f, double omega) {
    const std::complex<double> im(0.0, 1.0);
    const std::complex<double> hp = filter_transfer(f, omega);
    const std::complex<double> hm = std::conj(filter_transfer(f, -omega));
    Eigen::Matrix2cd blk;
    blk << 0.5 * (hp + hm), 0.5 * im * (hp - hm),
        -0.5 * im * (hp - hm), 0.5 * (hp + hm);
    return blk;
}

std::vector<ModeLabel> output_labels(int site) {
    return {ModeLabel{site, 'b'}, ModeLabel{site, 'c'}, ModeLabel{site, 'w'}};
}

void require_stable(const LinearModel& m, const char* who) {
    if (!check_stability(m).stable)
        throw std::runtime_error(std::string(who) + ": model is not stable");
}

}  // namespace

Eigen::MatrixXcd output_transfer(const LinearModel& m, double omega) {
    return cavity_pickoff(m) * frequency_transfer(m, omega) * noise_injection(m) -
           input_reflection();
}

OutputCM output_cm(const LinearModel& m, const FilterBank& filters, int site) {
    require_stable(m, "output_cm");
    for (char role : {'b', 'c', 'w'})
        if (!(filters.mode(role).tau > 0.0))
            throw std::invalid_argument("output_cm: filter tau must be positive");

    const Eigen::MatrixXd pick = cavity_pickoff(m);
    const Eigen::MatrixXd inject = noise_injection(m);
    const Eigen::MatrixXd reflect = input_reflection();
    const Eigen::MatrixXcd spec = noise_spectrum(m);

    // symmetrized spectral density of the six filtered output quadratures,
    // packed as the 21 upper-triangle entries
    auto integrand = [&](double omega) {
        Eigen::MatrixXcd t =
            pick * frequency_transfer(m, omega) * inject - reflect;
        Eigen::MatrixXcd g(6, 7);
        for (int ch = 0; ch < 3; ++ch) {
            const char role = "bcw"[ch];
            g.middleRows<2>(2 * ch) =
                filter_quadrature_block(filters.mode(role), omega) *
                t.middleRows<2>(2 * ch);
        }
        const Eigen::MatrixXcd phi = g * spec * g.adjoint();
        Eigen::VectorXd packed(21);
        int idx = 0;
        for (int i = 0; i < 6; ++i)
            for (int j = i; j < 6; ++j) packed[idx++] = phi(i, j).real();
        return packed;
    };

    // compactify the whole real line: omega = scale * tan(u)
    double max_abs_omega = 0.0, min_inv_tau = std::numeric_limits<double>::max();
    for (char role : {'b', 'c', 'w'}) {
        max_abs_omega = std::max(max_abs_omega, std::abs(filters.mode(role).omega));
        min_inv_tau = std::min(min_inv_tau, 1.0 / filters.mode(role).tau);
    }
    const double max_kappa = std::max({m.kappa[0], m.kappa[1], m.kappa[2]});
    const double scale =
        std::max({m.omega_m, max_abs_omega, max_kappa, min_inv_tau});

    std::vector<double> seeds{0.0, m.omega_m, -m.omega_m, 2.0 * max_kappa,
                              -2.0 * max_kappa};
    for (char role : {'b', 'c', 'w'}) {
        const auto& f = filters.mode(role);
        for (double k : {0.0, 1.0, -1.0, 10.0, -10.0, 100.0, -100.0})
            seeds.push_back(f.omega + k / f.tau);
        seeds.push_back(-f.omega);
    }
    std::vector<double> breakpoints{-std::numbers::pi / 2.0,
                                    std::numbers::pi / 2.0};
    for (double w : seeds) breakpoints.push_back(std::atan(w / scale));

    auto mapped = [&](double u) -> Eigen::VectorXd {
        const double c = std::cos(u);
        if (std::abs(c) < 1e-300) return Eigen::VectorXd::Zero(21);
        const double w = scale * std::tan(u);
        return integrand(w) * scale / (c * c);
    };

    const QuadratureResult quad =
        integrate_adaptive(mapped, breakpoints, 1e-9, 1e-12);
    if (!quad.converged)
        throw std::runtime_error(
            "output_cm: spectral integration failed its error target");

    Eigen::MatrixXd v(6, 6);
    int idx = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) {
            v(i, j) = quad.value[idx] / (2.0 * std::numbers::pi);
            v(j, i) = v(i, j);
            ++idx;
        }

    OutputCM out{CovMatrix(output_labels(site), std::move(v)), filters, {}};
    out.diag.max_error = quad.error.maxCoeff() / (2.0 * std::numbers::pi);
    out.diag.window = scale;
    out.diag.evaluations = quad.evaluations;
    out.diag.intervals = quad.intervals;
    return out;
}

OutputCM output_cm_cascaded_oracle(const LinearModel& m,
                                   const FilterBank& filters, int site) {
    require_stable(m, "output_cm_cascaded_oracle");

    // augment with one auxiliary cavity per channel: decay 1/tau, detuning
    // Omega, driven by a^out = sqrt(2 kappa) a - a^in (no back action)
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(14, 14);
    a.topLeftCorner<8, 8>() = m.drift;
    Eigen::MatrixXd inject = Eigen::MatrixXd::Zero(14, 7);
    inject.topLeftCorner<8, 7>() = noise_injection(m);

    for (int ch = 0; ch < 3; ++ch) {
        const auto& f = filters.mode("bcw"[ch]);
        const int r = 8 + 2 * ch;   // filter-mode rows
        const int cav = 2 + 2 * ch; // driving cavity quadratures
        const double feed = std::sqrt(2.0 / f.tau);
        a(r, r) = a(r + 1, r + 1) = -1.0 / f.tau;
        a(r, r + 1) = f.omega;
        a(r + 1, r) = -f.omega;
        a(r, cav) = feed * std::sqrt(2.0 * m.kappa[ch]);
        a(r + 1, cav + 1) = feed * std::sqrt(2.0 * m.kappa[ch]);
        inject(r, 1 + 2 * ch) = -feed;
        inject(r + 1, 2 + 2 * ch) = -feed;
    }

    Eigen::MatrixXd s_sym = Eigen::MatrixXd::Zero(7, 7);
    s_sym(0, 0) = m.gamma_m * (2.0 * m.nbar_m + 1.0);
    const double occ[3] = {0.0, 0.0, m.nbar_w};
    for (int ch = 0; ch < 3; ++ch)
        s_sym(1 + 2 * ch, 1 + 2 * ch) = s_sym(2 + 2 * ch, 2 + 2 * ch) =
            occ[ch] + 0.5;
    const Eigen::MatrixXd d = inject * s_sym * inject.transpose();

    const Eigen::MatrixXd v_full = solve_continuous_lyapunov(a, d);
    Eigen::MatrixXd v = v_full.bottomRightCorner<6, 6>();
    v = 0.5 * (v + v.transpose()).eval();

    OutputCM out{CovMatrix(output_labels(site), std::move(v)), filters, {}};
    out.diag.window = 0.0;
    return out;
}

nlohmann::json OutputCM::to_json() const {
    nlohmann::json j;
    j["cm"] = cm.to_json();
    for (char role : {'b', 'c', 'w'}) {
        const auto& f = filters.mode(role);
        j["filters"][std::string(1, role)] = {{"tau", f.tau},
                                              {"omega", f.omega}};
    }
    j["diagnostics"] = {{"max_error", diag.max_error},
                        {"window", diag.window},
                        {"evaluations", diag.evaluations},
                        {"intervals", diag.intervals}};
    return j;
}

}  // namespace oemswap
