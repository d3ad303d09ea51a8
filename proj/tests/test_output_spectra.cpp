#include "oemswap/output_spectra.hpp"

#include "oemswap/gaussian.hpp"
#include "support/oracles.hpp"
#include "support/random_states.hpp"

#include <doctest.h>

#include <cmath>

using namespace oemswap;
using oemswap::testing::random_stable_params;
using oemswap::testing::simpson;

namespace {

FilterBank uniform_bank(double tau, double omega) {
    return FilterBank{{tau, omega}, {tau, omega}, {tau, omega}};
}

SystemParams decoupled_params(double temperature = 0.0) {
    SystemParams p = reference_params();
    p.b.power = p.c.power = p.w.power = 0.0;
    p.temperature = temperature;
    return p;
}

}  // namespace

TEST_CASE("filter transfer function") {
    const double omega_m = reference_params().omega_m;
    const FilterSpec f{500.0 / omega_m, omega_m};

    SUBCASE("peak location and height") {
        CHECK(std::abs(filter_transfer(f, f.omega)) ==
              doctest::Approx(std::sqrt(2.0 * f.tau)).epsilon(1e-12));
        CHECK(std::abs(filter_transfer(f, f.omega + 3.0 / f.tau)) <
              std::abs(filter_transfer(f, f.omega)));
        CHECK(std::abs(filter_transfer(f, f.omega - 3.0 / f.tau)) <
              std::abs(filter_transfer(f, f.omega)));
    }

    SUBCASE("L2 normalization by independent quadrature") {
        // |h|^2 is a Lorentzian of half width 1/tau around Omega; integrate a
        // generous multiple of the width with plain Simpson plus the exact
        // tail of the Lorentzian
        const double half_width = 1.0 / f.tau;
        const double wing = 2.0e4 * half_width;
        const auto integrand = [&](double w) {
            return std::norm(filter_transfer(f, w));
        };
        const double core = simpson(integrand, f.omega - wing, f.omega + wing,
                                    200000) /
                            (2.0 * M_PI);
        // analytic tails: (2/tau)/( (1/tau)^2 + x^2 ) integrated from wing
        const double tail =
            2.0 * (2.0 / f.tau) / half_width *
            (M_PI / 2.0 - std::atan(wing / half_width)) / (2.0 * M_PI);
        CHECK(core + tail == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("narrowband limit concentrates all weight") {
        const FilterSpec narrow{5e5 / omega_m, omega_m};
        const double window = 100.0 / narrow.tau;
        const auto integrand = [&](double w) {
            return std::norm(filter_transfer(narrow, w));
        };
        const double inside = simpson(integrand, narrow.omega - window,
                                      narrow.omega + window, 40000) /
                              (2.0 * M_PI);
        CHECK(inside > 0.99);
    }
}

TEST_CASE("frequency transfer on an abstract model") {
    LinearModel m{};
    const double kappa = 3.0;
    m.drift = -kappa * Eigen::Matrix<double, 8, 8>::Identity();
    m.diffusion = kappa * Eigen::Matrix<double, 8, 8>::Identity();
    m.omega_m = 1.0;
    m.kappa = {kappa, kappa, kappa};

    const auto transfer = frequency_transfer(m, 0.0);
    CHECK((transfer - Eigen::MatrixXcd::Identity(8, 8) / kappa).norm() <
          1e-12);

    // at omega != 0: M = (kappa - i omega)^{-1} I
    const double w = 1.7;
    const std::complex<double> expected =
        1.0 / std::complex<double>(kappa, -w);
    CHECK(std::abs(frequency_transfer(m, w)(4, 4) - expected) < 1e-12);
}

TEST_CASE("empty cavities give flat vacuum output spectra") {
    const auto model = build_linear_model(decoupled_params());
    for (double w : {-2.0e8, -1.0e7, 0.0, 5.0e6, 3.0e8}) {
        const auto t = output_transfer(model, w);
        // S(w) = T S_in T^dagger with vacuum inputs must give 1/2 per
        // quadrature; with G = 0 the scattering is diagonal unitary
        Eigen::MatrixXcd s_in =
            0.5 * Eigen::MatrixXcd::Identity(7, 7);
        const Eigen::MatrixXcd out = t * s_in * t.adjoint();
        for (int i = 0; i < 6; ++i)
            CHECK(std::abs(out(i, i) - 0.5) < 1e-10);
    }
}

TEST_CASE("microwave output spectrum peaks near the mechanical sideband") {
    const auto model = build_linear_model(reference_params());
    const double omega_m = model.omega_m;
    const auto spectrum_xw = [&](double w) {
        const auto t = output_transfer(model, w);
        Eigen::MatrixXcd s_in = Eigen::MatrixXcd::Zero(7, 7);
        s_in(0, 0) = model.gamma_m * (2.0 * model.nbar_m + 1.0) /
                     (model.gamma_m > 0 ? model.gamma_m : 1.0);
        // full vacuum+thermal symmetrized inputs
        s_in = Eigen::MatrixXcd::Identity(7, 7) * 0.5;
        s_in(0, 0) = (2.0 * model.nbar_m + 1.0) / 2.0;
        s_in(5, 5) = s_in(6, 6) = (2.0 * model.nbar_w + 1.0) / 2.0;
        return std::real((t * s_in * t.adjoint())(4, 4));
    };
    const double at_peak = spectrum_xw(omega_m);
    CHECK(at_peak > 2.0 * spectrum_xw(0.0));
    CHECK(at_peak > 2.0 * spectrum_xw(2.0 * omega_m));
}

TEST_CASE("filtered vacuum is exactly vacuum") {
    const auto model = build_linear_model(decoupled_params());
    const auto bank = reference_filters(model.omega_m);
    const auto out = output_cm(model, bank);
    CHECK((out.cm.data() - 0.5 * Eigen::MatrixXd::Identity(6, 6))
              .cwiseAbs()
              .maxCoeff() < 1e-6);
    CHECK(out.cm.modes() ==
          std::vector<ModeLabel>{{1, 'b'}, {1, 'c'}, {1, 'w'}});
    CHECK(out.diag.max_error < 1e-6);
}

TEST_CASE("thermal passthrough of the hot microwave bath") {
    SystemParams p = decoupled_params(0.1);  // 100 mK
    const auto model = build_linear_model(p);
    const auto out = output_cm(model, reference_filters(model.omega_m));

    // analytic oracle: an empty cavity reflects its thermal input, so the
    // filtered variance is (nbar_w + 1/2) independent of the filter
    const double expected = model.nbar_w + 0.5;
    const ModeLabel w_label{1, 'w'};
    const auto w_block = out.cm.mode_block(w_label, w_label);
    CHECK(std::abs(w_block(0, 0) - expected) < 1e-6);
    CHECK(std::abs(w_block(1, 1) - expected) < 1e-6);
    CHECK(std::abs(w_block(0, 1)) < 1e-6);

    for (char role : {'b', 'c'}) {
        const ModeLabel label{1, role};
        CHECK((out.cm.mode_block(label, label) -
               0.5 * Eigen::Matrix2d::Identity())
                  .cwiseAbs()
                  .maxCoeff() < 1e-6);
    }
}

TEST_CASE("reference point output state") {
    const auto model = build_linear_model(reference_params());
    const auto out = output_cm(model, reference_filters(model.omega_m));

    SUBCASE("physical") {
        CHECK(min_symplectic_eigenvalue(out.cm) >= 0.5 - 1e-6);
    }

    SUBCASE("optical-microwave entanglement present") {
        const auto bw = out.cm.reduced({{1, 'b'}, {1, 'w'}});
        CHECK(log_negativity(bw, {ModeLabel{1, 'b'}}, {ModeLabel{1, 'w'}}) >
              0.0);
    }

    SUBCASE("cascaded oracle agrees entrywise") {
        const auto oracle =
            output_cm_cascaded_oracle(model, reference_filters(model.omega_m));
        CHECK((out.cm.data() - oracle.cm.data()).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("cascaded oracle on decoupled vacuum") {
    const auto model = build_linear_model(decoupled_params());
    const auto out =
        output_cm_cascaded_oracle(model, reference_filters(model.omega_m));
    CHECK((out.cm.data() - 0.5 * Eigen::MatrixXd::Identity(6, 6))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
}

TEST_CASE("cascaded oracle reproduces thermal passthrough") {
    const auto model = build_linear_model(decoupled_params(0.1));
    const auto out =
        output_cm_cascaded_oracle(model, reference_filters(model.omega_m));
    const ModeLabel w_label{1, 'w'};
    const double expected = model.nbar_w + 0.5;
    CHECK(std::abs(out.cm.mode_block(w_label, w_label)(0, 0) - expected) <
          1e-6);
    CHECK(std::abs(out.cm.mode_block(w_label, w_label)(1, 1) - expected) <
          1e-6);
}

TEST_CASE("route agreement over random stable draws") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        const auto model = build_linear_model(random_stable_params(rng));
        const auto bank = reference_filters(model.omega_m, 300.0);
        const auto a = output_cm(model, bank);
        const auto b = output_cm_cascaded_oracle(model, bank);
        CHECK((a.cm.data() - b.cm.data()).cwiseAbs().maxCoeff() < 1e-6);
        CHECK(min_symplectic_eigenvalue(a.cm) >= 0.5 - 1e-6);
    }
}

TEST_CASE("downstream smoothness across adjacent filter bandwidths") {
    const auto model = build_linear_model(reference_params());
    double previous = -1.0;
    for (double tau_scaled : {400.0, 440.0, 480.0, 520.0}) {
        const auto out =
            output_cm(model, reference_filters(model.omega_m, tau_scaled));
        const double en =
            log_negativity(out.cm.reduced({{1, 'b'}, {1, 'w'}}),
                           {ModeLabel{1, 'b'}}, {ModeLabel{1, 'w'}});
        if (previous >= 0.0)
            CHECK(std::abs(en - previous) < 0.1 * std::max(previous, 1e-6));
        previous = en;
    }
}
