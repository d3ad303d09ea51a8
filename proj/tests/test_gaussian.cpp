#include "oemswap/gaussian.hpp"

#include "support/random_states.hpp"

#include <doctest.h>

#include <cmath>

using namespace oemswap;
using oemswap::testing::random_physical_cm;
using oemswap::testing::random_symplectic;
using oemswap::testing::rotation2;
using oemswap::testing::tms_cm;

namespace {

const ModeLabel m1{1, 'w'};
const ModeLabel m2{1, 'b'};

CovMatrix thermal(double nu, ModeLabel label) {
    return CovMatrix({label}, (nu / 2.0) * Eigen::Matrix2d::Identity());
}

}  // namespace

TEST_CASE("symplectic eigenvalues of elementary states") {
    auto vac = CovMatrix::vacuum({m1, m2, ModeLabel{1, 'c'}});
    for (double nu : symplectic_eigenvalues(vac)) CHECK(nu == doctest::Approx(0.5));

    CHECK(symplectic_eigenvalues(thermal(3.0, m1))[0] == doctest::Approx(1.5));

    const auto tms = tms_cm(0.5, m1, m2);
    const auto nus = symplectic_eigenvalues(tms);
    REQUIRE(nus.size() == 2);
    CHECK(nus[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(nus[1] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("symplectic eigenvalues reject bad input") {
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 0.5, 0.0, 1.0;
    CHECK_THROWS_AS(symplectic_eigenvalues(bad), std::invalid_argument);
    CHECK_THROWS_AS(symplectic_eigenvalues(Eigen::MatrixXd::Identity(3, 3)),
                    std::invalid_argument);
}

TEST_CASE("partial transpose") {
    auto vac = CovMatrix::vacuum({m1, m2});
    CHECK(partial_transpose(vac, {m2}).data().isApprox(vac.data()));

    const auto tms = tms_cm(0.5, m1, m2);
    auto twice = partial_transpose(partial_transpose(tms, {m2}), {m2});
    CHECK(twice.data().isApprox(tms.data()));

    CHECK(min_symplectic_eigenvalue(partial_transpose(tms, {m2})) ==
          doctest::Approx(0.18393972058572117).epsilon(1e-10));

    CHECK_THROWS_AS(partial_transpose(vac, {ModeLabel{7, 'c'}}),
                    std::invalid_argument);
}

TEST_CASE("log negativity") {
    auto vac = CovMatrix::vacuum({m1, m2});
    CHECK(log_negativity(vac, {m1}, {m2}) == 0.0);

    CHECK(log_negativity(tms_cm(0.5, m1, m2), {m1}, {m2}) ==
          doctest::Approx(1.0).epsilon(1e-10));

    Eigen::Matrix4d prod = Eigen::Matrix4d::Zero();
    prod.block<2, 2>(0, 0) = 1.5 * Eigen::Matrix2d::Identity();
    prod.block<2, 2>(2, 2) = 2.5 * Eigen::Matrix2d::Identity();
    CHECK(log_negativity(CovMatrix({m1, m2}, prod), {m1}, {m2}) == 0.0);

    // unphysical input rejected
    CovMatrix squeezed_too_far({m1, m2},
                               0.1 * Eigen::Matrix4d::Identity());
    CHECK_THROWS_AS(log_negativity(squeezed_too_far, {m1}, {m2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(log_negativity(vac, {m1}, {m1}), std::invalid_argument);
}

TEST_CASE("purity") {
    CHECK(purity(CovMatrix::vacuum({m1, m2})) == doctest::Approx(1.0));
    CHECK(purity(thermal(3.0, m1)) == doctest::Approx(1.0 / 3.0));
    CHECK(purity(tms_cm(0.8, m1, m2)) == doctest::Approx(1.0).epsilon(1e-10));

    Eigen::Matrix2d negdet;
    negdet << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(purity(CovMatrix({m1}, negdet)), std::invalid_argument);
}

TEST_CASE("beam splitter") {
    auto vac = CovMatrix::vacuum({m1, m2});
    CHECK(beamsplitter_apply(vac, m1, m2).data().isApprox(vac.data()));
    CHECK_THROWS_AS(beamsplitter_apply(vac, m1, m1), std::invalid_argument);

    const double r = 0.7;
    auto split = beamsplitter_apply(tms_cm(r, m1, m2), m1, m2);
    // TMS decomposes into two independent single-mode squeezed states
    CHECK(split.mode_block(m1, m2).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(split.mode_block(m1, m1)(0, 0) ==
          doctest::Approx(std::exp(2.0 * r) / 2.0));
    CHECK(split.mode_block(m1, m1)(1, 1) ==
          doctest::Approx(std::exp(-2.0 * r) / 2.0));

    // symplectic spectrum is unchanged
    std::mt19937_64 rng(11);
    auto v = random_physical_cm({m1, m2}, rng);
    auto mixed = beamsplitter_apply(v, m1, m2);
    auto before = symplectic_eigenvalues(v);
    auto after = symplectic_eigenvalues(mixed);
    for (std::size_t i = 0; i < before.size(); ++i)
        CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-9));
    CHECK(mixed.data().determinant() ==
          doctest::Approx(v.data().determinant()).epsilon(1e-12));
}

TEST_CASE("homodyne conditioning") {
    const ModeLabel m3{1, 'c'};

    SUBCASE("product state: unmeasured factors untouched") {
        Eigen::MatrixXd v = Eigen::MatrixXd::Zero(6, 6);
        v.block<4, 4>(0, 0) = tms_cm(0.4, m1, m2).data();
        v.block<2, 2>(4, 4) = 1.7 * Eigen::Matrix2d::Identity();
        auto cond = homodyne_condition(CovMatrix({m1, m2, m3}, v),
                                       {{m3, Quadrature::X}});
        CHECK(cond.modes() == std::vector<ModeLabel>{m1, m2});
        CHECK(cond.data().isApprox(tms_cm(0.4, m1, m2).data(), 1e-12));
    }

    SUBCASE("TMS conditional variances") {
        const double r = 0.5;
        auto cond =
            homodyne_condition(tms_cm(r, m1, m2), {{m2, Quadrature::X}});
        CHECK(cond.mode_block(m1, m1)(0, 0) ==
              doctest::Approx(0.32402713683194273).epsilon(1e-12));
        CHECK(cond.mode_block(m1, m1)(1, 1) ==
              doctest::Approx(0.7715403174076219).epsilon(1e-12));
    }

    SUBCASE("vacuum stays vacuum") {
        auto cond = homodyne_condition(CovMatrix::vacuum({m1, m2}),
                                       {{m2, Quadrature::Y}});
        CHECK(cond.data().isApprox(0.5 * Eigen::Matrix2d::Identity()));
    }

    SUBCASE("cannot measure everything") {
        CHECK_THROWS_AS(
            homodyne_condition(CovMatrix::vacuum({m1, m2}),
                               {{m1, Quadrature::X}, {m2, Quadrature::Y}}),
            std::invalid_argument);
    }
}

TEST_CASE("two-mode standard form") {
    SUBCASE("TMS is already standard") {
        auto sf = standard_form_two_mode(tms_cm(0.5, m1, m2));
        CHECK(sf.local_a.isApprox(Eigen::Matrix2d::Identity(), 1e-9));
        CHECK(sf.local_b.isApprox(Eigen::Matrix2d::Identity(), 1e-9));
        CHECK(sf.c_plus == doctest::Approx(std::sinh(1.0) / 2.0));
        CHECK(sf.c_minus == doctest::Approx(-std::sinh(1.0) / 2.0));
    }

    SUBCASE("local rotations are undone") {
        const double r = 0.5;
        auto v = tms_cm(r, m1, m2);
        v = apply_local_symplectic(v, m1, rotation2(0.3));
        v = apply_local_symplectic(v, m2, rotation2(-1.2));
        auto sf = standard_form_two_mode(v);
        CHECK(sf.a == doctest::Approx(std::cosh(2.0 * r) / 2.0).epsilon(1e-9));
        CHECK(sf.b == doctest::Approx(std::cosh(2.0 * r) / 2.0).epsilon(1e-9));
        CHECK(sf.c_plus == doctest::Approx(std::sinh(2.0 * r) / 2.0).epsilon(1e-9));
        CHECK(sf.c_minus ==
              doctest::Approx(-std::sinh(2.0 * r) / 2.0).epsilon(1e-9));
    }

    SUBCASE("product of thermals") {
        Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
        v.block<2, 2>(0, 0) = 0.5 * 1.0 * Eigen::Matrix2d::Identity();
        v.block<2, 2>(2, 2) = 0.5 * 4.0 * Eigen::Matrix2d::Identity();
        auto sf = standard_form_two_mode(CovMatrix({m1, m2}, v));
        CHECK(sf.c_plus == doctest::Approx(0.0));
        CHECK(sf.c_minus == doctest::Approx(0.0));
        CHECK(sf.a == doctest::Approx(0.5));
        CHECK(sf.b == doctest::Approx(2.0));
    }

    SUBCASE("local symplectic invariants preserved on random states") {
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 30; ++trial) {
            auto v = random_physical_cm({m1, m2}, rng);
            auto sf = standard_form_two_mode(v);
            CHECK(std::abs(sf.local_a.determinant() - 1.0) < 1e-9);
            CHECK(std::abs(sf.local_b.determinant() - 1.0) < 1e-9);
            CHECK(sf.c_plus >= std::abs(sf.c_minus) - 1e-12);
            CHECK(sf.cm.mode_block(m1, m1).determinant() ==
                  doctest::Approx(v.mode_block(m1, m1).determinant())
                      .epsilon(1e-9));
            CHECK(sf.cm.mode_block(m2, m2).determinant() ==
                  doctest::Approx(v.mode_block(m2, m2).determinant())
                      .epsilon(1e-9));
            CHECK(sf.cm.mode_block(m1, m2).determinant() ==
                  doctest::Approx(v.mode_block(m1, m2).determinant())
                      .epsilon(1e-9));
            CHECK(sf.cm.data().determinant() ==
                  doctest::Approx(v.data().determinant()).epsilon(1e-9));
            auto before = symplectic_eigenvalues(v);
            auto after = symplectic_eigenvalues(sf.cm);
            for (std::size_t i = 0; i < before.size(); ++i)
                CHECK(std::abs(after[i] - before[i]) < 1e-10);
        }
    }

    CHECK_THROWS_AS(standard_form_two_mode(CovMatrix::vacuum({m1})),
                    std::invalid_argument);
}

TEST_CASE("properties over random states") {
    std::mt19937_64 rng(42);
    const std::vector<ModeLabel> labels{m1, m2, ModeLabel{1, 'c'}};

    for (int trial = 0; trial < 40; ++trial) {
        auto v = random_physical_cm(labels, rng);

        SUBCASE("") {}  // keep doctest happy about loop structure

        // spectrum invariance under a fresh random symplectic
        const Eigen::MatrixXd s = random_symplectic(3, rng);
        Eigen::MatrixXd conj = s * v.data() * s.transpose();
        conj = 0.5 * (conj + conj.transpose()).eval();
        auto nus = symplectic_eigenvalues(v);
        auto nus2 = symplectic_eigenvalues(conj);
        for (std::size_t i = 0; i < nus.size(); ++i)
            CHECK(std::abs(nus2[i] - nus[i]) < 1e-9 * std::max(1.0, nus[i]));

        // purity from the symplectic spectrum
        double from_spectrum = 1.0;
        for (double nu : nus) from_spectrum /= 2.0 * nu;
        CHECK(purity(v) == doctest::Approx(from_spectrum).epsilon(1e-9));

        // log negativity invariant under local symplectics within each side
        std::mt19937_64 rng_local(trial);
        auto w = apply_local_symplectic(
            v, m1, rotation2(0.4) * testing::squeezer2(0.3));
        w = apply_local_symplectic(w, m2, rotation2(-0.9));
        CHECK(log_negativity(w, {m1}, {m2, ModeLabel{1, 'c'}}) ==
              doctest::Approx(log_negativity(v, {m1}, {m2, ModeLabel{1, 'c'}}))
                  .epsilon(1e-9));

        // conditioning keeps the state physical
        auto cond = homodyne_condition(v, {{m2, Quadrature::X}});
        CHECK(min_symplectic_eigenvalue(cond) >= 0.5 - 1e-9);
    }
}
