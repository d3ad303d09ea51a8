#pragma once

#include "oemswap/covmatrix.hpp"

#include <array>
#include <complex>
#include <vector>

namespace oemswap {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double k_boltzmann = 1.380649e-23; // J/K
inline constexpr double c_light = 2.99792458e8;     // m/s
}  // namespace constants

/// Drive and cavity parameters of one mode (b, c or w), all in SI units
/// with rates and frequencies in rad/s.
struct ModeParams {
    double wavelength = 0.0;  // drive wavelength (m)
    double power = 0.0;       // input power (W)
    double kappa = 0.0;       // amplitude decay rate (rad/s)
    double detuning = 0.0;    // effective detuning Delta (rad/s)
    double g = 0.0;           // single-photon coupling (rad/s)
};

/// Physical constants of one opto-electro-mechanical site.
struct SystemParams {
    double omega_m = 0.0;      // mechanical angular frequency (rad/s)
    double q_m = 0.0;          // mechanical quality factor
    double mass = 0.0;         // effective mass (kg)
    double temperature = 0.0;  // bath temperature (K)
    ModeParams b, c, w;

    const ModeParams& mode(char role) const;
    ModeParams& mode(char role);

    /// Throws std::invalid_argument on non-positive rates/frequencies,
    /// q_m <= 1 or negative temperature.
    void validate() const;
};

struct DerivedMode {
    double drive_rate = 0.0;           // E_x (rad/s)
    std::complex<double> alpha{0.0};   // steady-state amplitude <a_x>
    double coupling = 0.0;             // G_x = sqrt(2) g_x |alpha_x| (rad/s)
};

struct DerivedRates {
    double gamma_m = 0.0;
    double nbar_m = 0.0;
    double nbar_w = 0.0;
    double mean_position = 0.0;  // <q> = sum_x g_x |alpha_x|^2 / omega_m
    DerivedMode b, c, w;

    const DerivedMode& mode(char role) const;
};

/// Drift and diffusion of the linearized fluctuation dynamics in the
/// quadrature ordering (q, p, X_b, Y_b, X_c, Y_c, X_w, Y_w), together with
/// the rates the output-field machinery needs.
struct LinearModel {
    Eigen::Matrix<double, 8, 8> drift;
    Eigen::Matrix<double, 8, 8> diffusion;
    double omega_m = 0.0;
    double gamma_m = 0.0;
    std::array<double, 3> kappa{};  // (b, c, w)
    double nbar_m = 0.0;
    double nbar_w = 0.0;
};

DerivedRates derive_rates(const SystemParams& p);

Eigen::Matrix<double, 8, 8> drift_matrix(const DerivedRates& r,
                                         const SystemParams& p);
Eigen::Matrix<double, 8, 8> diffusion_matrix(const DerivedRates& r,
                                             const SystemParams& p);

LinearModel build_linear_model(const DerivedRates& r, const SystemParams& p);
LinearModel build_linear_model(const SystemParams& p);

struct StabilityReport {
    bool stable = false;
    double spectral_abscissa = 0.0;
    std::vector<std::complex<double>> eigenvalues;
    std::vector<std::complex<double>> offending;  // eigenvalues past the margin
};

/// Stable iff every drift eigenvalue has real part < -1e-6 * omega_m.
StabilityReport check_stability(const LinearModel& m);

/// Steady-state intracavity + mechanics CM: solves A V + V A^T + D = 0.
/// Throws std::runtime_error (citing the stability report) if unstable.
/// Modes labeled (m, b, c, w) of the given site.
CovMatrix solve_lyapunov(const LinearModel& m, int site = 1);

}  // namespace oemswap
