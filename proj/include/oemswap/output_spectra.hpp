#pragma once

#include "oemswap/covmatrix.hpp"
#include "oemswap/oem_model.hpp"

#include <complex>

namespace oemswap {

/// Causal exponential output filter h(t) = sqrt(2/tau) Theta(t)
/// exp[(-1/tau - i Omega) t]; L2-normalized, central frequency Omega.
struct FilterSpec {
    double tau = 0.0;    // inverse bandwidth (s)
    double omega = 0.0;  // central frequency (rad/s)
};

struct FilterBank {
    FilterSpec b, c, w;
    const FilterSpec& mode(char role) const;
};

/// Fourier transform of the filter under the project convention
/// f~(omega) = Int dt e^{i omega t} f(t):
///   h~(omega) = sqrt(2/tau) / (1/tau - i (omega - Omega)),
/// peaked at omega = Omega with |h~(Omega)| = sqrt(2 tau) and
/// Int |h~|^2 domega/2pi = 1.
std::complex<double> filter_transfer(const FilterSpec& f, double omega);

/// M(omega) = (-i omega I - A)^{-1}, mapping the noise vector to the
/// intracavity fluctuations.
Eigen::MatrixXcd frequency_transfer(const LinearModel& m, double omega);

/// 6x7 transfer from the elementary noises (xi, X_b^in, Y_b^in, X_c^in,
/// Y_c^in, X_w^in, Y_w^in) to the output quadratures
/// (X_b^out, Y_b^out, X_c^out, Y_c^out, X_w^out, Y_w^out), composing M(omega)
/// with a^out = sqrt(2 kappa) a - a^in.
Eigen::MatrixXcd output_transfer(const LinearModel& m, double omega);

struct IntegrationDiagnostics {
    double max_error = 0.0;     // worst per-entry quadrature error estimate
    double window = 0.0;        // frequency scale of the compactifying map
    std::size_t evaluations = 0;
    std::size_t intervals = 0;
};

/// Stationary 6x6 CM of the three filtered traveling output modes,
/// labeled (b, c, w) of one site, with the filters and quadrature
/// diagnostics that produced it.
struct OutputCM {
    CovMatrix cm;
    FilterBank filters;
    IntegrationDiagnostics diag;

    nlohmann::json to_json() const;
};

/// Frequency-domain route: integrates the symmetrized spectral correlators
/// of the filtered output fields over the whole real line.
OutputCM output_cm(const LinearModel& m, const FilterBank& filters,
                   int site = 1);

/// Independent route: cascades one auxiliary filter cavity (decay 1/tau,
/// detuning Omega) after each output channel and solves the enlarged 14x14
/// Lyapunov equation, returning the auxiliary-mode block.
OutputCM output_cm_cascaded_oracle(const LinearModel& m,
                                   const FilterBank& filters, int site = 1);

}  // namespace oemswap
