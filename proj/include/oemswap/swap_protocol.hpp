#pragma once

#include "oemswap/covmatrix.hpp"
#include "oemswap/output_spectra.hpp"

namespace oemswap {

/// Tripartite state of one site over modes (w, b, c).
struct SiteState {
    CovMatrix cm;

    explicit SiteState(CovMatrix m);
};

/// Reorders an OutputCM (b, c, w) into the protocol ordering (w, b, c).
SiteState site_from_output(const OutputCM& out);

/// Direct sum of two copies of the site over (w1, b1, c1, w2, b2, c2).
CovMatrix assemble_two_site(const SiteState& site);

/// CV Bell measurement at Charlie: balanced beam splitter on (b1, b2),
/// homodyne of X on the sum port and Y on the difference port.  Returns the
/// conditional 8x8 CM over (w1, w2, c1, c2).  The result is gain
/// independent (gains only cancel classical displacements).
CovMatrix bell_measure(const CovMatrix& two_site);

struct PurityShortcut {
    double mu_b = 0.0;
    double mu_wb = 0.0;
    double mu_bc = 0.0;
    double eta_ww = 0.0;  // mu_b / (2 mu_wb)
    double eta_cc = 0.0;  // mu_b / (2 mu_bc)
};

/// Minimum PT symplectic eigenvalues of the post-measurement pairs
/// expressed through the site purities.
PurityShortcut purity_shortcut(const SiteState& site);

struct SwapResult {
    CovMatrix v_out4;          // (w1, w2, c1, c2) conditional CM, raw gauge
    double en_ww = 0.0;        // remote microwave-microwave log-negativity
    double en_cc = 0.0;        // certifying log-negativity
    double eta_ww = 0.0;       // measured route, standard-form gauge
    double eta_cc = 0.0;
    double eta_ww_raw = 0.0;   // measured route without the gauge pass
    double eta_cc_raw = 0.0;
    double mu_b = 0.0;
    double mu_wb = 0.0;
    double mu_bc = 0.0;
    double eta_ww_shortcut = 0.0;
    double eta_cc_shortcut = 0.0;
    bool certifying_state = false;  // mu_wb > mu_bc > mu_b
    bool certified = false;         // EN_ww > EN_cc > 0

    double discrepancy_ww() const { return eta_ww - eta_ww_shortcut; }
    double discrepancy_cc() const { return eta_cc - eta_cc_shortcut; }

    nlohmann::json to_json() const;
};

/// Full protocol evaluation: assembles the symmetric two-site state, runs
/// the Bell measurement, and reports entanglement, purities and the
/// certification verdicts.  The measured eta_- values are computed after a
/// local-symplectic standard-form pass on the relevant two-mode reduction
/// (the raw-gauge values are reported alongside).
SwapResult evaluate(const SiteState& site);

}  // namespace oemswap
