#include "oemswap/swap_protocol.hpp"

#include "oemswap/gaussian.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace oemswap {

namespace {

ModeLabel w1{1, 'w'}, b1{1, 'b'}, c1{1, 'c'};
ModeLabel w2{2, 'w'}, b2{2, 'b'}, c2{2, 'c'};

}  // namespace

SiteState::SiteState(CovMatrix m) : cm(std::move(m)) {
    if (cm.modes() != std::vector<ModeLabel>{w1, b1, c1})
        throw std::invalid_argument("SiteState: modes must be (w1, b1, c1)");
}

SiteState site_from_output(const OutputCM& out) {
    const int site = out.cm.modes().front().site;
    CovMatrix reordered = out.cm.reordered(
        {ModeLabel{site, 'w'}, ModeLabel{site, 'b'}, ModeLabel{site, 'c'}});
    return SiteState(reordered.relabeled({w1, b1, c1}));
}

CovMatrix assemble_two_site(const SiteState& site) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(12, 12);
    v.topLeftCorner<6, 6>() = site.cm.data();
    v.bottomRightCorner<6, 6>() = site.cm.data();
    return CovMatrix({w1, b1, c1, w2, b2, c2}, std::move(v));
}

CovMatrix bell_measure(const CovMatrix& two_site) {
    CovMatrix mixed = beamsplitter_apply(two_site, b1, b2);
    // b1 now holds (b1+b2)/sqrt2, b2 holds (b2-b1)/sqrt2
    CovMatrix conditioned = homodyne_condition(
        mixed, {{b1, Quadrature::X}, {b2, Quadrature::Y}});
    return conditioned.reordered({w1, w2, c1, c2});
}

PurityShortcut purity_shortcut(const SiteState& site) {
    PurityShortcut r;
    r.mu_b = purity(site.cm.reduced({b1}));
    r.mu_wb = purity(site.cm.reduced({w1, b1}));
    r.mu_bc = purity(site.cm.reduced({b1, c1}));
    r.eta_ww = r.mu_b / (2.0 * r.mu_wb);
    r.eta_cc = r.mu_b / (2.0 * r.mu_bc);
    return r;
}

namespace {

double min_pt_eigenvalue_pair(const CovMatrix& pair_cm) {
    return min_symplectic_eigenvalue(
        partial_transpose(pair_cm, {pair_cm.modes().back()}));
}

// Measured-route eta_- of the remote pair after gauging the (first, second)
// two-mode reduction of the site into standard form.  Which pair survives
// the Bell measurement depends on gauge_wb.
double measured_eta(const SiteState& site, bool gauge_wb, bool apply_gauge) {
    CovMatrix gauged = site.cm;
    if (apply_gauge) {
        const auto sf = gauge_wb
                            ? standard_form_two_mode(site.cm.reduced({w1, b1}))
                            : standard_form_two_mode(site.cm.reduced({b1, c1}));
        if (gauge_wb) {
            gauged = apply_local_symplectic(gauged, w1, sf.local_a);
            gauged = apply_local_symplectic(gauged, b1, sf.local_b);
        } else {
            gauged = apply_local_symplectic(gauged, b1, sf.local_a);
            gauged = apply_local_symplectic(gauged, c1, sf.local_b);
        }
    }
    const CovMatrix out4 = bell_measure(assemble_two_site(SiteState(gauged)));
    return gauge_wb ? min_pt_eigenvalue_pair(out4.reduced({w1, w2}))
                    : min_pt_eigenvalue_pair(out4.reduced({c1, c2}));
}

}  // namespace

SwapResult evaluate(const SiteState& site) {
    const PurityShortcut p = purity_shortcut(site);

    CovMatrix v_out4 = bell_measure(assemble_two_site(site));

    SwapResult res{
        v_out4,
        0.0, 0.0,
        measured_eta(site, /*gauge_wb=*/true, /*apply_gauge=*/true),
        measured_eta(site, /*gauge_wb=*/false, /*apply_gauge=*/true),
        min_pt_eigenvalue_pair(v_out4.reduced({w1, w2})),
        min_pt_eigenvalue_pair(v_out4.reduced({c1, c2})),
        p.mu_b, p.mu_wb, p.mu_bc,
        p.eta_ww, p.eta_cc,
        false, false};

    res.en_ww = std::max(0.0, -std::log(2.0 * res.eta_ww));
    res.en_cc = std::max(0.0, -std::log(2.0 * res.eta_cc));
    res.certifying_state =
        (p.mu_wb - p.mu_bc > 1e-10) && (p.mu_bc - p.mu_b > 1e-10);
    res.certified = (res.en_ww - res.en_cc > 1e-10) && (res.en_cc > 1e-10);
    return res;
}

nlohmann::json SwapResult::to_json() const {
    return {{"EN_ww", en_ww},
            {"EN_cc", en_cc},
            {"eta_ww", eta_ww},
            {"eta_cc", eta_cc},
            {"eta_ww_raw", eta_ww_raw},
            {"eta_cc_raw", eta_cc_raw},
            {"eta_ww_shortcut", eta_ww_shortcut},
            {"eta_cc_shortcut", eta_cc_shortcut},
            {"mu_b", mu_b},
            {"mu_wb", mu_wb},
            {"mu_bc", mu_bc},
            {"certifying_state", certifying_state},
            {"certified", certified}};
}

}  // namespace oemswap
