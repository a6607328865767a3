#include "prtbp/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prtbp/error.hpp"
#include "prtbp/normal_form.hpp"
#include "prtbp/stability.hpp"

namespace prtbp {

double perturbation_size(const DerivedParams& d) {
    return std::max({std::abs(d.eps), std::abs(d.a2), std::abs(d.n * d.w1)});
}

namespace tolerance {
double equilibrium(double pert) { return pert == 0.0 ? 1e-10 : 1e-4; }
double hessian(double pert) { return std::max(1e-8, 5.0 * pert * pert); }
double third(double pert) { return std::max(1e-6, 5.0 * pert * pert); }
double spectral(double pert) { return std::max(1e-8, 10.0 * pert * pert); }
double mu_crit(double pert) { return pert == 0.0 ? 1e-12 : 5e-5; }
double identity(double pert) { return pert == 0.0 ? 1e-12 : 1e-4; }
double reconstruction(double pert) { return pert == 0.0 ? 1e-6 : 1e-2; }
} // namespace tolerance

namespace {

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

double inf_norm(double dx, double dy) { return std::max(std::abs(dx), std::abs(dy)); }

// Expansion series are written about L4; L5 is the y-mirror.
double mirror(Branch b) { return b == Branch::L5 ? -1.0 : 1.0; }

} // namespace

DiscrepancyLedger discrepancy_ledger(const DerivedParams& d) {
    const QuadCoeffs adopted = quad_coeffs(d);
    const QuadCoeffs printed = quad_coeffs_printed(d);
    const CubicCoeffs cubic = cubic_coeffs(d);
    const LinearSeriesPoint shift = locate_series_linear(d);

    std::optional<EquilibriumPoint> eq;
    std::optional<HessianOracle> hess;
    std::optional<ThirdOracle> third;
    try {
        eq = locate_refined(d, Branch::L4);
        if (d.w1 == 0.0) {
            hess = fd_hessian_oracle(*eq, d);
            third = fd_third_oracle(*eq, d);
        }
    } catch (const Error&) {
        // Oracle columns stay null.
    }

    DiscrepancyLedger ledger;
    auto& out = ledger.entries;

    out.push_back({"G", LedgerStatus::corrected, printed.g, hess ? std::optional(-hess->uxy) : std::nullopt, adopted.g,
                   "gamma bracket read as (6 + 2 eps/3 ...); the printed (6 eps - eps/3 ...) loses the classical "
                   "-(3 sqrt3/4) gamma"});
    out.push_back({"E", LedgerStatus::corrected, printed.e,
                   hess ? std::optional((adopted.n * adopted.n - hess->uxx) / 2.0) : std::nullopt, adopted.e,
                   "eps terms read as -2 eps + 6 gamma eps; printed -6 eps + 2 gamma eps gives the wrong first-order "
                   "slope"});
    out.push_back({"H2.F^2", LedgerStatus::reading, std::nullopt, std::nullopt, std::nullopt,
                   "printed F^2 term of H2 read as F y^2"});
    out.push_back({"L3.sign", LedgerStatus::corrected, -cubic.t1, third ? std::optional(third->xxx) : std::nullopt,
                   cubic.t1,
                   "cubic term taken as +(1/3!)(T1 x^3 + 3 T2 x^2 y + 3 T3 x y^2 + T4 y^3); the printed leading minus "
                   "contradicts L = ... + U1"});
    out.push_back({"T2", LedgerStatus::flagged, cubic.t2, third ? std::optional(third->xxy) : std::nullopt, cubic.t2,
                   "printed series disagrees with the third partial Phi_xxy; kept as printed"});
    out.push_back({"T3", LedgerStatus::flagged, cubic.t3, third ? std::optional(third->xyy) : std::nullopt, cubic.t3,
                   "printed series disagrees with the third partial Phi_xyy; kept as printed"});

    std::optional<double> j24_printed_value;
    std::optional<double> j24_adopted;
    const Spectrum sp = char_roots(adopted);
    if (sp.classification == Classification::stable) {
        try {
            j24_printed_value = j24_printed(d, *sp.omega1, *sp.omega2);
            j24_adopted = j_coeffs(d, *sp.omega1, *sp.omega2).j24;
        } catch (const Error&) {
        }
    }
    out.push_back({"J24", LedgerStatus::corrected, j24_printed_value, std::nullopt, j24_adopted,
                   "final two brackets use l2, k2 in place of the printed l1, k1; checked by the reconstruction "
                   "residual"});
    out.push_back({"phi2.sign", LedgerStatus::corrected, std::nullopt, std::nullopt, std::nullopt,
                   "phi2 = phi20 - w2 t, as H2 = w1 I1 - w2 I2 requires; phi1 = phi10 + w1 t"});
    out.push_back({"yb101.terms", LedgerStatus::reading, std::nullopt, std::nullopt, std::nullopt,
                   "third and fourth y terms read as J23 sqrt(2 I1 w1) cos phi1 and J24 sqrt(2 I2 w2) cos phi2"});
    out.push_back({"a.leading_one", LedgerStatus::corrected, shift.a - 0.5,
                   eq ? std::optional(eq->x_star + d.mu) : std::nullopt, shift.a,
                   "closed form for a = x* + mu is printed without its leading 1 inside the 1/2 bracket"});
    out.push_back({"L0.arctan", LedgerStatus::reading, std::nullopt, std::nullopt, std::nullopt,
                   "arctan(b/a) term of L0 evaluated as printed with factor n and no W1"});
    return ledger;
}

Json to_json(const LedgerEntry& e) {
    Json j;
    j["coefficient"] = e.coefficient;
    j["status"] = to_string(e.status);
    j["printed_value"] = opt(e.printed_value);
    j["oracle_value"] = opt(e.oracle_value);
    j["adopted_value"] = opt(e.adopted_value);
    j["note"] = e.note;
    return j;
}

Json to_json(const DiscrepancyLedger& ledger) {
    Json arr = Json::array();
    for (const auto& e : ledger.entries) arr.push_back(to_json(e));
    return arr;
}

Json to_json(const DerivedParams& d) {
    Json j;
    j["mu"] = d.mu;
    j["q1"] = d.q1;
    j["a2"] = d.a2;
    j["c_d"] = opt(d.c_d);
    j["w1_override"] = opt(d.w1_override);
    j["n"] = d.n;
    j["w1"] = d.w1;
    j["eps"] = d.eps;
    j["delta"] = d.delta;
    j["gamma"] = d.gamma;
    return j;
}

Json run_check(const DerivedParams& d, Branch branch, const CheckOptions& opts) {
    const double pert = perturbation_size(d);
    const double m = mirror(branch);
    const bool drag_free = d.w1 == 0.0;
    bool all_pass = true;
    auto judge = [&](double value, double tol) {
        const bool ok = std::isfinite(value) && value <= tol;
        all_pass = all_pass && ok;
        return ok;
    };

    Json r;
    r["params"] = to_json(d);
    r["branch"] = to_string(branch);
    r["perturbation"] = pert;
    r["tier"] = pert == 0.0 ? "classical" : "perturbed";
    r["warnings"] = series_guard_warnings(d);

    const EquilibriumPoint eq = locate_refined(d, branch, opts.newton);
    {
        const EquilibriumPoint s = locate_series(d, branch);
        const LinearSeriesPoint lin = locate_series_linear(d);
        Json j;
        j["newton"] = {{"x", eq.x_star}, {"y", eq.y_star}, {"iterations", eq.iterations}, {"residual", eq.residual}};
        const double ds = inf_norm(s.x_star - eq.x_star, s.y_star - eq.y_star);
        j["series"] = {{"x", s.x_star}, {"y", s.y_star}, {"delta_inf", ds}};
        const double dl = inf_norm(lin.x - eq.x_star, m * lin.y - eq.y_star);
        j["series_linear"] = {{"x", lin.x}, {"y", m * lin.y}, {"delta_inf", dl}};
        const double tol = tolerance::equilibrium(pert);
        j["tolerance"] = tol;
        j["pass"] = judge(ds, tol);
        r["equilibrium"] = j;
    }

    numerics::FdConfig hess_cfg{1e-3, true};
    numerics::FdConfig jac_cfg{1e-4, true};
    if (opts.fd_step) {
        hess_cfg.step = *opts.fd_step;
        jac_cfg.step = *opts.fd_step;
    }

    const QuadCoeffs q = quad_coeffs(d);
    const QuadCoeffs qp = quad_coeffs_printed(d);
    {
        Json j;
        j["adopted"] = {{"E", q.e}, {"F", q.f}, {"G", q.g}};
        j["printed"] = {{"E", qp.e}, {"F", qp.f}, {"G", qp.g}};
        if (drag_free) {
            const HessianOracle h = fd_hessian_oracle(eq, d, hess_cfg);
            const double n2 = q.n * q.n;
            j["oracle"] = {{"Uxx", h.uxx}, {"Uyy", h.uyy}, {"Uxy", h.uxy}};
            const double delta = std::max({std::abs(n2 - 2.0 * q.e - h.uxx), std::abs(n2 - 2.0 * q.f - h.uyy),
                                           std::abs(-m * q.g - h.uxy)});
            const double tol = tolerance::hessian(pert);
            j["delta_inf"] = delta;
            j["tolerance"] = tol;
            j["pass"] = judge(delta, tol);
        } else {
            j["oracle"] = nullptr;
            j["note"] = "position-only oracle needs w1 = 0; see spectrum for the drag-aware check";
        }
        r["quadratic"] = j;
    }

    {
        const CubicCoeffs c = cubic_coeffs(d);
        Json j;
        j["series"] = {{"T1", c.t1}, {"T2", m * c.t2}, {"T3", c.t3}, {"T4", m * c.t4}};
        if (drag_free) {
            const ThirdOracle t = fd_third_oracle(eq, d);
            j["oracle"] = {{"Phi_xxx", t.xxx}, {"Phi_xxy", t.xxy}, {"Phi_xyy", t.xyy}, {"Phi_yyy", t.yyy}};
            const double d1 = std::abs(c.t1 - t.xxx);
            const double d4 = std::abs(m * c.t4 - t.yyy);
            j["delta_T1"] = d1;
            j["delta_T4"] = d4;
            j["delta_T2_flagged"] = std::abs(m * c.t2 - t.xxy);
            j["delta_T3_flagged"] = std::abs(c.t3 - t.xyy);
            const double tol = tolerance::third(pert);
            j["tolerance"] = tol;
            j["pass"] = judge(std::max(d1, d4), tol);
        } else {
            j["oracle"] = nullptr;
        }
        r["cubic"] = j;
    }

    const Spectrum sp = char_roots(q);
    const bool stable = sp.classification == Classification::stable;
    {
        Json j;
        j["b"] = sp.b_coeff;
        j["c"] = sp.c_coeff;
        j["D"] = sp.disc;
        j["classification"] = to_string(sp.classification);
        j["omega1"] = opt(sp.omega1);
        j["omega2"] = opt(sp.omega2);
        const JacobianSpectrum js = jacobian_spectrum(d, eq, jac_cfg);
        j["jacobian"] = {{"omega1", js.omega1}, {"omega2", js.omega2}, {"max_real_part", js.max_real_part}};
        if (stable) {
            const double delta = std::max(std::abs(js.omega1 - *sp.omega1), std::abs(js.omega2 - *sp.omega2));
            const double tol = tolerance::spectral(pert);
            j["delta_inf"] = delta;
            j["tolerance"] = tol;
            j["pass"] = judge(delta, tol);
        }
        r["spectrum"] = j;
    }

    {
        Json j;
        const double series = mu_crit_series(d).mu_c;
        j["series"] = series;
        try {
            const double numeric = mu_crit_numeric(d).mu_c;
            const double tol = tolerance::mu_crit(pert);
            j["numeric"] = numeric;
            j["delta"] = std::abs(series - numeric);
            j["tolerance"] = tol;
            j["pass"] = judge(std::abs(series - numeric), tol);
        } catch (const Error& e) {
            j["numeric"] = nullptr;
            j["error"] = e.what();
            all_pass = false;
        }
        r["mu_crit"] = j;
    }

    if (stable) {
        const IdentityResiduals ir = freq_identity_residuals(d, sp);
        const double worst = std::max({std::abs(ir.r24), std::abs(ir.r25), std::abs(ir.r26_1), std::abs(ir.r26_2),
                                       std::abs(ir.r27)});
        const double tol = tolerance::identity(pert);
        r["identities"] = {{"r24", ir.r24},   {"r25", ir.r25},       {"r26_1", ir.r26_1},
                           {"r26_2", ir.r26_2}, {"r27", ir.r27},     {"max_abs", worst},
                           {"tolerance", tol}, {"pass", judge(worst, tol)}};

        Json j;
        try {
            const NormalFormMap nf = j_coeffs(d, *sp.omega1, *sp.omega2);
            j["experimental"] = branch == Branch::L5;
            j["omega1"] = nf.omega1;
            j["omega2"] = nf.omega2;
            j["l1"] = nf.l1;
            j["l2"] = nf.l2;
            j["k1"] = nf.k1;
            j["k2"] = nf.k2;
            j["J13"] = nf.j13;
            j["J14"] = nf.j14;
            j["J21"] = nf.j21;
            j["J22"] = nf.j22;
            j["J23"] = nf.j23;
            j["J24"] = nf.j24;
            const double two_pi = 2.0 * std::numbers::pi;
            const double t1 = two_pi / nf.omega1;
            const double t2 = two_pi / nf.omega2;
            const double res1 = reconstruction_residual(nf, d, eq, {opts.orbit_action, 0.0, 0.0, 0.0}, t1,
                                                        t1 / opts.steps_per_period);
            const double res2 = reconstruction_residual(nf, d, eq, {0.0, opts.orbit_action, 0.0, 0.0}, t2,
                                                        t2 / opts.steps_per_period);
            const double tol = tolerance::reconstruction(pert);
            Json rec;
            rec["action"] = opts.orbit_action;
            rec["mode1"] = res1;
            rec["mode2"] = res2;
            rec["tolerance"] = tol;
            if (branch == Branch::L4) {
                rec["pass"] = judge(std::max(res1, res2), tol);
            } else {
                rec["pass"] = nullptr;
            }
            j["reconstruction"] = rec;
        } catch (const Error& e) {
            j["error"] = e.what();
            all_pass = false;
        }
        r["normal_form"] = j;
    }

    r["ledger"] = to_json(discrepancy_ledger(d));
    r["all_pass"] = all_pass;
    return r;
}

} // namespace prtbp
