#include "prtbp/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "prtbp/error.hpp"
#include "prtbp/numerics.hpp"

namespace prtbp {

const char* to_string(Classification c) noexcept {
    switch (c) {
    case Classification::stable: return "stable";
    case Classification::marginal: return "marginal";
    case Classification::unstable: return "unstable";
    }
    return "unknown";
}

Spectrum char_roots(const QuadCoeffs& q, double marginal_tol) {
    const double n2 = q.n * q.n;
    Spectrum sp;
    sp.b_coeff = 2.0 * (q.e + q.f + n2);
    sp.c_coeff = 4.0 * q.e * q.f - q.g * q.g + n2 * n2 - 2.0 * n2 * (q.e + q.f);
    sp.disc = sp.b_coeff * sp.b_coeff - 4.0 * sp.c_coeff;

    if (std::abs(sp.disc) <= marginal_tol) {
        sp.classification = Classification::marginal;
        const double lambda_sq = -0.5 * sp.b_coeff;
        if (lambda_sq < 0.0) {
            sp.omega1 = std::sqrt(-lambda_sq);
            sp.omega2 = sp.omega1;
        }
        return sp;
    }
    const auto roots = numerics::biquadratic_roots(sp.b_coeff, sp.c_coeff);
    if (roots.complex || roots.first >= 0.0 || roots.second >= 0.0) {
        sp.classification = Classification::unstable;
        return sp;
    }
    const double w_a = std::sqrt(-roots.first);
    const double w_b = std::sqrt(-roots.second);
    sp.omega1 = std::max(w_a, w_b);
    sp.omega2 = std::min(w_a, w_b);
    sp.classification = Classification::stable;
    return sp;
}

std::complex<double> matrix_a_det(const QuadCoeffs& q, std::complex<double> lambda) {
    using C = std::complex<double>;
    const C n{q.n, 0.0};
    std::array<std::array<C, 4>, 4> m{{
        {C{2.0 * q.e}, C{q.g}, lambda, -n},
        {C{q.g}, C{2.0 * q.f}, n, lambda},
        {-lambda, n, C{1.0}, C{0.0}},
        {-n, -lambda, C{0.0}, C{1.0}},
    }};
    // Gaussian elimination with partial pivoting
    C det{1.0, 0.0};
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (m[pivot][col] == C{0.0}) return C{0.0};
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const C factor = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    return det;
}

CriticalMu mu_crit_series(const DerivedParams& d) {
    const double e = d.eps;
    const double a = d.a2;
    const double nw = d.n * d.w1;
    const double mu_c = kMuCrit0 - 0.221895916277307669 * e + 2.1038871010983331 * a +
                        0.493433373141671349 * e * a + 0.704139054372097028 * nw +
                        0.401154273957540929 * nw * e;
    return {mu_c, MuCritMethod::series};
}

CriticalMu mu_crit_numeric(const DerivedParams& d) {
    auto disc_at = [&](double mu) { return char_roots(quad_coeffs(with_mu(d, mu))).disc; };
    double lo = 1e-6;
    double hi = 0.5 - 1e-6;
    double d_lo = disc_at(lo);
    const double d_hi = disc_at(hi);
    if ((d_lo > 0.0) == (d_hi > 0.0)) {
        throw Error(ErrorKind::no_root, "discriminant does not change sign over the mu bracket");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double d_mid = disc_at(mid);
        if (std::abs(d_mid) <= 1e-13 || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * mid) {
            return {mid, MuCritMethod::numeric};
        }
        if ((d_mid > 0.0) == (d_lo > 0.0)) {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
    }
    return {0.5 * (lo + hi), MuCritMethod::numeric};
}

IdentityResiduals freq_identity_residuals(const DerivedParams& d, const Spectrum& sp) {
    if (!sp.omega1 || !sp.omega2) {
        throw Error(ErrorKind::undefined_quantity, "identity residuals need both frequencies");
    }
    const double s3 = std::sqrt(3.0);
    const double e = d.eps;
    const double a = d.a2;
    const double g = d.gamma;
    const double g2 = g * g;
    const double nw = d.n * d.w1;
    const double w1 = *sp.omega1;
    const double w2 = *sp.omega2;

    const double sum_series = 1.0 - g * e / 2.0 + 3.0 * g * a / 2.0 + 83.0 * e * a / 12.0 +
                              299.0 * g * e * a / 144.0 - nw / (24.0 * s3) + 5.0 * g * nw / (8.0 * s3) -
                              53.0 * e * nw / (54.0 * s3) - 5.0 * g2 * nw / (24.0 * s3) +
                              173.0 * g * e * nw / (54.0 * s3) - 3.0 * g2 * e * nw / (36.0 * s3);

    const double prod_series = 27.0 / 16.0 - 27.0 * g2 / 16.0 + 9.0 * e / 8.0 + 9.0 * g * e / 8.0 -
                               3.0 * g2 * e / 8.0 + 117.0 * g * a / 16.0 - 241.0 * e * a / 32.0 +
                               2515.0 * g * e * a / 192.0 + 35.0 * nw / (16.0 * s3) - 55.0 * s3 * g * nw / 16.0 -
                               5.0 * s3 * g2 * nw / 4.0 - 1277.0 * e * nw / (288.0 * s3) +
                               5021.0 * g * e * nw / (288.0 * s3) + 991.0 * g2 * e * nw / (48.0 * s3);

    const double c0 = 1.0 + 4.0 * e / 9.0 - 107.0 * e * a / 27.0 + 2.0 * g * e / 3.0 + 1579.0 * g * e * a / 324.0 -
                      25.0 * nw / (27.0 * s3) - 55.0 * g * nw / (9.0 * s3) + 3809.0 * e * nw / (486.0 * s3) +
                      4961.0 * g * e * nw / (486.0 * s3);
    const double c2 = -16.0 / 27.0 + 32.0 * e / 243.0 + 208.0 * a / 81.0 - 8.0 * g * a / 27.0 -
                      4868.0 * e * a / 729.0 - 563.0 * g * e * a / 243.0 + 296.0 * nw / (243.0 * s3) -
                      10.0 * g * nw / (27.0 * s3) - 15892.0 * e * nw / (2187.0 * s3) -
                      1864.0 * g * e * nw / (729.0 * s3);
    const double c4 = 16.0 / 27.0 - 32.0 * e / 243.0 - 208.0 * a / 81.0 - 1880.0 * e * a / 729.0 -
                      2720.0 * nw / (2187.0 * s3) + 49552.0 * e * nw / (6561.0 * s3) -
                      80.0 * g * e * nw / (2187.0 * s3);
    auto gamma_sq_series = [&](double w) { return c0 + c2 * w * w + c4 * w * w * w * w; };

    const double u = w1 * w2;
    const double u_series = 1.0 + 4.0 * e / 9.0 - 107.0 * e * a / 27.0 - 25.0 * nw / (27.0 * s3) +
                            3809.0 * e * nw / (486.0 * s3) +
                            g * (2.0 * e / 3.0 + 1579.0 * e * a / 324.0 - 55.0 * g * nw / (9.0 * s3) +
                                 4961.0 * g * e * nw / (486.0 * s3)) +
                            (-16.0 / 27.0 + 32.0 * e / 243.0 + 208.0 * a / 81.0 - 1880.0 * e * a / 729.0 +
                             320.0 * nw / (243.0 * s3) - 15856.0 * e * nw / (2187.0 * s3)) *
                                u * u;

    IdentityResiduals r;
    r.r24 = (w1 * w1 + w2 * w2) - sum_series;
    r.r25 = w1 * w1 * w2 * w2 - prod_series;
    r.r26_1 = g2 - gamma_sq_series(w1);
    r.r26_2 = g2 - gamma_sq_series(w2);
    r.r27 = g2 - u_series;
    return r;
}

JacobianSpectrum jacobian_spectrum(const DerivedParams& d, const EquilibriumPoint& eq, const numerics::FdConfig& cfg) {
    const auto jac = numerics::fd_jacobian([&](const Vec4& s) { return eom_rhs(to_kine(s), d); },
                                           {eq.x_star, eq.y_star, 0.0, 0.0}, cfg);
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) m(i, j) = jac[i][j];
    }
    const Eigen::EigenSolver<Eigen::Matrix4d> solver(m, false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::no_convergence, "eigenvalue solver failed on the Jacobian");
    }
    std::array<double, 4> imag{};
    JacobianSpectrum out;
    out.max_real_part = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        imag[i] = std::abs(solver.eigenvalues()[i].imag());
        out.max_real_part = std::max(out.max_real_part, solver.eigenvalues()[i].real());
    }
    std::sort(imag.begin(), imag.end());
    // conjugate pairs: {w2, w2, w1, w1}
    out.omega2 = 0.5 * (imag[0] + imag[1]);
    out.omega1 = 0.5 * (imag[2] + imag[3]);
    return out;
}

StabilityReport classify(const DerivedParams& d, Branch branch) {
    StabilityReport r;
    r.equilibrium = locate_refined(d, branch);
    r.coeffs = quad_coeffs(d);
    r.spectrum = char_roots(r.coeffs);
    r.mu_c_series = mu_crit_series(d);
    r.mu_c_numeric = mu_crit_numeric(d);
    r.stable = r.spectrum.classification == Classification::stable;
    r.stable_by_series = d.mu < r.mu_c_series.mu_c;
    return r;
}

} // namespace prtbp
