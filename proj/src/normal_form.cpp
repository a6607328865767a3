#include "prtbp/normal_form.hpp"

#include <algorithm>
#include <cmath>

#include "prtbp/error.hpp"
#include "prtbp/numerics.hpp"

namespace prtbp {

LkFactors lk_factors(double omega1, double omega2) {
    if (!(omega1 > 0.0 && omega2 > 0.0)) {
        throw Error(ErrorKind::invalid_params, "frequencies must be positive");
    }
    const double k1_sq = 2.0 * omega1 * omega1 - 1.0;
    const double k2_sq = 1.0 - 2.0 * omega2 * omega2;
    if (k1_sq < 1e-9 || k2_sq < 1e-9) {
        throw Error(ErrorKind::resonant_degeneracy, "frequency at or across 1/sqrt(2)");
    }
    return {std::sqrt(4.0 * omega1 * omega1 + 9.0), std::sqrt(4.0 * omega2 * omega2 + 9.0), std::sqrt(k1_sq),
            std::sqrt(k2_sq)};
}

namespace {

struct Brackets {
    double e, a, g, nw;

    // Recurring bracket shapes; the integer arguments are the few constants that vary between J entries.
    double eps_a2(double c) const {
        const double s3 = std::sqrt(3.0);
        return e + 45.0 * a / 2.0 - 717.0 * a * e / 36.0 + (67.0 + 19.0 * g) / (12.0 * s3) * nw -
               (c - 3.0 * g) / (27.0 * s3) * nw * e;
    }
    double gamma_l(double a_num) const {
        const double s3 = std::sqrt(3.0);
        return 3.0 * e - a_num * a / 36.0 + (187.0 + 27.0 * g) / (12.0 * s3) * nw -
               2.0 * (247.0 + 3.0 * g) / (27.0 * s3) * nw * e;
    }
    double k_plain() const {
        const double s3 = std::sqrt(3.0);
        return e / 2.0 - 3.0 * a - 73.0 * a * e / 24.0 + (1.0 - 9.0 * g) / (24.0 * s3) * nw +
               (53.0 - 39.0 * g) / (54.0 * s3) * nw * e;
    }
    double gamma_k(double c) const {
        const double s3 = std::sqrt(3.0);
        return e - 3.0 * a - 299.0 * a * e / 72.0 - (6.0 - 5.0 * g) / (12.0 * s3) * nw - c / (54.0 * s3) * nw * e;
    }
    // Shared head of J23 and J24.
    double cross_head() const {
        const double s3 = std::sqrt(3.0);
        return 2.0 * e + 6.0 * a + 37.0 * a * e / 2.0 - (13.0 + g) / (2.0 * s3) * nw +
               2.0 * (79.0 - 7.0 * g) / (9.0 * s3) * nw * e -
               g * (6.0 + 2.0 * e / 3.0 + 13.0 * a - 33.0 * a * e / 2.0 + (11.0 - g) / (2.0 * s3) * nw -
                    (186.0 - g) / (9.0 * s3) * nw * e);
    }
    double cross_l(double l) const {
        const double s3 = std::sqrt(3.0);
        return -g / (2.0 * l * l) *
               (6.0 * e + 135.0 * a - 808.0 * a * e / 9.0 - (67.0 + 19.0 * g) / (2.0 * s3) * nw -
                (755.0 + 19.0 * g) / (9.0 * s3) * nw * e);
    }
    double cross_k(double k) const {
        const double s3 = std::sqrt(3.0);
        return -g / (2.0 * k * k) *
               (3.0 * e - 18.0 * a - 55.0 * a * e / 4.0 - (1.0 - 9.0 * g) / (4.0 * s3) * nw +
                (923.0 - 60.0 * g) / (12.0 * s3) * nw * e);
    }
};

// J24 with its penultimate bracket over k_tail^2 and last bracket over l_tail^2 k_tail^2.
double j24_with(const Brackets& br, const LkFactors& lk, double omega2, double l_tail, double k_tail) {
    const double s3 = std::sqrt(3.0);
    const double l2 = lk.l2;
    const double k2 = lk.k2;
    const double body = br.cross_head() -
                        1.0 / (2.0 * l2 * l2) * (51.0 * br.a + (14.0 + 8.0 * br.g) / (3.0 * s3) * br.nw) -
                        br.e / (k2 * k2) * (3.0 * br.a + (19.0 + 6.0 * br.g) / (6.0 * s3) * br.nw) +
                        br.cross_l(l2) + br.cross_k(k_tail) -
                        br.g * br.e / (4.0 * l_tail * l_tail * k_tail * k_tail) *
                            (99.0 * br.a / 2.0 + (34.0 - 5.0 * br.g) / (2.0 * s3) * br.nw);
    return s3 / (4.0 * omega2 * l2 * k2) * body;
}

} // namespace

NormalFormMap j_coeffs(const DerivedParams& d, double omega1, double omega2) {
    const LkFactors lk = lk_factors(omega1, omega2);
    const double s3 = std::sqrt(3.0);
    const Brackets br{d.eps, d.a2, d.gamma, d.n * d.w1};
    const double e = br.e;
    const double a = br.a;
    const double g = br.g;
    const double nw = br.nw;
    const double n = d.n;
    const double l1 = lk.l1, l2 = lk.l2, k1 = lk.k1, k2 = lk.k2;
    const double l1s = l1 * l1, l2s = l2 * l2, k1s = k1 * k1, k2s = k2 * k2;

    NormalFormMap nf;
    nf.omega1 = omega1;
    nf.omega2 = omega2;
    nf.l1 = l1;
    nf.l2 = l2;
    nf.k1 = k1;
    nf.k2 = k2;

    nf.j13 = l1 / (2.0 * omega1 * k1) *
             (1.0 - br.eps_a2(431.0) / (2.0 * l1s) + g / (2.0 * l1s) * br.gamma_l(29.0) - br.k_plain() / (2.0 * k1s) -
              g / (4.0 * k1s) * br.gamma_k(266.0 - 93.0 * g) +
              e / (4.0 * l1s * k1s) * (3.0 * a / 4.0 + (33.0 + 14.0 * g) / (12.0 * s3) * nw) +
              g * e / (8.0 * l1s * k1s) * (347.0 * a / 36.0 - (43.0 - 8.0 * g) / (4.0 * s3) * nw));

    nf.j14 = l2 / (2.0 * omega2 * k2) *
             (1.0 - br.eps_a2(431.0) / (2.0 * l2s) - g / (2.0 * l2s) * br.gamma_l(293.0) - br.k_plain() / (2.0 * k2s) +
              g / (2.0 * k2s) * br.gamma_k(268.0 - 9.0 * g) -
              e / (4.0 * l2s * k2s) * (33.0 * a / 4.0 + (1643.0 - 93.0 * g) / (216.0 * s3) * nw) +
              g * e / (4.0 * l2s * k2s) * (737.0 * a / 72.0 - (13.0 + 2.0 * g) / s3 * nw));

    nf.j21 = -4.0 * n * omega1 / (l1 * k1) *
             (1.0 + br.eps_a2(413.0) / (2.0 * l1s) - g / (2.0 * l1s) * br.gamma_l(293.0) - br.k_plain() / (2.0 * k1s) -
              g / (4.0 * k1s) * br.gamma_k(268.0 - 93.0 * g) +
              e / (8.0 * l1s * k1s) * (33.0 * a / 4.0 + (68.0 - 10.0 * g) / (24.0 * s3) * nw) +
              g * e / (8.0 * l1s * k1s) * (242.0 * a / 9.0 + (43.0 - 8.0 * g) / (4.0 * s3) * nw));

    nf.j22 = 4.0 * n * omega2 / (l2 * k2) *
             (1.0 + br.eps_a2(413.0) / (2.0 * l2s) - g / (2.0 * l2s) * br.gamma_l(293.0) + br.k_plain() / (2.0 * k2s) -
              g / (4.0 * k2s) * br.gamma_k(268.0 - 93.0 * g) +
              e / (4.0 * l2s * k2s) * (33.0 * a / 4.0 + (34.0 + 5.0 * g) / (12.0 * s3) * nw) +
              g * e / (8.0 * l2s * k2s) * (75.0 * a / 2.0 + (43.0 - 8.0 * g) / (4.0 * s3) * nw));

    nf.j23 = s3 / (4.0 * omega1 * l1 * k1) *
             (br.cross_head() + 1.0 / (2.0 * l1s) * (51.0 * a + (14.0 + 8.0 * g) / (3.0 * s3) * nw) -
              e / k1s * (3.0 * a + (19.0 + 6.0 * g) / (6.0 * s3) * nw) + br.cross_l(l1) + br.cross_k(k1) +
              g * e / (8.0 * l1s * k1s) * (9.0 * a / 2.0 + (34.0 - 5.0 * g) / (2.0 * s3) * nw));

    nf.j24 = j24_with(br, lk, omega2, l2, k2);
    return nf;
}

double j24_printed(const DerivedParams& d, double omega1, double omega2) {
    const LkFactors lk = lk_factors(omega1, omega2);
    const Brackets br{d.eps, d.a2, d.gamma, d.n * d.w1};
    return j24_with(br, lk, omega2, lk.l1, lk.k1);
}

NormalCoords action_angle_map(const ActionAngle& aa, double omega1, double omega2) {
    if (aa.i1 < 0.0 || aa.i2 < 0.0) throw Error(ErrorKind::invalid_params, "actions must be >= 0");
    if (!(omega1 > 0.0 && omega2 > 0.0)) throw Error(ErrorKind::invalid_params, "frequencies must be > 0");
    NormalCoords c;
    c.q1 = std::sqrt(2.0 * aa.i1 / omega1) * std::sin(aa.phi1);
    c.q2 = std::sqrt(2.0 * aa.i2 / omega2) * std::sin(aa.phi2);
    c.p1 = std::sqrt(2.0 * aa.i1 * omega1) * std::cos(aa.phi1);
    c.p2 = std::sqrt(2.0 * aa.i2 * omega2) * std::cos(aa.phi2);
    return c;
}

ActionAngle action_angle_from(const NormalCoords& qp, double omega1, double omega2) {
    if (!(omega1 > 0.0 && omega2 > 0.0)) throw Error(ErrorKind::invalid_params, "frequencies must be > 0");
    ActionAngle aa;
    aa.i1 = 0.5 * (qp.p1 * qp.p1 / omega1 + omega1 * qp.q1 * qp.q1);
    aa.i2 = 0.5 * (qp.p2 * qp.p2 / omega2 + omega2 * qp.q2 * qp.q2);
    aa.phi1 = std::atan2(omega1 * qp.q1, qp.p1);
    aa.phi2 = std::atan2(omega2 * qp.q2, qp.p2);
    return aa;
}

double normal_h2(const ActionAngle& aa, double omega1, double omega2) { return omega1 * aa.i1 - omega2 * aa.i2; }

ActionAngle advance(const ActionAngle& aa0, const NormalFormMap& nf, double t) {
    ActionAngle aa = aa0;
    aa.phi1 = aa0.phi1 + nf.omega1 * t;
    aa.phi2 = aa0.phi2 - nf.omega2 * t;
    return aa;
}

KineState orbit_state(const NormalFormMap& nf, const ActionAngle& aa0, double t) {
    if (aa0.i1 < 0.0 || aa0.i2 < 0.0) throw Error(ErrorKind::invalid_params, "actions must be >= 0");
    const ActionAngle aa = advance(aa0, nf, t);
    const double w1 = nf.omega1;
    const double w2 = nf.omega2;
    const double amp_x1 = std::sqrt(2.0 * w1 * aa.i1); // sqrt(2 w I): x and the cosine y term
    const double amp_x2 = std::sqrt(2.0 * w2 * aa.i2);
    const double amp_s1 = std::sqrt(2.0 * aa.i1 / w1); // sqrt(2 I / w): sine y term
    const double amp_s2 = std::sqrt(2.0 * aa.i2 / w2);
    const double c1 = std::cos(aa.phi1), s1 = std::sin(aa.phi1);
    const double c2 = std::cos(aa.phi2), s2 = std::sin(aa.phi2);

    KineState s;
    s.x = nf.j13 * amp_x1 * c1 + nf.j14 * amp_x2 * c2;
    s.y = nf.j21 * amp_s1 * s1 + nf.j22 * amp_s2 * s2 + nf.j23 * amp_x1 * c1 + nf.j24 * amp_x2 * c2;
    // dphi1/dt = w1, dphi2/dt = -w2
    s.vx = -nf.j13 * amp_x1 * w1 * s1 + nf.j14 * amp_x2 * w2 * s2;
    s.vy = nf.j21 * amp_s1 * w1 * c1 - nf.j22 * amp_s2 * w2 * c2 - nf.j23 * amp_x1 * w1 * s1 +
           nf.j24 * amp_x2 * w2 * s2;
    return s;
}

Point orbit_reconstruct(const NormalFormMap& nf, const ActionAngle& aa0, double t) {
    const KineState s = orbit_state(nf, aa0, t);
    return {s.x, s.y};
}

double reconstruction_residual(const NormalFormMap& nf, const DerivedParams& d, const EquilibriumPoint& eq,
                               const ActionAngle& aa0, double t_span, double dt) {
    const auto jac = numerics::fd_jacobian([&](const Vec4& s) { return eom_rhs(to_kine(s), d); },
                                           {eq.x_star, eq.y_star, 0.0, 0.0}, {1e-4, true});
    const auto linear = [&](const Vec4& s) {
        Vec4 out{};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) out[i] += jac[i][j] * s[j];
        }
        return out;
    };
    const auto traj = numerics::rk4_integrate(linear, to_array(orbit_state(nf, aa0, 0.0)), 0.0, t_span, dt);

    double max_err = 0.0;
    double max_amp = 0.0;
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
        const Point r = orbit_reconstruct(nf, aa0, traj.t[k]);
        max_err = std::max(max_err, std::hypot(r.x - traj.y[k][0], r.y - traj.y[k][1]));
        max_amp = std::max(max_amp, std::hypot(r.x, r.y));
    }
    return max_amp == 0.0 ? 0.0 : max_err / max_amp;
}

} // namespace prtbp
