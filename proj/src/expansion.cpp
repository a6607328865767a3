#include "prtbp/expansion.hpp"

#include <cmath>

#include "prtbp/error.hpp"

namespace prtbp {

namespace {

const double kSqrt3 = std::sqrt(3.0);

enum class QuadVariant { printed, adopted };

QuadCoeffs quad_series(const DerivedParams& d, QuadVariant variant) {
    const double s3 = kSqrt3;
    const double e = d.eps;
    const double a = d.a2;
    const double g = d.gamma;
    const double nw = d.n * d.w1;
    const bool fixed = variant == QuadVariant::adopted;

    const double e_lead = fixed ? 2.0 : 6.0;  // eps coefficient outside the gamma bracket
    const double e_gamma = fixed ? 6.0 : 2.0; // eps coefficient inside it
    const double e_val =
        (2.0 - e_lead * e - 3.0 * a - 31.0 * a * e / 2.0 - (69.0 + g) / (6.0 * s3) * nw +
         2.0 * (307.0 + 75.0 * g) * e / (27.0 * s3) * nw +
         g * (e_gamma * e + 12.0 * a + a * e / 3.0 + (199.0 + 17.0 * g) / (6.0 * s3) * nw -
              2.0 * (226.0 + 99.0 * g) * e / (27.0 * s3) * nw)) /
        16.0;

    const double f_val =
        -(10.0 - 2.0 * e + 21.0 * a - 717.0 * a * e / 18.0 - (67.0 + 19.0 * g) / (6.0 * s3) * nw +
          2.0 * (413.0 - 39.0 * g) * e / (27.0 * s3) * nw +
          g * (6.0 * e - 293.0 * a * e / 18.0 + (187.0 + 27.0 * g) / (6.0 * s3) * nw -
               4.0 * (247.0 + 3.0 * g) * e / (27.0 * s3) * nw)) /
        16.0;

    const double g_open = fixed ? 6.0 + 2.0 * e / 3.0 : 6.0 * e - e / 3.0;
    const double g_val =
        s3 / 8.0 *
        (2.0 * e + 6.0 * a - 37.0 * a * e / 2.0 - (13.0 + g) / (2.0 * s3) * nw +
         2.0 * (79.0 - 7.0 * g) * e / (27.0 * s3) * nw -
         g * (g_open + 13.0 * a - 33.0 * a * e / 2.0 + (11.0 - g) / (2.0 * s3) * nw -
              (186.0 - g) * e / (9.0 * s3) * nw));

    return {e_val, f_val, g_val, d.n};
}

void require_no_drag(const DerivedParams& d) {
    if (d.w1 != 0.0) {
        throw Error(ErrorKind::invalid_params, "position-only oracle requires w1 = 0");
    }
}

} // namespace

QuadCoeffs quad_coeffs(const DerivedParams& d) { return quad_series(d, QuadVariant::adopted); }

QuadCoeffs quad_coeffs_printed(const DerivedParams& d) { return quad_series(d, QuadVariant::printed); }

CubicCoeffs cubic_coeffs(const DerivedParams& d) {
    const double s3 = kSqrt3;
    const double e = d.eps;
    const double a = d.a2;
    const double g = d.gamma;
    const double nw = d.n * d.w1;

    CubicCoeffs t;
    t.t1 = 3.0 / 16.0 *
           (16.0 * e / 3.0 + 6.0 * a - 979.0 * a * e / 18.0 + (143.0 + 9.0 * g) / (6.0 * s3) * nw +
            (459.0 + 376.0 * g) / (27.0 * s3) * nw * e +
            g * (14.0 + 4.0 * e / 3.0 + 25.0 * a - 1507.0 * a * e / 18.0 - (215.0 + 29.0 * g) / (6.0 * s3) * nw -
                 2.0 * (1174.0 + 169.0 * g) / (27.0 * s3) * nw * e));
    t.t2 = 3.0 * s3 / 16.0 *
           (14.0 - 16.0 * e / 3.0 + a / 3.0 - 367.0 * a * e / 18.0 + 115.0 * (1.0 + g) / (18.0 * s3) * nw -
            (959.0 - 136.0 * g) / (27.0 * s3) * nw * e +
            g * (32.0 * e / 3.0 + 40.0 * a - 382.0 * a * e / 9.0 + (511.0 + 53.0 * g) / (6.0 * s3) * nw -
                 (2519.0 - 24.0 * g) / (27.0 * s3) * nw * e));
    t.t3 = -9.0 / 16.0 *
           (8.0 * e / 3.0 + 203.0 * a / 6.0 - 625.0 * a * e / 54.0 - (105.0 + 15.0 * g) / (18.0 * s3) * nw -
            (403.0 - 114.0 * g) / (81.0 * s3) * nw * e +
            g * (2.0 - 4.0 * e / 9.0 + 55.0 * a / 2.0 - 797.0 * a * e / 54.0 + (197.0 + 23.0 * g) / (18.0 * s3) * nw -
                 (211.0 - 32.0 * g) / (81.0 * s3) * nw * e));
    t.t4 = -9.0 * s3 / 16.0 *
           (2.0 - 8.0 * e / 3.0 + 23.0 * a / 3.0 - 44.0 * a * e - (37.0 + g) / (18.0 * s3) * nw -
            (219.0 + 253.0 * g) / (81.0 * s3) * nw * e +
            g * (4.0 * e + 88.0 * a * e / 27.0 + (241.0 + 45.0 * g) / (18.0 * s3) * nw -
                 (1558.0 - 126.0 * g) / (81.0 * s3) * nw * e));
    return t;
}

double drag_cubic_t5(const KineState& disp, double a, double b, double w1) {
    const double rho_sq = a * a + b * b;
    if (rho_sq == 0.0) throw Error(ErrorKind::invalid_params, "a and b must not both vanish");
    const double along = a * disp.x + b * disp.y;
    const double across = b * disp.x - a * disp.y;
    const double bracket = (a * disp.vx + b * disp.vy) * (3.0 * along - across * across) -
                           2.0 * (disp.x * disp.vx + disp.y * disp.vy) * along * rho_sq;
    return w1 / (2.0 * rho_sq * rho_sq * rho_sq) * bracket;
}

SeriesL0L1 series_l0_l1(const DerivedParams& d) {
    const double s3 = kSqrt3;
    const double e = d.eps;
    const double a2 = d.a2;
    const double g = d.gamma;
    const double n = d.n;
    const double nw = n * d.w1;

    const LinearSeriesPoint shift = locate_series_linear(d);
    if (shift.a == 0.0) throw Error(ErrorKind::invalid_params, "a = 0 makes arctan(b/a) undefined");

    SeriesL0L1 out;
    // The arctan term carries n but no W1 factor, as printed.
    out.l0 = 1.5 - 2.0 * e / 3.0 - g * e / 3.0 + 3.0 * g * a2 / 4.0 - 1.5 * a2 * e - g * a2 - s3 * nw / 4.0 +
             2.0 * g / (3.0 * s3) * nw - nw * e / (3.0 * s3) - 23.0 * e * nw / (54.0 * s3) -
             n * std::atan(shift.b / shift.a);
    out.c_vx = -s3 / 2.0 - 5.0 * a2 / (8.0 * s3) + 7.0 * e * a2 / (12.0 * s3) + 4.0 * nw / 9.0 - g * nw / 18.0;
    // "2 n eps n W1" carries n twice in print.
    out.c_vy = 0.5 - e / 3.0 - a2 / 8.0 + e * a2 / (12.0 * s3) - nw / (6.0 * s3) + 2.0 * n * e * nw / (3.0 * s3);
    out.c_x = -(-0.5 + g / 2.0 + 9.0 * a2 / 8.0 + 15.0 * g * a2 / 8.0 - 35.0 * e * a2 / 12.0 -
                29.0 * g * e * a2 / 12.0 + 3.0 * s3 * nw / 8.0 - 2.0 * g / (3.0 * s3) * nw -
                5.0 * e * nw / (12.0 * s3) - 7.0 * g * e * nw / (4.0 * s3));
    out.c_y = -(15.0 * s3 * a2 / 2.0 + 9.0 * s3 * g * a2 / 8.0 - 2.0 * s3 * e * a2 - 2.0 * s3 * g * e * a2 -
                nw / 8.0 + g * nw - 43.0 * e / 36.0 * nw);
    return out;
}

double h2_eval(const MomentumState& m, const QuadCoeffs& q) {
    return 0.5 * (m.px * m.px + m.py * m.py) + q.n * (m.y * m.px - m.x * m.py) + q.e * m.x * m.x +
           q.f * m.y * m.y + q.g * m.x * m.y;
}

HessianOracle fd_hessian_oracle(const EquilibriumPoint& eq, const DerivedParams& d, const numerics::FdConfig& cfg) {
    require_no_drag(d);
    const double x0 = eq.x_star;
    const double y0 = eq.y_star;
    auto u = [&](double x, double y) { return potential_u1({x, y}, d); };
    HessianOracle h;
    h.uxx = numerics::fd_derive([&](double x) { return u(x, y0); }, x0, 2, cfg);
    h.uyy = numerics::fd_derive([&](double y) { return u(x0, y); }, y0, 2, cfg);
    h.uxy = numerics::fd_derive(
        [&](double y) { return numerics::fd_derive([&](double x) { return u(x, y); }, x0, 1, cfg); }, y0, 1, cfg);
    return h;
}

ThirdOracle fd_third_oracle(const EquilibriumPoint& eq, const DerivedParams& d, const numerics::FdConfig& cfg) {
    require_no_drag(d);
    const double x0 = eq.x_star;
    const double y0 = eq.y_star;
    auto phi = [&](double x, double y) { return potential_phi({x, y}, d); };
    ThirdOracle t;
    t.xxx = numerics::fd_derive([&](double x) { return phi(x, y0); }, x0, 3, cfg);
    t.yyy = numerics::fd_derive([&](double y) { return phi(x0, y); }, y0, 3, cfg);
    t.xxy = numerics::fd_derive(
        [&](double y) { return numerics::fd_derive([&](double x) { return phi(x, y); }, x0, 2, cfg); }, y0, 1, cfg);
    t.xyy = numerics::fd_derive(
        [&](double x) { return numerics::fd_derive([&](double y) { return phi(x, y); }, y0, 2, cfg); }, x0, 1, cfg);
    return t;
}

const char* to_string(LedgerStatus s) noexcept {
    switch (s) {
    case LedgerStatus::corrected: return "corrected";
    case LedgerStatus::flagged: return "flagged";
    case LedgerStatus::reading: return "reading";
    }
    return "unknown";
}

const LedgerEntry* DiscrepancyLedger::find(const std::string& coefficient) const {
    for (const auto& e : entries) {
        if (e.coefficient == coefficient) return &e;
    }
    return nullptr;
}

} // namespace prtbp
