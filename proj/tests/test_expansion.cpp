#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "oracles.hpp"
#include "prtbp/equilibria.hpp"
#include "prtbp/error.hpp"
#include "prtbp/expansion.hpp"

using namespace prtbp;
using testing::params;

namespace {
const double kS3 = std::sqrt(3.0);

double pert_of(const DerivedParams& d) {
    return std::max({std::abs(d.eps), std::abs(d.a2), std::abs(d.n * d.w1)});
}
} // namespace

TEST_CASE("quad_coeffs: classical values") {
    const auto q = quad_coeffs(params(0.01));
    CHECK(q.e == 0.125);
    CHECK(q.f == -0.625);
    CHECK(std::abs(q.g + 3.0 * kS3 / 4.0 * 0.98) < 1e-15);
    CHECK(std::abs(q.g + 1.2730573) < 1e-7);
}

TEST_CASE("quad_coeffs: classical identities across mu") {
    for (double mu = 0.001; mu < 0.5; mu += 0.0123) {
        const auto q = quad_coeffs(params(mu));
        CHECK(std::abs(2 * (q.e + q.f + q.n * q.n) - 1.0) <= 1e-12);
        const double c = 4 * q.e * q.f - q.g * q.g + std::pow(q.n, 4) - 2 * q.n * q.n * (q.e + q.f);
        CHECK(std::abs(c - 27 * mu * (1 - mu) / 4) <= 1e-12);
    }
}

TEST_CASE("quad_coeffs_printed: E as printed") {
    // gamma = 1 limit of the printed eps terms: (1/16)(2 - 6 eps + 2 eps)
    const auto d = params(1e-15, 0.99);
    CHECK(std::abs(quad_coeffs_printed(d).e - 0.1225) < 1e-12);
    CHECK(std::abs(quad_coeffs(d).e - 0.1275) < 1e-12);
}

TEST_CASE("quad_coeffs: adopted series against the exact Hessian") {
    for (const auto& d : {params(0.01), params(0.01, 0.999), params(0.01, 1.0, 0.001), params(0.03, 0.9995, 0.0005),
                          params(0.2, 0.999), params(0.2, 1.0, 0.001)}) {
        const auto q = quad_coeffs(d);
        const auto o = oracle::l4(d);
        const auto h = oracle::hessian_u1(d, o.x, o.y);
        const double n2 = q.n * q.n;
        // mixed eps*A2 terms are dropped, so bound by the summed perturbation
        const double p = (1.0 - d.q1) + std::abs(d.a2);
        const double tol = std::max(1e-8, 5 * p * p);
        CHECK(std::abs(n2 - 2 * q.e - static_cast<double>(h.xx)) <= tol);
        CHECK(std::abs(n2 - 2 * q.f - static_cast<double>(h.yy)) <= tol);
        CHECK(std::abs(-q.g - static_cast<double>(h.xy)) <= tol);
    }
}

TEST_CASE("quad_coeffs_printed: G misses the classical limit, E misses the eps slope") {
    const auto d = params(0.01);
    CHECK(std::abs(quad_coeffs_printed(d).g - quad_coeffs(d).g) > 1.0);
    const auto de = params(0.01, 0.999);
    const auto o = oracle::l4(de);
    const auto h = oracle::hessian_u1(de, o.x, o.y);
    const double e_exact = (1.0 - static_cast<double>(h.xx)) / 2;
    CHECK(std::abs(quad_coeffs_printed(de).e - e_exact) > 1e-4);
    CHECK(std::abs(quad_coeffs(de).e - e_exact) < 5e-6);
}

TEST_CASE("fd_hessian_oracle: classical values and agreement with jets") {
    const auto d = params(0.01);
    const auto eq = locate_refined(d, Branch::L4);
    const auto h = fd_hessian_oracle(eq, d);
    CHECK(std::abs(h.uxx - 0.75) < 1e-8);
    CHECK(std::abs(h.uyy - 2.25) < 1e-8);
    CHECK(std::abs(h.uxy - 3 * kS3 / 4 * 0.98) < 1e-8);

    const auto dp = params(0.05, 0.998, 0.002);
    const auto ep = locate_refined(dp, Branch::L4);
    const auto hp = fd_hessian_oracle(ep, dp);
    const auto j = oracle::hessian_u1(dp, ep.x_star, ep.y_star);
    CHECK(std::abs(hp.uxx - static_cast<double>(j.xx)) < 1e-8);
    CHECK(std::abs(hp.uyy - static_cast<double>(j.yy)) < 1e-8);
    CHECK(std::abs(hp.uxy - static_cast<double>(j.xy)) < 1e-8);

    const auto half = params(0.5);
    CHECK(std::abs(fd_hessian_oracle(locate_refined(half, Branch::L4), half).uxy) < 1e-8);
    CHECK_THROWS_AS(fd_hessian_oracle(eq, params(0.01, 1.0, 0.0, 1e-4)), Error);
}

TEST_CASE("fd_third_oracle: classical third partials") {
    const auto d = params(0.01);
    const auto eq = locate_refined(d, Branch::L4);
    const auto t = fd_third_oracle(eq, d);
    const auto j = oracle::third_phi(d, eq.x_star, eq.y_star);
    CHECK(std::abs(t.xxx - 21 * 0.98 / 8) < 1e-6);
    CHECK(std::abs(t.yyy + 9 * kS3 / 8) < 1e-6);
    CHECK(std::abs(t.xxy + 3 * kS3 / 8) < 1e-6);
    CHECK(std::abs(t.xyy + 33 * 0.98 / 8) < 1e-6);
    CHECK(std::abs(t.xxx - static_cast<double>(j.xxx)) < 1e-6);
    CHECK(std::abs(t.xxy - static_cast<double>(j.xxy)) < 1e-6);
    CHECK(std::abs(t.xyy - static_cast<double>(j.xyy)) < 1e-6);
    CHECK(std::abs(t.yyy - static_cast<double>(j.yyy)) < 1e-6);
}

TEST_CASE("cubic_coeffs: classical limits") {
    const auto c1 = cubic_coeffs(params(1e-15));
    CHECK(std::abs(c1.t1 - 2.625) < 1e-12);
    CHECK(std::abs(c1.t2 - 3 * kS3 / 16 * 14) < 1e-12);
    CHECK(std::abs(c1.t2 - 4.5466334) < 1e-7);
    CHECK(std::abs(c1.t4 + 9 * kS3 / 8) < 1e-12);

    const auto d = params(0.01);
    const auto c = cubic_coeffs(d);
    const auto o = oracle::l4(d);
    const auto j = oracle::third_phi(d, o.x, o.y);
    CHECK(std::abs(c.t1 - static_cast<double>(j.xxx)) < 1e-6);
    CHECK(std::abs(c.t4 - static_cast<double>(j.yyy)) < 1e-6);
    // Printed T2, T3 disagree with the exact third partials.
    CHECK(std::abs(c.t2 - static_cast<double>(j.xxy)) > 1.0);
    CHECK(std::abs(c.t3 - static_cast<double>(j.xyy)) > 1.0);
}

TEST_CASE("drag_cubic_t5") {
    CHECK(drag_cubic_t5({0.3, -0.2, 0.0, 0.0}, 0.5, 0.8, 0.01) == 0.0);
    CHECK(drag_cubic_t5({0.3, -0.2, 0.4, 0.1}, 0.5, 0.8, 0.0) == 0.0);
    CHECK(std::abs(drag_cubic_t5({1.0, 0.0, 1.0, 0.0}, 1.0, 0.0, 2.0) - 1.0) < 1e-15);
    const KineState s{0.01, -0.02, 0.03, 0.05};
    const double base = drag_cubic_t5(s, 0.5, kS3 / 2, 1e-3);
    CHECK(std::abs(drag_cubic_t5({s.x, s.y, 2 * s.vx, 2 * s.vy}, 0.5, kS3 / 2, 1e-3) - 2 * base) < 1e-18);
    CHECK(std::abs(drag_cubic_t5(s, 0.5, kS3 / 2, 3e-3) - 3 * base) < 1e-18);
}

TEST_CASE("series_l0_l1: classical and radiation examples") {
    const auto l = series_l0_l1(params(0.01));
    CHECK(std::abs(l.l0 - (1.5 - std::numbers::pi / 3)) < 1e-15);
    CHECK(std::abs(l.c_vx + kS3 / 2) < 1e-15);
    CHECK(std::abs(l.c_vy - 0.5) < 1e-15);
    const auto e = series_l0_l1(params(0.01, 0.99));
    CHECK(std::abs(e.c_vy - (0.5 - 0.01 / 3)) < 1e-15);
}

TEST_CASE("h2_eval: spot values") {
    const QuadCoeffs q{0.125, -0.625, -1.2, 1.0};
    CHECK(h2_eval({0, 0, 1, 0}, q) == 0.5);
    CHECK(h2_eval({1, 0, 0, 0}, q) == 0.125);
    CHECK(h2_eval({1, 0, 0, 1}, q) == -0.375);
    CHECK(h2_eval({0, 1, 0, 0}, q) == -0.625);
}
