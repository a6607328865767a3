#include "prtbp/equilibria.hpp"

#include <algorithm>
#include <cmath>

#include "prtbp/error.hpp"

namespace prtbp {

const char* to_string(Branch b) noexcept { return b == Branch::L4 ? "L4" : "L5"; }

const char* to_string(LocateMethod m) noexcept {
    switch (m) {
    case LocateMethod::series45: return "series45";
    case LocateMethod::series78: return "series78";
    case LocateMethod::newton: return "newton";
    }
    return "unknown";
}

std::vector<std::string> series_guard_warnings(const DerivedParams& d) {
    std::vector<std::string> out;
    if (std::abs(d.eps) > kSeriesGuard) out.emplace_back("eps");
    if (std::abs(d.a2) > kSeriesGuard) out.emplace_back("a2");
    if (std::abs(d.n * d.w1) > kSeriesGuard) out.emplace_back("n*w1");
    return out;
}

EquilibriumPoint locate_series(const DerivedParams& d, Branch branch) {
    if (!(d.q1 > 0.0)) throw Error(ErrorKind::invalid_params, "q1 must be > 0 to locate equilibria");
    const double mu = d.mu;
    const double mass = mu * (1.0 - mu);
    if (mass == 0.0) throw Error(ErrorKind::invalid_params, "mu (1 - mu) must be nonzero");
    const double delta_sq = d.delta * d.delta;
    const double radicand = 1.0 - delta_sq / 4.0;
    if (radicand < 0.0) throw Error(ErrorKind::invalid_params, "1 - delta^2/4 must be >= 0");

    const double half_dsq = delta_sq / 2.0;
    const double x0 = half_dsq - mu;
    const double y0 = (branch == Branch::L4 ? 1.0 : -1.0) * d.delta * std::sqrt(radicand);
    const double nw = d.n * d.w1;
    const double a2 = d.a2;

    // x0 * (1 - drag/x0 - half_dsq*a2/x0), expanded so x0 = 0 (mu = 1/2) stays finite
    const double x_drag = nw * ((1.0 - mu) * (1.0 + 2.5 * a2) + mu * (1.0 - a2 / 2.0) * half_dsq) /
                          (3.0 * mass * y0);
    const double x_star = x0 - x_drag - half_dsq * a2;

    const double y_drag = nw * delta_sq *
                          (2.0 * mu - 1.0 - mu * (1.0 - 1.5 * a2) * half_dsq + 7.0 * (1.0 - mu) * a2 / 2.0) /
                          (3.0 * mass * y0 * y0 * y0);
    const double y_inner = 1.0 - y_drag - delta_sq * (1.0 - half_dsq) * a2 / (y0 * y0);
    if (y_inner < 0.0) throw Error(ErrorKind::invalid_params, "y-series radicand is negative");
    const double y_star = y0 * std::sqrt(y_inner);

    EquilibriumPoint p;
    p.x_star = x_star;
    p.y_star = y_star;
    p.branch = branch;
    p.anchor_x0 = x0;
    p.anchor_y0 = y0;
    p.method = LocateMethod::series45;
    return p;
}

LinearSeriesPoint locate_series_linear(const DerivedParams& d) {
    const double s3 = std::sqrt(3.0);
    const double e = d.eps;
    const double a2 = d.a2;
    const double g = d.gamma;
    const double nw = d.n * d.w1;
    const double x = g / 2.0 - e / 3.0 - a2 / 2.0 + a2 * e / 3.0 - (9.0 + g) / (6.0 * s3) * nw -
                     4.0 * g * e / (27.0 * s3) * nw;
    const double y = s3 / 2.0 *
                     (1.0 - 2.0 * e / 9.0 - a2 / 3.0 - 2.0 * a2 * e / 9.0 + (1.0 + g) / (9.0 * s3) * nw -
                      4.0 * g * e / (27.0 * s3) * nw);
    // a = x* + mu by definition; the printed closed form for a drops its leading 1.
    return {x, y, x + d.mu, y};
}

Point equilibrium_residual(Point pos, const DerivedParams& d) {
    const Point grad = potential_gradient(pos, d);
    const double dx = pos.x + d.mu;
    const double r1_sq = dx * dx + pos.y * pos.y;
    const double n1 = -d.n * pos.y;
    const double n2 = d.n * dx;
    return {grad.x - d.w1 * n1 / r1_sq, grad.y - d.w1 * n2 / r1_sq};
}

EquilibriumPoint refine_newton(const DerivedParams& d, Point guess, Branch branch,
                               const numerics::NewtonOptions& opts) {
    if (guess.y == 0.0) throw Error(ErrorKind::invalid_params, "triangular points need y != 0");
    const auto result = numerics::newton2(
        [&](const numerics::Vec2& p) {
            const Point r = equilibrium_residual({p[0], p[1]}, d);
            return numerics::Vec2{r.x, r.y};
        },
        {guess.x, guess.y}, opts);

    EquilibriumPoint p;
    p.x_star = result.root[0];
    p.y_star = result.root[1];
    p.branch = branch;
    p.anchor_x0 = d.delta * d.delta / 2.0 - d.mu;
    const double radicand = 1.0 - d.delta * d.delta / 4.0;
    p.anchor_y0 = (branch == Branch::L4 ? 1.0 : -1.0) * d.delta * std::sqrt(std::max(radicand, 0.0));
    p.method = LocateMethod::newton;
    p.iterations = result.iterations;
    p.residual = result.residual;
    if ((branch == Branch::L4) != (p.y_star > 0.0)) {
        throw Error(ErrorKind::no_convergence, "Newton iteration left the requested branch");
    }
    return p;
}

EquilibriumPoint locate_refined(const DerivedParams& d, Branch branch, const numerics::NewtonOptions& opts) {
    const EquilibriumPoint guess = locate_series(d, branch);
    return refine_newton(d, guess.position(), branch, opts);
}

} // namespace prtbp
