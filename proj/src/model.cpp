#include "prtbp/model.hpp"

#include <cmath>
#include <string>

#include "prtbp/error.hpp"

namespace prtbp {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::invalid_params, what);
}

} // namespace

void validate(const SystemParams& p) {
    require(std::isfinite(p.mu) && p.mu >= 0.0 && p.mu <= 0.5, "mu must lie in [0, 1/2]");
    require(std::isfinite(p.q1) && p.q1 <= 1.0, "q1 must be finite and <= 1");
    require(std::isfinite(p.a2) && p.a2 >= 0.0, "a2 must be finite and >= 0");
    require(p.c_d.has_value() || p.w1_override.has_value(), "either c_d or w1_override must be given");
    if (p.c_d) require(std::isfinite(*p.c_d) && *p.c_d > 0.0, "c_d must be > 0");
    if (p.w1_override) require(std::isfinite(*p.w1_override) && *p.w1_override >= 0.0, "w1_override must be >= 0");
}

DerivedParams derive_params(const SystemParams& p) {
    validate(p);
    DerivedParams d;
    d.mu = p.mu;
    d.q1 = p.q1;
    d.a2 = p.a2;
    d.c_d = p.c_d;
    d.w1_override = p.w1_override;
    d.n = std::sqrt(1.0 + 1.5 * p.a2);
    d.w1 = p.w1_override ? *p.w1_override : (1.0 - p.mu) * (1.0 - p.q1) / *p.c_d;
    d.eps = 1.0 - p.q1;
    d.delta = std::cbrt(p.q1);
    d.gamma = 1.0 - 2.0 * p.mu;
    return d;
}

DerivedParams with_mu(const DerivedParams& d, double mu) {
    SystemParams p = d.system();
    p.mu = mu;
    return derive_params(p);
}

double mass_reduction_factor(double grain_radius, double density, double efficiency) {
    require(grain_radius > 0.0, "grain radius must be > 0");
    require(density > 0.0, "density must be > 0");
    require(efficiency >= 0.0, "efficiency must be >= 0");
    return 1.0 - 5.6e-5 * efficiency / (grain_radius * density);
}

double oblateness_coeff(double r_e, double r_p, double r) {
    require(r > 0.0, "separation must be > 0");
    require(r_p >= 0.0 && r_e >= r_p, "radii must satisfy r_e >= r_p >= 0");
    return (r_e * r_e - r_p * r_p) / (5.0 * r * r);
}

PrimaryDistances primary_distances(Point pos, const DerivedParams& d) {
    const double r1 = std::hypot(pos.x + d.mu, pos.y);
    const double r2 = std::hypot(pos.x + d.mu - 1.0, pos.y);
    if (r1 < kSingularRadius || r2 < kSingularRadius) {
        throw Error(ErrorKind::singularity, "position within guard radius of a primary");
    }
    return {r1, r2};
}

double potential_phi(Point pos, const DerivedParams& d) {
    const auto [r1, r2] = primary_distances(pos, d);
    return (1.0 - d.mu) * d.q1 / r1 + d.mu / r2 + d.mu * d.a2 / (2.0 * r2 * r2 * r2);
}

double potential_u1(Point pos, const DerivedParams& d) {
    return 0.5 * d.n * d.n * (pos.x * pos.x + pos.y * pos.y) + potential_phi(pos, d);
}

Point potential_gradient(Point pos, const DerivedParams& d) {
    const auto [r1, r2] = primary_distances(pos, d);
    const double r1_3 = r1 * r1 * r1;
    const double r2_2 = r2 * r2;
    const double r2_3 = r2_2 * r2;
    // radial factors: d/dr of (1-mu) q1/r and mu/r + mu A2/(2 r^3), divided by r
    const double k1 = (1.0 - d.mu) * d.q1 / r1_3;
    const double k2 = d.mu / r2_3 + 1.5 * d.mu * d.a2 / (r2_3 * r2_2);
    const double n2 = d.n * d.n;
    return {n2 * pos.x - k1 * (pos.x + d.mu) - k2 * (pos.x + d.mu - 1.0),
            n2 * pos.y - k1 * pos.y - k2 * pos.y};
}

DragNumerators drag_numerators(const KineState& s, const DerivedParams& d) {
    const double dx = s.x + d.mu;
    const double r1_sq = dx * dx + s.y * s.y;
    if (std::sqrt(r1_sq) < kSingularRadius) {
        throw Error(ErrorKind::singularity, "drag evaluated at the radiating primary");
    }
    const double radial = dx * s.vx + s.y * s.vy;
    return {dx * radial / r1_sq + s.vx - d.n * s.y,
            s.y * radial / r1_sq + s.vy + d.n * dx};
}

Vec4 eom_rhs(const KineState& s, const DerivedParams& d) {
    const Point grad = potential_gradient({s.x, s.y}, d);
    const auto [n1, n2] = drag_numerators(s, d);
    const double dx = s.x + d.mu;
    const double r1_sq = dx * dx + s.y * s.y;
    return {s.vx, s.vy,
            2.0 * d.n * s.vy + grad.x - d.w1 * n1 / r1_sq,
            -2.0 * d.n * s.vx + grad.y - d.w1 * n2 / r1_sq};
}

namespace {

// W1/(2 r1^2), shared by both directions of the momentum map.
double drag_gauge(double x, double y, const DerivedParams& d) {
    const double dx = x + d.mu;
    const double r1_sq = dx * dx + y * y;
    if (std::sqrt(r1_sq) < kSingularRadius) {
        throw Error(ErrorKind::singularity, "momentum map at the radiating primary");
    }
    return d.w1 / (2.0 * r1_sq);
}

} // namespace

MomentumState to_momenta(const KineState& s, const DerivedParams& d) {
    const double g = drag_gauge(s.x, s.y, d);
    return {s.x, s.y, s.vx - d.n * s.y + g * (s.x + d.mu), s.vy + d.n * s.x + g * s.y};
}

KineState to_velocities(const MomentumState& m, const DerivedParams& d) {
    const double g = drag_gauge(m.x, m.y, d);
    return {m.x, m.y, m.px + d.n * m.y - g * (m.x + d.mu), m.py - d.n * m.x - g * m.y};
}

} // namespace prtbp
