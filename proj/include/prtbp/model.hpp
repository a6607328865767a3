#pragma once

// Planar photogravitational restricted three-body problem with
// Poynting-Robertson drag from the radiating primary and an oblate
// secondary. Canonical units: primary separation 1, total mass 1.
// The radiating primary (mass 1-mu) sits at (-mu, 0), the oblate one at (1-mu, 0).

#include <array>
#include <optional>

namespace prtbp {

/// Guard radius around each primary.
inline constexpr double kSingularRadius = 1e-12;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct SystemParams {
    double mu = 0.0;               ///< mass ratio m2/(m1+m2), in [0, 1/2]
    double q1 = 1.0;               ///< mass-reduction factor of the radiating primary, <= 1
    double a2 = 0.0;               ///< oblateness coefficient of the secondary, >= 0
    std::optional<double> c_d;     ///< dimensionless speed of light, > 0
    std::optional<double> w1_override; ///< direct drag coefficient, bypasses c_d
};

/// SystemParams plus the constants every formula uses.
struct DerivedParams {
    double mu = 0.0;
    double q1 = 1.0;
    double a2 = 0.0;
    std::optional<double> c_d;
    std::optional<double> w1_override;

    double n = 1.0;     ///< mean motion, n^2 = 1 + 3/2 A2
    double w1 = 0.0;    ///< drag coefficient (1-mu)(1-q1)/c_d
    double eps = 0.0;   ///< 1 - q1
    double delta = 1.0; ///< q1^(1/3)
    double gamma = 1.0; ///< 1 - 2 mu

    SystemParams system() const { return {mu, q1, a2, c_d, w1_override}; }
};

/// Synodic position and velocity.
struct KineState {
    double x = 0.0;
    double y = 0.0;
    double vx = 0.0;
    double vy = 0.0;
};

/// Synodic position and canonical momenta.
struct MomentumState {
    double x = 0.0;
    double y = 0.0;
    double px = 0.0;
    double py = 0.0;
};

using Vec4 = std::array<double, 4>;

inline Vec4 to_array(const KineState& s) { return {s.x, s.y, s.vx, s.vy}; }
inline KineState to_kine(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

/// Throws invalid-params when any SystemParams invariant fails.
void validate(const SystemParams& p);

DerivedParams derive_params(const SystemParams& p);

/// Returns a copy of `d` re-derived with a different mass ratio (w1 follows mu when it comes from c_d).
DerivedParams with_mu(const DerivedParams& d, double mu);

/// q = 1 - 5.6e-5 chi / (a rho), CGS units, no clamping.
double mass_reduction_factor(double grain_radius, double density, double efficiency);

/// A2 = (r_e^2 - r_p^2) / (5 r^2).
double oblateness_coeff(double r_e, double r_p, double r);

/// Distances to the two primaries; throws singularity inside the guard radius.
struct PrimaryDistances {
    double r1;
    double r2;
};
PrimaryDistances primary_distances(Point pos, const DerivedParams& d);

/// Gravitational plus oblateness part of U1 (no centrifugal term).
double potential_phi(Point pos, const DerivedParams& d);

/// U1 = n^2 (x^2+y^2)/2 + (1-mu) q1/r1 + mu/r2 + mu A2/(2 r2^3).
double potential_u1(Point pos, const DerivedParams& d);

/// Closed-form (dU1/dx, dU1/dy).
Point potential_gradient(Point pos, const DerivedParams& d);

struct DragNumerators {
    double n1;
    double n2;
};
DragNumerators drag_numerators(const KineState& s, const DerivedParams& d);

/// First-order vector field (vx, vy, ax, ay) of the full drag-perturbed equations of motion.
Vec4 eom_rhs(const KineState& s, const DerivedParams& d);

/// px = vx - n y + W1 (x+mu)/(2 r1^2), py = vy + n x + W1 y/(2 r1^2).
MomentumState to_momenta(const KineState& s, const DerivedParams& d);
KineState to_velocities(const MomentumState& m, const DerivedParams& d);

} // namespace prtbp
