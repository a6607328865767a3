#pragma once

// Second-order normalisation about the triangular point: the linear
// canonical map X = J T carries H2 to w1 I1 - w2 I2. Only the six printed
// entries of J (x and y rows against the mode amplitudes) are available.

#include "prtbp/equilibria.hpp"
#include "prtbp/model.hpp"

namespace prtbp {

struct LkFactors {
    double l1; ///< sqrt(4 w1^2 + 9)
    double l2;
    double k1; ///< sqrt(2 w1^2 - 1)
    double k2; ///< sqrt(1 - 2 w2^2)
};

/// Throws resonant-degeneracy when k1^2 or k2^2 falls below 1e-9, i.e. a frequency sits at 1/sqrt(2).
LkFactors lk_factors(double omega1, double omega2);

struct NormalFormMap {
    double omega1 = 0.0;
    double omega2 = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double j13 = 0.0;
    double j14 = 0.0;
    double j21 = 0.0;
    double j22 = 0.0;
    double j23 = 0.0;
    double j24 = 0.0;
};

/// Evaluates the six bracketed series. The final two brackets of J24 use l2, k2.
NormalFormMap j_coeffs(const DerivedParams& d, double omega1, double omega2);

/// J24 with the l1, k1 factors of its final two brackets exactly as printed.
double j24_printed(const DerivedParams& d, double omega1, double omega2);

struct ActionAngle {
    double i1 = 0.0;
    double i2 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
};

struct NormalCoords {
    double q1 = 0.0;
    double q2 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
};

/// P_i = sqrt(2 I_i w_i) cos(phi_i), Q_i = sqrt(2 I_i / w_i) sin(phi_i)
NormalCoords action_angle_map(const ActionAngle& aa, double omega1, double omega2);

/// Inverse of action_angle_map; angles returned in (-pi, pi].
ActionAngle action_angle_from(const NormalCoords& qp, double omega1, double omega2);

double normal_h2(const ActionAngle& aa, double omega1, double omega2);

/// Angles at time t. From H2 = w1 I1 - w2 I2: phi1 advances at +w1, phi2 at -w2.
ActionAngle advance(const ActionAngle& aa0, const NormalFormMap& nf, double t);

/// Displacement from the equilibrium at time t.
Point orbit_reconstruct(const NormalFormMap& nf, const ActionAngle& aa0, double t);

/// Displacement and its time derivative at time t.
KineState orbit_state(const NormalFormMap& nf, const ActionAngle& aa0, double t);

/// Max over the span of |reconstructed - integrated| / max |reconstructed|, where the
/// integration runs RK4 on the linearisation of the full vector field at `eq`.
double reconstruction_residual(const NormalFormMap& nf, const DerivedParams& d, const EquilibriumPoint& eq,
                               const ActionAngle& aa0, double t_span, double dt);

} // namespace prtbp
