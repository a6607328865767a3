#pragma once

// Expansion of the Lagrangian/Hamiltonian about the triangular point in
// powers of the displacement (x, y): constant L0, linear L1, quadratic
// coefficients E, F, G and cubic coefficients T1..T5.

#include <optional>
#include <string>
#include <vector>

#include "prtbp/equilibria.hpp"
#include "prtbp/model.hpp"
#include "prtbp/numerics.hpp"

namespace prtbp {

/// H2 = (px^2+py^2)/2 + n (y px - x py) + E x^2 + F y^2 + G x y
struct QuadCoeffs {
    double e = 0.0;
    double f = 0.0;
    double g = 0.0;
    double n = 1.0;
};

/// Third partials of U1 at the equilibrium: L3 = +(1/3!)(T1 x^3 + 3 T2 x^2 y + 3 T3 x y^2 + T4 y^3) + T5.
struct CubicCoeffs {
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    double t4 = 0.0;
};

/// Adopted quadratic coefficients. Two printed typos are corrected:
/// the eps terms of E read (-2 eps + gamma 6 eps), and the gamma bracket of
/// G opens with (6 + 2 eps/3), the same bracket that appears in J23.
QuadCoeffs quad_coeffs(const DerivedParams& d);

/// The quadratic coefficients exactly as printed (G's gamma bracket opening "6 eps - eps/3").
QuadCoeffs quad_coeffs_printed(const DerivedParams& d);

CubicCoeffs cubic_coeffs(const DerivedParams& d);

/// State-dependent drag cubic term on a displacement state (x, y, xdot, ydot).
double drag_cubic_t5(const KineState& disp, double a, double b, double w1);

/// L1 = c_vx xdot + c_vy ydot + c_x x + c_y y
struct SeriesL0L1 {
    double l0 = 0.0;
    double c_vx = 0.0;
    double c_vy = 0.0;
    double c_x = 0.0;
    double c_y = 0.0;
};
SeriesL0L1 series_l0_l1(const DerivedParams& d);

/// H2 at a displacement from the equilibrium in canonical form.
double h2_eval(const MomentumState& disp, const QuadCoeffs& q);

struct HessianOracle {
    double uxx;
    double uyy;
    double uxy;
};

/// Second partials of U1 by Richardson-extrapolated central differences. Requires w1 = 0.
HessianOracle fd_hessian_oracle(const EquilibriumPoint& eq, const DerivedParams& d,
                                const numerics::FdConfig& cfg = {1e-3, true});

struct ThirdOracle {
    double xxx;
    double xxy;
    double xyy;
    double yyy;
};

/// Third partials of the gravitational + oblateness part of U1. Requires w1 = 0.
ThirdOracle fd_third_oracle(const EquilibriumPoint& eq, const DerivedParams& d,
                            const numerics::FdConfig& cfg = {5e-3, true});

enum class LedgerStatus {
    corrected, ///< adopted value replaces the printed one
    flagged,   ///< mismatch recorded, printed value kept
    reading    ///< interpretation of an ambiguous or garbled term
};

const char* to_string(LedgerStatus s) noexcept;

struct LedgerEntry {
    std::string coefficient;
    LedgerStatus status = LedgerStatus::reading;
    std::optional<double> printed_value;
    std::optional<double> oracle_value;
    std::optional<double> adopted_value;
    std::string note;
};

struct DiscrepancyLedger {
    std::vector<LedgerEntry> entries;

    const LedgerEntry* find(const std::string& coefficient) const;
};

} // namespace prtbp
