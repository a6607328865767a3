#pragma once

#include <string>
#include <vector>

#include "prtbp/model.hpp"
#include "prtbp/numerics.hpp"

namespace prtbp {

enum class Branch { L4, L5 };
enum class LocateMethod { series45, series78, newton };

const char* to_string(Branch b) noexcept;
const char* to_string(LocateMethod m) noexcept;

struct EquilibriumPoint {
    double x_star = 0.0;
    double y_star = 0.0;
    Branch branch = Branch::L4;
    double anchor_x0 = 0.0; ///< delta^2/2 - mu
    double anchor_y0 = 0.0; ///< +-delta (1 - delta^2/4)^(1/2)
    LocateMethod method = LocateMethod::series45;
    int iterations = 0;     ///< Newton steps (newton only)
    double residual = 0.0;  ///< |(Ux, Uy)| at the point (newton only)

    Point position() const { return {x_star, y_star}; }
};

/// Above this size a first-order perturbation is flagged as outside the series' range.
inline constexpr double kSeriesGuard = 0.05;

/// Names of perturbations (eps, a2, n*w1) exceeding kSeriesGuard; empty when all are small.
std::vector<std::string> series_guard_warnings(const DerivedParams& d);

/// Triangular point from the first-order closed forms in delta = q1^(1/3),
/// evaluated exactly as printed with the signed y0 of the chosen branch.
EquilibriumPoint locate_series(const DerivedParams& d, Branch branch);

/// Fully linearised L4 coordinates in (eps, A2, nW1) and the shifted constants a = x + mu, b = y.
struct LinearSeriesPoint {
    double x;
    double y;
    double a;
    double b;
};
LinearSeriesPoint locate_series_linear(const DerivedParams& d);

/// (Ux, Uy) at zero velocity: grad U1 - W1 (N1, N2)/r1^2 with N1 = -n y, N2 = n (x+mu).
Point equilibrium_residual(Point pos, const DerivedParams& d);

/// Newton oracle on the zero-velocity equilibrium conditions.
EquilibriumPoint refine_newton(const DerivedParams& d, Point guess, Branch branch,
                               const numerics::NewtonOptions& opts = {});

/// locate_series followed by refine_newton.
EquilibriumPoint locate_refined(const DerivedParams& d, Branch branch,
                                const numerics::NewtonOptions& opts = {});

} // namespace prtbp
