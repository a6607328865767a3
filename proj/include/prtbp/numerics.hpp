#pragma once

#include <array>
#include <functional>
#include <vector>

#include "prtbp/model.hpp"

namespace prtbp::numerics {

struct FdConfig {
    double step = 1e-4;
    bool richardson = false;
};

/// Throws invalid-params unless step lies in [1e-9, 1e-1].
void validate(const FdConfig& cfg);

/// Central finite-difference derivative of order 1, 2 or 3.
/// Order 3 uses the 5-point stencil. With Richardson enabled the
/// h and h/2 estimates are combined to cancel the O(h^2) term.
double fd_derive(const std::function<double(double)>& f, double x0, int order, const FdConfig& cfg);

using Vec2 = std::array<double, 2>;
using Field2 = std::function<Vec2(const Vec2&)>;

struct NewtonOptions {
    double tol = 1e-12;      ///< on both the step and the residual norm
    int max_iter = 50;
    double jacobian_step = 1e-6;
};

struct NewtonResult {
    Vec2 root;
    int iterations;   ///< Newton steps taken
    double residual;  ///< Euclidean norm of f at the root
};

/// 2-D Newton iteration with a central-difference Jacobian.
/// Throws no-convergence after max_iter steps, singular-jacobian on a vanishing determinant.
NewtonResult newton2(const Field2& f, Vec2 guess, const NewtonOptions& opts = {});

using Field4 = std::function<Vec4(const Vec4&)>;

struct Trajectory {
    std::vector<double> t;
    std::vector<Vec4> y;
};

/// Fixed-step classical RK4. Samples at t0 + k dt; the final step is
/// shortened so the last sample lands on t1 exactly.
Trajectory rk4_integrate(const Field4& field, const Vec4& y0, double t0, double t1, double dt);

/// Roots of z^2 + b z + c = 0. When `complex` is set the roots are first +- i second.
struct QuadraticRoots {
    double first;   ///< larger magnitude root (real case)
    double second;
    bool complex;
};

/// Cancellation-safe: the larger-magnitude root comes from the formula, the other from c / first.
QuadraticRoots biquadratic_roots(double b, double c);

/// Finite-difference Jacobian of a 4-D field (column j = d field / d y_j).
using Mat4 = std::array<std::array<double, 4>, 4>;
Mat4 fd_jacobian(const Field4& field, const Vec4& at, const FdConfig& cfg);

} // namespace prtbp::numerics
