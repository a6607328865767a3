#include "prtbp/numerics.hpp"

#include <cmath>
#include <string>

#include "prtbp/error.hpp"

namespace prtbp::numerics {

void validate(const FdConfig& cfg) {
    if (!(cfg.step >= 1e-9 && cfg.step <= 1e-1)) {
        throw Error(ErrorKind::invalid_params, "finite-difference step must lie in [1e-9, 1e-1]");
    }
}

namespace {

double checked(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw Error(ErrorKind::nan_detected, "non-finite value on stencil");
    return v;
}

double central(const std::function<double(double)>& f, double x0, int order, double h) {
    switch (order) {
    case 1:
        return (checked(f, x0 + h) - checked(f, x0 - h)) / (2.0 * h);
    case 2:
        return (checked(f, x0 + h) - 2.0 * checked(f, x0) + checked(f, x0 - h)) / (h * h);
    case 3:
        return (checked(f, x0 + 2.0 * h) - 2.0 * checked(f, x0 + h) + 2.0 * checked(f, x0 - h) -
                checked(f, x0 - 2.0 * h)) /
               (2.0 * h * h * h);
    default:
        throw Error(ErrorKind::invalid_params, "derivative order must be 1, 2 or 3");
    }
}

} // namespace

double fd_derive(const std::function<double(double)>& f, double x0, int order, const FdConfig& cfg) {
    validate(cfg);
    const double coarse = central(f, x0, order, cfg.step);
    if (!cfg.richardson) return coarse;
    const double fine = central(f, x0, order, 0.5 * cfg.step);
    return (4.0 * fine - coarse) / 3.0;
}

NewtonResult newton2(const Field2& f, Vec2 guess, const NewtonOptions& opts) {
    Vec2 x = guess;
    auto eval = [&](const Vec2& p) {
        const Vec2 v = f(p);
        if (!std::isfinite(v[0]) || !std::isfinite(v[1])) {
            throw Error(ErrorKind::nan_detected, "non-finite residual in Newton iteration");
        }
        return v;
    };
    Vec2 fx = eval(x);
    for (int it = 0; it < opts.max_iter; ++it) {
        const double h = opts.jacobian_step;
        double jac[2][2];
        for (int j = 0; j < 2; ++j) {
            Vec2 xp = x;
            Vec2 xm = x;
            xp[j] += h;
            xm[j] -= h;
            const Vec2 fp = eval(xp);
            const Vec2 fm = eval(xm);
            jac[0][j] = (fp[0] - fm[0]) / (2.0 * h);
            jac[1][j] = (fp[1] - fm[1]) / (2.0 * h);
        }
        const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        const double scale = std::abs(jac[0][0] * jac[1][1]) + std::abs(jac[0][1] * jac[1][0]);
        if (det == 0.0 || std::abs(det) <= 1e-14 * scale) {
            throw Error(ErrorKind::singular_jacobian, "Newton Jacobian is singular");
        }
        const double dx0 = -(jac[1][1] * fx[0] - jac[0][1] * fx[1]) / det;
        const double dx1 = -(-jac[1][0] * fx[0] + jac[0][0] * fx[1]) / det;
        x[0] += dx0;
        x[1] += dx1;
        fx = eval(x);
        const double step = std::hypot(dx0, dx1);
        const double res = std::hypot(fx[0], fx[1]);
        if (step <= opts.tol && res <= opts.tol) return {x, it + 1, res};
        // a step that lands exactly on the root needs no confirming iteration
        if (res == 0.0) return {x, it + 1, res};
    }
    throw Error(ErrorKind::no_convergence,
                "Newton iteration did not converge in " + std::to_string(opts.max_iter) + " steps");
}

Trajectory rk4_integrate(const Field4& field, const Vec4& y0, double t0, double t1, double dt) {
    if (!(dt > 0.0)) throw Error(ErrorKind::invalid_params, "rk4 step must be > 0");
    if (!(t1 >= t0)) throw Error(ErrorKind::invalid_params, "rk4 span must satisfy t1 >= t0");
    const auto steps = static_cast<long>(std::ceil((t1 - t0) / dt - 1e-9));
    Trajectory traj;
    traj.t.reserve(steps + 1);
    traj.y.reserve(steps + 1);
    traj.t.push_back(t0);
    traj.y.push_back(y0);

    auto axpy = [](const Vec4& a, double s, const Vec4& b) {
        return Vec4{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]};
    };

    Vec4 y = y0;
    for (long k = 0; k < steps; ++k) {
        const double t = t0 + static_cast<double>(k) * dt;
        const double h = (k + 1 == steps) ? t1 - t : dt;
        const Vec4 k1 = field(y);
        const Vec4 k2 = field(axpy(y, 0.5 * h, k1));
        const Vec4 k3 = field(axpy(y, 0.5 * h, k2));
        const Vec4 k4 = field(axpy(y, h, k3));
        for (int i = 0; i < 4; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(y[i])) throw Error(ErrorKind::nan_detected, "non-finite state during RK4");
        }
        traj.t.push_back(t + h);
        traj.y.push_back(y);
    }
    return traj;
}

QuadraticRoots biquadratic_roots(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (disc < 0.0) {
        return {-0.5 * b, 0.5 * std::sqrt(-disc), true};
    }
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) return {0.0, 0.0, false};
    return {q, c / q, false};
}

Mat4 fd_jacobian(const Field4& field, const Vec4& at, const FdConfig& cfg) {
    Mat4 jac{};
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 4; ++i) {
            jac[i][j] = fd_derive(
                [&](double s) {
                    Vec4 p = at;
                    p[j] = s;
                    return field(p)[i];
                },
                at[j], 1, cfg);
        }
    }
    return jac;
}

} // namespace prtbp::numerics
