#pragma once

// Independent oracles for the tests. Nothing here calls the library's own
// finite differences or series: derivatives of the potential come from
// truncated Taylor arithmetic in long double, exact up to rounding.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "prtbp/model.hpp"

namespace oracle {

using ld = long double;

// Truncated univariate Taylor series c0 + c1 t + c2 t^2 + c3 t^3.
struct Jet {
    std::array<ld, 4> c{};

    static Jet constant(ld v) { return Jet{{v, 0, 0, 0}}; }
    static Jet line(ld v, ld slope) { return Jet{{v, slope, 0, 0}}; }
};

inline Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}
inline Jet operator-(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}
inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j <= k; ++j) r.c[k] += a.c[j] * b.c[k - j];
    return r;
}
inline Jet operator*(ld s, const Jet& a) {
    Jet r;
    for (int i = 0; i < 4; ++i) r.c[i] = s * a.c[i];
    return r;
}

// g^alpha by the standard power recurrence.
inline Jet pow(const Jet& g, ld alpha) {
    Jet f;
    f.c[0] = std::pow(g.c[0], alpha);
    for (int k = 1; k < 4; ++k) {
        ld s = 0;
        for (int j = 1; j <= k; ++j) s += (alpha * j - (k - j)) * g.c[j] * f.c[k - j];
        f.c[k] = s / (k * g.c[0]);
    }
    return f;
}

// Gravity + oblateness part and the full potential with the centrifugal term.
inline Jet phi(const Jet& x, const Jet& y, const prtbp::DerivedParams& d) {
    const ld mu = d.mu;
    const Jet dx1 = x + Jet::constant(mu);
    const Jet dx2 = x + Jet::constant(mu - 1);
    const Jet s1 = dx1 * dx1 + y * y;
    const Jet s2 = dx2 * dx2 + y * y;
    return ((1 - mu) * static_cast<ld>(d.q1)) * pow(s1, -0.5L) + mu * pow(s2, -0.5L) +
           (mu * static_cast<ld>(d.a2) / 2) * pow(s2, -1.5L);
}

inline Jet u1(const Jet& x, const Jet& y, const prtbp::DerivedParams& d) {
    const ld n2 = static_cast<ld>(d.n) * d.n;
    return (n2 / 2) * (x * x + y * y) + phi(x, y, d);
}

// k-th directional derivative along (a, b) at (x0, y0).
template <class F>
ld directional(F f, ld x0, ld y0, ld a, ld b, int k) {
    const Jet j = f(Jet::line(x0, a), Jet::line(y0, b));
    const ld fact[] = {1, 1, 2, 6};
    return j.c[k] * fact[k];
}

struct Second {
    ld xx, yy, xy;
};
struct Third {
    ld xxx, xxy, xyy, yyy;
};

template <class F>
Second second(F f, ld x0, ld y0) {
    const ld xx = directional(f, x0, y0, 1, 0, 2);
    const ld yy = directional(f, x0, y0, 0, 1, 2);
    const ld pp = directional(f, x0, y0, 1, 1, 2);
    return {xx, yy, (pp - xx - yy) / 2};
}

template <class F>
Third third(F f, ld x0, ld y0) {
    const ld xxx = directional(f, x0, y0, 1, 0, 3);
    const ld yyy = directional(f, x0, y0, 0, 1, 3);
    const ld sp = directional(f, x0, y0, 1, 1, 3);
    const ld sm = directional(f, x0, y0, 1, -1, 3);
    return {xxx, ((sp - sm) / 2 - yyy) / 3, ((sp + sm) / 2 - xxx) / 3, yyy};
}

inline Second hessian_u1(const prtbp::DerivedParams& d, ld x0, ld y0) {
    return second([&](const Jet& x, const Jet& y) { return u1(x, y, d); }, x0, y0);
}

inline Third third_phi(const prtbp::DerivedParams& d, ld x0, ld y0) {
    return third([&](const Jet& x, const Jet& y) { return phi(x, y, d); }, x0, y0);
}

inline std::array<ld, 2> gradient_u1(const prtbp::DerivedParams& d, ld x0, ld y0) {
    auto f = [&](const Jet& x, const Jet& y) { return u1(x, y, d); };
    return {directional(f, x0, y0, 1, 0, 1), directional(f, x0, y0, 0, 1, 1)};
}

// Zero-velocity equilibrium conditions including the drag terms, solved by
// Newton with the exact Jacobian from the jets (long double throughout).
struct Equilibrium {
    ld x, y;
    int iterations;
};

inline Equilibrium equilibrium(const prtbp::DerivedParams& d, ld x, ld y) {
    const ld n = d.n;
    const ld w1 = d.w1;
    const ld mu = d.mu;
    auto residual = [&](ld px, ld py, std::array<ld, 2>& g, std::array<std::array<ld, 2>, 2>& jac) {
        const auto grad = gradient_u1(d, px, py);
        const Second h = hessian_u1(d, px, py);
        const ld a = px + mu;
        const ld r2 = a * a + py * py;
        // Ux = dU1/dx + W1 n y / r1^2, Uy = dU1/dy - W1 n (x+mu) / r1^2
        g = {grad[0] + w1 * n * py / r2, grad[1] - w1 * n * a / r2};
        const ld r4 = r2 * r2;
        jac[0][0] = h.xx + w1 * n * py * (-2 * a) / r4;
        jac[0][1] = h.xy + w1 * n * (r2 - 2 * py * py) / r4;
        jac[1][0] = h.xy - w1 * n * (r2 - 2 * a * a) / r4;
        jac[1][1] = h.yy - w1 * n * a * (-2 * py) / r4;
    };
    int it = 0;
    for (; it < 60; ++it) {
        std::array<ld, 2> g;
        std::array<std::array<ld, 2>, 2> j;
        residual(x, y, g, j);
        const ld det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        const ld dx = (g[0] * j[1][1] - g[1] * j[0][1]) / det;
        const ld dy = (j[0][0] * g[1] - j[1][0] * g[0]) / det;
        x -= dx;
        y -= dy;
        if (std::fabs(dx) + std::fabs(dy) < 1e-17L) break;
    }
    return {x, y, it};
}

inline Equilibrium l4(const prtbp::DerivedParams& d) {
    return equilibrium(d, 0.5L - d.mu, std::sqrt(3.0L) / 2);
}

// Classical closed forms.
inline double mu_crit0() { return (1.0 - std::sqrt(23.0 / 27.0)) / 2.0; }

inline std::array<double, 2> classical_omegas(double mu) {
    const double disc = std::sqrt(1.0 - 27.0 * mu * (1.0 - mu));
    return {std::sqrt((1.0 + disc) / 2.0), std::sqrt((1.0 - disc) / 2.0)};
}

// Drag-free linear spectrum from the exact Hessian: lambda^4 + (4n^2 - Uxx - Uyy) lambda^2 + Uxx Uyy - Uxy^2 = 0.
// Returns {omega1, omega2} or NaNs when not purely imaginary.
inline std::array<double, 2> hessian_omegas(const prtbp::DerivedParams& d, const Second& h) {
    const ld n2 = static_cast<ld>(d.n) * d.n;
    const ld b = 4 * n2 - h.xx - h.yy;
    const ld c = h.xx * h.yy - h.xy * h.xy;
    const ld disc = b * b - 4 * c;
    if (disc <= 0 || b <= 0 || c <= 0) return {NAN, NAN};
    const ld s = std::sqrt(disc);
    return {static_cast<double>(std::sqrt((b + s) / 2)), static_cast<double>(std::sqrt((b - s) / 2))};
}

} // namespace oracle
