#include "prtbp/sweep.hpp"

#include <ostream>

#include "prtbp/error.hpp"
#include "prtbp/format.hpp"
#include "prtbp/stability.hpp"

namespace prtbp {

const char* to_string(SweepParam p) noexcept {
    switch (p) {
    case SweepParam::mu: return "mu";
    case SweepParam::q1: return "q1";
    case SweepParam::eps: return "eps";
    case SweepParam::a2: return "a2";
    case SweepParam::w1: return "w1";
    case SweepParam::cd: return "cd";
    }
    return "unknown";
}

SweepParam parse_sweep_param(const std::string& name) {
    for (auto p : {SweepParam::mu, SweepParam::q1, SweepParam::eps, SweepParam::a2, SweepParam::w1, SweepParam::cd}) {
        if (name == to_string(p)) return p;
    }
    throw Error(ErrorKind::invalid_params, "unknown sweep parameter '" + name + "'");
}

void validate(const SweepSpec& spec) {
    if (spec.steps < 2) throw Error(ErrorKind::invalid_params, "sweep needs at least 2 steps");
    if (!(spec.from < spec.to)) throw Error(ErrorKind::invalid_params, "sweep needs from < to");
}

double grid_value(const SweepSpec& spec, int i) {
    if (i == spec.steps - 1) return spec.to;
    return spec.from + (spec.to - spec.from) * static_cast<double>(i) / static_cast<double>(spec.steps - 1);
}

bool operator==(const SweepRow& a, const SweepRow& b) {
    return a.value == b.value && a.x_star == b.x_star && a.y_star == b.y_star && a.e == b.e && a.f == b.f &&
           a.g == b.g && a.disc == b.disc && a.omega1 == b.omega1 && a.omega2 == b.omega2 &&
           a.mu_c_series == b.mu_c_series && a.mu_c_numeric == b.mu_c_numeric && a.stable == b.stable &&
           a.error == b.error;
}

SweepRow evaluate_sweep_point(const SystemParams& base, SweepParam param, double value, Branch branch) {
    SweepRow row;
    row.value = value;
    try {
        SystemParams p = base;
        switch (param) {
        case SweepParam::mu: p.mu = value; break;
        case SweepParam::q1: p.q1 = value; break;
        case SweepParam::eps: p.q1 = 1.0 - value; break;
        case SweepParam::a2: p.a2 = value; break;
        case SweepParam::w1: p.w1_override = value; break;
        case SweepParam::cd:
            p.c_d = value;
            p.w1_override.reset();
            break;
        }
        const DerivedParams d = derive_params(p);
        const QuadCoeffs q = quad_coeffs(d);
        row.e = q.e;
        row.f = q.f;
        row.g = q.g;
        const Spectrum sp = char_roots(q);
        row.disc = sp.disc;
        row.stable = sp.classification == Classification::stable;
        if (sp.classification == Classification::stable) {
            row.omega1 = sp.omega1;
            row.omega2 = sp.omega2;
        }
        row.mu_c_series = mu_crit_series(d).mu_c;
        row.mu_c_numeric = mu_crit_numeric(d).mu_c;
        const EquilibriumPoint eq = locate_refined(d, branch);
        row.x_star = eq.x_star;
        row.y_star = eq.y_star;
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

std::vector<SweepRow> sweep_serial(const SystemParams& base, const SweepSpec& spec, Branch branch) {
    validate(spec);
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i) {
        rows.push_back(evaluate_sweep_point(base, spec.param, grid_value(spec, i), branch));
    }
    return rows;
}

std::vector<SweepRow> sweep_parallel(const SystemParams& base, const SweepSpec& spec, Branch branch) {
    validate(spec);
    std::vector<SweepRow> rows(static_cast<std::size_t>(spec.steps));
    const int steps = spec.steps;
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < steps; ++i) {
        rows[static_cast<std::size_t>(i)] = evaluate_sweep_point(base, spec.param, grid_value(spec, i), branch);
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, SweepParam param, const std::vector<SweepRow>& rows) {
    os << "param,value,x_star,y_star,E,F,G,D,omega1,omega2,mu_c_series,mu_c_numeric,stable,error\n";
    auto cell = [&](const std::optional<double>& v) {
        os << ',';
        if (v) os << format_double(*v);
    };
    for (const auto& r : rows) {
        os << to_string(param) << ',' << format_double(r.value);
        cell(r.x_star);
        cell(r.y_star);
        cell(r.e);
        cell(r.f);
        cell(r.g);
        cell(r.disc);
        cell(r.omega1);
        cell(r.omega2);
        cell(r.mu_c_series);
        cell(r.mu_c_numeric);
        os << ',';
        if (r.stable) os << (*r.stable ? "true" : "false");
        os << ',' << csv_escape(r.error) << '\n';
    }
}

} // namespace prtbp
