#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "prtbp/equilibria.hpp"
#include "prtbp/error.hpp"
#include "prtbp/expansion.hpp"
#include "prtbp/format.hpp"
#include "prtbp/model.hpp"
#include "prtbp/normal_form.hpp"
#include "prtbp/report.hpp"
#include "prtbp/stability.hpp"
#include "prtbp/sweep.hpp"

namespace prtbp::cli {
namespace {

enum class Format { json, csv };

// Raw flag values; unset fields fall back to the config file, then defaults.
struct Flags {
    std::optional<double> mu, q1, a2, cd, w1;
    std::optional<std::string> branch, format, out;
    std::optional<double> fd_step, tol;
    std::optional<std::string> config;
    // orbit
    std::optional<double> i1, i2, phi1, phi2, t_end, dt;
    // sweep
    std::optional<std::string> param;
    std::optional<double> from, to;
    std::optional<int> steps;
    bool serial = false;
};

struct RunConfig {
    std::string command;
    SystemParams system;
    Branch branch = Branch::L4;
    Format format = Format::json;
    std::optional<std::string> out;
    std::optional<double> fd_step;
    std::optional<double> tol;
    ActionAngle orbit{1e-6, 0.0, 0.0, 0.0};
    std::optional<double> t_end;
    std::optional<double> dt;
    SweepSpec sweep;
    bool serial = false;
};

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::invalid_params: return kInvalidParams;
    case ErrorKind::singularity:
    case ErrorKind::no_convergence:
    case ErrorKind::singular_jacobian:
    case ErrorKind::nan_detected: return kNoConvergence;
    case ErrorKind::resonant_degeneracy:
    case ErrorKind::no_root:
    case ErrorKind::undefined_quantity: return kUndefined;
    }
    return kInvalidParams;
}

Error invalid(const std::string& msg) { return Error(ErrorKind::invalid_params, msg); }

Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid("cannot open config file '" + path + "'");
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw invalid("config file '" + path + "' is not a JSON object");
    return j;
}

template <class T>
std::optional<T> pick(const std::optional<T>& flag, const Json& cfg, const char* key) {
    if (flag) return flag;
    if (cfg.contains(key) && !cfg[key].is_null()) {
        try {
            return cfg[key].get<T>();
        } catch (const Json::exception&) {
            throw invalid(std::string("config key '") + key + "' has the wrong type");
        }
    }
    return std::nullopt;
}

Branch parse_branch(const std::string& s) {
    if (s == "L4") return Branch::L4;
    if (s == "L5") return Branch::L5;
    throw invalid("branch must be L4 or L5");
}

Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    throw invalid("format must be json or csv");
}

RunConfig resolve(const std::string& command, const Flags& f) {
    const Json cfg = f.config ? load_config(*f.config) : Json::object();
    const Json sweep_cfg = cfg.contains("sweep") ? cfg["sweep"] : Json::object();
    const Json orbit_cfg = cfg.contains("orbit") ? cfg["orbit"] : Json::object();

    RunConfig rc;
    rc.command = command;
    const auto mu = pick(f.mu, cfg, "mu");
    if (!mu) throw invalid("--mu is required");
    rc.system.mu = *mu;
    rc.system.q1 = pick(f.q1, cfg, "q1").value_or(1.0);
    rc.system.a2 = pick(f.a2, cfg, "a2").value_or(0.0);
    rc.system.c_d = pick(f.cd, cfg, "cd");
    rc.system.w1_override = pick(f.w1, cfg, "w1");
    if (!rc.system.c_d && !rc.system.w1_override) {
        // No drag information means no drag.
        rc.system.w1_override = 0.0;
    }
    rc.branch = parse_branch(pick(f.branch, cfg, "branch").value_or("L4"));
    rc.format = parse_format(pick(f.format, cfg, "format").value_or("json"));
    rc.out = pick(f.out, cfg, "out");
    rc.fd_step = pick(f.fd_step, cfg, "fd_step");
    rc.tol = pick(f.tol, cfg, "tol");
    if (rc.fd_step) numerics::validate(numerics::FdConfig{*rc.fd_step, false});
    if (rc.tol && !(*rc.tol > 0.0 && std::isfinite(*rc.tol))) throw invalid("--tol must be positive");

    rc.orbit.i1 = pick(f.i1, orbit_cfg, "i1").value_or(1e-6);
    rc.orbit.i2 = pick(f.i2, orbit_cfg, "i2").value_or(0.0);
    rc.orbit.phi1 = pick(f.phi1, orbit_cfg, "phi1").value_or(0.0);
    rc.orbit.phi2 = pick(f.phi2, orbit_cfg, "phi2").value_or(0.0);
    rc.t_end = pick(f.t_end, orbit_cfg, "t_end");
    rc.dt = pick(f.dt, orbit_cfg, "dt");

    if (command == "sweep") {
        const auto param = pick(f.param, sweep_cfg, "param");
        const auto from = pick(f.from, sweep_cfg, "from");
        const auto to = pick(f.to, sweep_cfg, "to");
        const auto steps = pick(f.steps, sweep_cfg, "steps");
        if (!param || !from || !to || !steps) throw invalid("sweep needs --param, --from, --to and --steps");
        rc.sweep = {parse_sweep_param(*param), *from, *to, *steps};
        validate(rc.sweep);
    }
    rc.serial = f.serial;
    return rc;
}

numerics::NewtonOptions newton_opts(const RunConfig& rc) {
    numerics::NewtonOptions o;
    if (rc.tol) o.tol = *rc.tol;
    return o;
}

Json point_json(const EquilibriumPoint& p) {
    Json j;
    j["x"] = p.x_star;
    j["y"] = p.y_star;
    j["method"] = to_string(p.method);
    if (p.method == LocateMethod::newton) {
        j["iterations"] = p.iterations;
        j["residual"] = p.residual;
    }
    return j;
}

Json cmd_params(const DerivedParams& d) {
    Json j = to_json(d);
    j["perturbation"] = perturbation_size(d);
    j["warnings"] = series_guard_warnings(d);
    return j;
}

Json cmd_locate(const DerivedParams& d, const RunConfig& rc) {
    Json j;
    j["branch"] = to_string(rc.branch);
    const EquilibriumPoint s = locate_series(d, rc.branch);
    const EquilibriumPoint n = refine_newton(d, s.position(), rc.branch, newton_opts(rc));
    const LinearSeriesPoint lin = locate_series_linear(d);
    const double m = rc.branch == Branch::L5 ? -1.0 : 1.0;
    j["anchor"] = {{"x0", s.anchor_x0}, {"y0", s.anchor_y0}};
    j["series45"] = point_json(s);
    j["series78"] = {{"x", lin.x}, {"y", m * lin.y}, {"a", lin.a}, {"b", m * lin.b}};
    j["newton"] = point_json(n);
    j["delta_series45"] = std::max(std::abs(s.x_star - n.x_star), std::abs(s.y_star - n.y_star));
    j["warnings"] = series_guard_warnings(d);
    return j;
}

Json cmd_coeffs(const DerivedParams& d) {
    const QuadCoeffs q = quad_coeffs(d);
    const QuadCoeffs qp = quad_coeffs_printed(d);
    const CubicCoeffs c = cubic_coeffs(d);
    Json j;
    j["n"] = q.n;
    j["E"] = q.e;
    j["F"] = q.f;
    j["G"] = q.g;
    j["printed"] = {{"E", qp.e}, {"F", qp.f}, {"G", qp.g}};
    j["T1"] = c.t1;
    j["T2"] = c.t2;
    j["T3"] = c.t3;
    j["T4"] = c.t4;
    const LinearSeriesPoint lin = locate_series_linear(d);
    j["a"] = lin.a;
    j["b"] = lin.b;
    const SeriesL0L1 l = series_l0_l1(d);
    j["L0"] = l.l0;
    j["L1"] = {{"xdot", l.c_vx}, {"ydot", l.c_vy}, {"x", l.c_x}, {"y", l.c_y}};
    j["warnings"] = series_guard_warnings(d);
    return j;
}

Json spectrum_json(const Spectrum& sp) {
    Json j;
    j["b"] = sp.b_coeff;
    j["c"] = sp.c_coeff;
    j["D"] = sp.disc;
    j["classification"] = to_string(sp.classification);
    j["omega1"] = sp.omega1 ? Json(*sp.omega1) : Json(nullptr);
    j["omega2"] = sp.omega2 ? Json(*sp.omega2) : Json(nullptr);
    return j;
}

Json cmd_stability(const DerivedParams& d, const RunConfig& rc) {
    const StabilityReport rep = classify(d, rc.branch);
    Json j;
    j["branch"] = to_string(rc.branch);
    j["equilibrium"] = point_json(rep.equilibrium);
    j["E"] = rep.coeffs.e;
    j["F"] = rep.coeffs.f;
    j["G"] = rep.coeffs.g;
    j["spectrum"] = spectrum_json(rep.spectrum);
    j["mu_c_series"] = rep.mu_c_series.mu_c;
    j["mu_c_numeric"] = rep.mu_c_numeric.mu_c;
    j["stable"] = rep.stable;
    j["stable_by_series"] = rep.stable_by_series;
    if (rep.spectrum.classification == Classification::stable) {
        const IdentityResiduals ir = freq_identity_residuals(d, rep.spectrum);
        j["identities"] = {{"r24", ir.r24}, {"r25", ir.r25}, {"r26_1", ir.r26_1}, {"r26_2", ir.r26_2}, {"r27", ir.r27}};
    }
    return j;
}

Json cmd_mucrit(const DerivedParams& d) {
    Json j;
    j["series"] = mu_crit_series(d).mu_c;
    j["numeric"] = mu_crit_numeric(d).mu_c;
    j["mu"] = d.mu;
    return j;
}

NormalFormMap stable_map(const DerivedParams& d) {
    const Spectrum sp = char_roots(quad_coeffs(d));
    if (sp.classification != Classification::stable) {
        throw Error(ErrorKind::undefined_quantity,
                    std::string("normal form needs a stable spectrum; got ") + to_string(sp.classification));
    }
    return j_coeffs(d, *sp.omega1, *sp.omega2);
}

Json cmd_normalform(const DerivedParams& d, const RunConfig& rc) {
    const NormalFormMap nf = stable_map(d);
    Json j;
    j["branch"] = to_string(rc.branch);
    j["experimental"] = rc.branch == Branch::L5;
    j["omega1"] = nf.omega1;
    j["omega2"] = nf.omega2;
    j["l1"] = nf.l1;
    j["l2"] = nf.l2;
    j["k1"] = nf.k1;
    j["k2"] = nf.k2;
    j["J13"] = nf.j13;
    j["J14"] = nf.j14;
    j["J21"] = nf.j21;
    j["J22"] = nf.j22;
    j["J23"] = nf.j23;
    j["J24"] = nf.j24;
    j["J24_printed"] = j24_printed(d, nf.omega1, nf.omega2);
    return j;
}

struct OrbitSample {
    double t;
    Point abs;
    KineState disp;
};

std::vector<OrbitSample> orbit_samples(const DerivedParams& d, const RunConfig& rc, NormalFormMap& nf,
                                       EquilibriumPoint& eq) {
    nf = stable_map(d);
    eq = locate_refined(d, rc.branch, newton_opts(rc));
    const double t_end = rc.t_end.value_or(2.0 * std::numbers::pi / nf.omega2);
    const double dt = rc.dt.value_or(t_end / 200.0);
    if (!(t_end > 0.0) || !(dt > 0.0) || !std::isfinite(t_end) || !std::isfinite(dt)) {
        throw invalid("orbit needs t_end > 0 and dt > 0");
    }
    if (rc.orbit.i1 < 0.0 || rc.orbit.i2 < 0.0) throw invalid("actions must be non-negative");
    const auto n = static_cast<long>(std::ceil(t_end / dt - 1e-9));
    if (n > 10'000'000) throw invalid("too many orbit samples");
    std::vector<OrbitSample> out;
    out.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) {
        const double t = std::min(static_cast<double>(i) * dt, t_end);
        const KineState s = orbit_state(nf, rc.orbit, t);
        out.push_back({t, {eq.x_star + s.x, eq.y_star + s.y}, s});
    }
    return out;
}

Json sweep_row_json(const SweepRow& r) {
    auto o = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    Json j;
    j["value"] = r.value;
    j["x_star"] = o(r.x_star);
    j["y_star"] = o(r.y_star);
    j["E"] = o(r.e);
    j["F"] = o(r.f);
    j["G"] = o(r.g);
    j["D"] = o(r.disc);
    j["omega1"] = o(r.omega1);
    j["omega2"] = o(r.omega2);
    j["mu_c_series"] = o(r.mu_c_series);
    j["mu_c_numeric"] = o(r.mu_c_numeric);
    j["stable"] = r.stable ? Json(*r.stable) : Json(nullptr);
    j["error"] = r.error;
    return j;
}

void emit(std::ostream& os, const RunConfig& rc, const DerivedParams& d) {
    const auto& c = rc.command;
    if (c == "sweep") {
        const auto rows = rc.serial ? sweep_serial(rc.system, rc.sweep, rc.branch)
                                    : sweep_parallel(rc.system, rc.sweep, rc.branch);
        if (rc.format == Format::csv) {
            write_sweep_csv(os, rc.sweep.param, rows);
        } else {
            Json j;
            j["param"] = to_string(rc.sweep.param);
            j["branch"] = to_string(rc.branch);
            Json arr = Json::array();
            for (const auto& r : rows) arr.push_back(sweep_row_json(r));
            j["rows"] = arr;
            os << dump_json(j) << '\n';
        }
        return;
    }
    if (c == "orbit") {
        NormalFormMap nf;
        EquilibriumPoint eq;
        const auto samples = orbit_samples(d, rc, nf, eq);
        if (rc.format == Format::csv) {
            os << "t,x,y,dx,dy,dvx,dvy\n";
            for (const auto& s : samples) {
                os << format_double(s.t) << ',' << format_double(s.abs.x) << ',' << format_double(s.abs.y) << ','
                   << format_double(s.disp.x) << ',' << format_double(s.disp.y) << ',' << format_double(s.disp.vx)
                   << ',' << format_double(s.disp.vy) << '\n';
            }
        } else {
            Json j;
            j["branch"] = to_string(rc.branch);
            j["experimental"] = rc.branch == Branch::L5;
            j["equilibrium"] = {{"x", eq.x_star}, {"y", eq.y_star}};
            j["omega1"] = nf.omega1;
            j["omega2"] = nf.omega2;
            j["actions"] = {{"i1", rc.orbit.i1}, {"i2", rc.orbit.i2}, {"phi1", rc.orbit.phi1}, {"phi2", rc.orbit.phi2}};
            Json arr = Json::array();
            for (const auto& s : samples) {
                arr.push_back({{"t", s.t}, {"x", s.abs.x}, {"y", s.abs.y}, {"dx", s.disp.x}, {"dy", s.disp.y}});
            }
            j["samples"] = arr;
            os << dump_json(j) << '\n';
        }
        return;
    }

    Json j;
    if (c == "params") {
        j = cmd_params(d);
    } else if (c == "locate") {
        j = cmd_locate(d, rc);
    } else if (c == "coeffs") {
        j = cmd_coeffs(d);
    } else if (c == "stability") {
        j = cmd_stability(d, rc);
    } else if (c == "mucrit") {
        j = cmd_mucrit(d);
    } else if (c == "normalform") {
        j = cmd_normalform(d, rc);
    } else if (c == "check") {
        CheckOptions opts;
        opts.fd_step = rc.fd_step;
        opts.newton = newton_opts(rc);
        j = run_check(d, rc.branch, opts);
    }
    if (rc.format == Format::csv) {
        write_json_as_csv(os, j);
    } else {
        os << dump_json(j) << '\n';
    }
}

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--mu", f.mu, "mass ratio m2/(m1+m2), in (0, 1/2]");
    sub->add_option("--q1", f.q1, "mass-reduction factor of the radiating primary (default 1)");
    sub->add_option("--a2", f.a2, "oblateness coefficient of the secondary (default 0)");
    sub->add_option("--cd", f.cd, "dimensionless speed of light; W1 = (1-mu)(1-q1)/cd");
    sub->add_option("--w1", f.w1, "drag coefficient W1, overrides --cd");
    sub->add_option("--branch", f.branch, "L4 or L5 (default L4)");
    sub->add_option("--format", f.format, "json or csv (default json)");
    sub->add_option("--out", f.out, "write to this file instead of stdout");
    sub->add_option("--fd-step", f.fd_step, "finite-difference step for the oracles");
    sub->add_option("--tol", f.tol, "Newton tolerance on step and residual (default 1e-12)");
    sub->add_option("--config", f.config, "JSON config file; command-line flags take precedence");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Triangular points of the photogravitational RTBP with P-R drag and an oblate secondary", "prtbp"};
    app.require_subcommand(1);
    Flags f;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"params", "derived parameters"},
        {"locate", "triangular equilibrium: series and Newton"},
        {"coeffs", "expansion coefficients E, F, G, T1..T4, L0, L1"},
        {"stability", "characteristic roots, discriminant and classification"},
        {"mucrit", "critical mass ratio, series and numeric"},
        {"normalform", "l, k factors and J coefficients"},
        {"orbit", "linear orbit from the normal form"},
        {"sweep", "parameter sweep"},
        {"check", "series-vs-oracle consistency report"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        add_common(sub, f);
        if (name == "orbit") {
            sub->add_option("--i1", f.i1, "action I1 (default 1e-6)");
            sub->add_option("--i2", f.i2, "action I2 (default 0)");
            sub->add_option("--phi1", f.phi1, "initial angle phi1");
            sub->add_option("--phi2", f.phi2, "initial angle phi2");
            sub->add_option("--t-end", f.t_end, "end time (default one long period)");
            sub->add_option("--dt", f.dt, "sample spacing (default t_end/200)");
        }
        if (name == "sweep") {
            sub->add_option("--param", f.param, "mu, q1, eps, a2, w1 or cd");
            sub->add_option("--from", f.from, "first grid value");
            sub->add_option("--to", f.to, "last grid value");
            sub->add_option("--steps", f.steps, "grid points, at least 2");
            sub->add_flag("--serial", f.serial, "use the serial reference loop");
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidParams;
    }

    std::string command;
    for (const auto* sub : app.get_subcommands()) command = sub->get_name();

    try {
        const RunConfig rc = resolve(command, f);
        const DerivedParams d = derive_params(rc.system);
        std::ostringstream buf;
        emit(buf, rc, d);
        if (rc.out) {
            std::ofstream file(*rc.out, std::ios::binary);
            if (!file) throw invalid("cannot write '" + *rc.out + "'");
            file << buf.str();
        } else {
            out << buf.str();
        }
        return kOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidParams;
    }
}

} // namespace prtbp::cli
