#pragma once

// Parameter sweeps over a uniform grid. sweep_serial is the reference;
// sweep_parallel distributes grid points over OpenMP threads and must
// return identical rows in grid order.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "prtbp/equilibria.hpp"
#include "prtbp/model.hpp"

namespace prtbp {

enum class SweepParam { mu, q1, eps, a2, w1, cd };

const char* to_string(SweepParam p) noexcept;
SweepParam parse_sweep_param(const std::string& name);

struct SweepSpec {
    SweepParam param = SweepParam::mu;
    double from = 0.0;
    double to = 0.0;
    int steps = 2;
};

/// Throws invalid-params unless steps >= 2 and from < to.
void validate(const SweepSpec& spec);

/// Grid value i of steps, endpoints inclusive.
double grid_value(const SweepSpec& spec, int i);

struct SweepRow {
    double value = 0.0;
    std::optional<double> x_star;
    std::optional<double> y_star;
    std::optional<double> e;
    std::optional<double> f;
    std::optional<double> g;
    std::optional<double> disc;
    std::optional<double> omega1;
    std::optional<double> omega2;
    std::optional<double> mu_c_series;
    std::optional<double> mu_c_numeric;
    std::optional<bool> stable;
    std::string error; ///< empty when the row evaluated cleanly
};

bool operator==(const SweepRow& a, const SweepRow& b);

/// One grid point. Never throws; failures land in row.error.
SweepRow evaluate_sweep_point(const SystemParams& base, SweepParam param, double value, Branch branch);

std::vector<SweepRow> sweep_serial(const SystemParams& base, const SweepSpec& spec, Branch branch);
std::vector<SweepRow> sweep_parallel(const SystemParams& base, const SweepSpec& spec, Branch branch);

/// Column order: param,value,x_star,y_star,E,F,G,D,omega1,omega2,mu_c_series,mu_c_numeric,stable,error
void write_sweep_csv(std::ostream& os, SweepParam param, const std::vector<SweepRow>& rows);

} // namespace prtbp
