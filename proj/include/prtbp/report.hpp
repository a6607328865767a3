#pragma once

// Consistency report: every closed-form series against its numerical
// oracle, with tolerances tiered on the perturbation size, plus the
// discrepancy ledger.

#include <optional>

#include "prtbp/equilibria.hpp"
#include "prtbp/expansion.hpp"
#include "prtbp/format.hpp"
#include "prtbp/model.hpp"
#include "prtbp/numerics.hpp"

namespace prtbp {

/// max(|eps|, |A2|, |n W1|)
double perturbation_size(const DerivedParams& d);

namespace tolerance {
double equilibrium(double pert);
double hessian(double pert);
double third(double pert);
double spectral(double pert);
double mu_crit(double pert);
double identity(double pert);
double reconstruction(double pert);
} // namespace tolerance

/// Ledger for the given parameters. Oracle values need w1 = 0 and are null otherwise;
/// J24 values need a stable spectrum.
DiscrepancyLedger discrepancy_ledger(const DerivedParams& d);

Json to_json(const LedgerEntry& e);
Json to_json(const DiscrepancyLedger& ledger);
Json to_json(const DerivedParams& d);

struct CheckOptions {
    std::optional<double> fd_step;   ///< replaces the Hessian and Jacobian oracle steps
    numerics::NewtonOptions newton;
    double orbit_action = 1e-6;
    int steps_per_period = 4000;
};

/// Throws on invalid parameters or Newton failure; everything downstream of
/// the equilibrium is reported rather than thrown.
Json run_check(const DerivedParams& d, Branch branch, const CheckOptions& opts = {});

} // namespace prtbp
