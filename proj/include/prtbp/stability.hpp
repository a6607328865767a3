#pragma once

#include <complex>
#include <optional>

#include "prtbp/equilibria.hpp"
#include "prtbp/expansion.hpp"
#include "prtbp/model.hpp"

namespace prtbp {

enum class Classification { stable, marginal, unstable };
const char* to_string(Classification c) noexcept;

/// Tolerance on the discriminant below which the spectrum counts as marginal.
inline constexpr double kMarginalTol = 1e-12;

/// Roots of lambda^4 + b lambda^2 + c = 0 for the quadratic Hamiltonian.
struct Spectrum {
    double b_coeff = 0.0; ///< 2 (E + F + n^2)
    double c_coeff = 0.0; ///< 4EF - G^2 + n^4 - 2 n^2 (E + F)
    double disc = 0.0;    ///< b^2 - 4c
    std::optional<double> omega1; ///< larger frequency, in (1/sqrt2, 1) when stable
    std::optional<double> omega2;
    Classification classification = Classification::unstable;
};

Spectrum char_roots(const QuadCoeffs& q, double marginal_tol = kMarginalTol);

/// Determinant of the 4x4 matrix of the eigen-system for H2 at lambda.
std::complex<double> matrix_a_det(const QuadCoeffs& q, std::complex<double> lambda);

enum class MuCritMethod { series, numeric };

struct CriticalMu {
    double mu_c = 0.0;
    MuCritMethod method = MuCritMethod::series;
};

/// Classical critical mass ratio (1 - sqrt(23/27))/2 as printed to 18 digits.
inline constexpr double kMuCrit0 = 0.0385208965045513718;

CriticalMu mu_crit_series(const DerivedParams& d);

/// Bisection on mu -> D(mu) over (1e-6, 1/2 - 1e-6), all other parameters held.
CriticalMu mu_crit_numeric(const DerivedParams& d);

struct IdentityResiduals {
    double r24 = 0.0;   ///< (w1^2 + w2^2) minus its series
    double r25 = 0.0;   ///< w1^2 w2^2 minus its series
    double r26_1 = 0.0; ///< gamma^2 minus the frequency series at w1
    double r26_2 = 0.0; ///< ... at w2
    double r27 = 0.0;   ///< gamma^2 minus the series in u = w1 w2
};

/// Throws undefined-quantity unless the spectrum carries both frequencies.
IdentityResiduals freq_identity_residuals(const DerivedParams& d, const Spectrum& sp);

/// Eigenvalues of the finite-difference Jacobian of the full first-order
/// vector field at an equilibrium, reduced to two frequencies.
struct JacobianSpectrum {
    double omega1 = 0.0;        ///< larger |Im lambda|
    double omega2 = 0.0;
    double max_real_part = 0.0; ///< largest Re lambda (drag makes this nonzero)
};
JacobianSpectrum jacobian_spectrum(const DerivedParams& d, const EquilibriumPoint& eq,
                                   const numerics::FdConfig& cfg = {1e-4, true});

struct StabilityReport {
    EquilibriumPoint equilibrium;
    QuadCoeffs coeffs;
    Spectrum spectrum;
    CriticalMu mu_c_series;
    CriticalMu mu_c_numeric;
    bool stable = false;           ///< spectrum classification is stable
    bool stable_by_series = false; ///< mu < mu_c from the closed-form series
};

StabilityReport classify(const DerivedParams& d, Branch branch = Branch::L4);

} // namespace prtbp
