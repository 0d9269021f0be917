#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spectra_svi/block_profile.hpp"

// Randomized invariant checks behind `spectra-svi check`. Each check is
// deterministic for a given seed and reports pass/fail with a one-line
// detail. The acceptance suite calls the same checks at full size.

namespace spectra_svi::checks {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// V diag(spectrum) V^H with V Haar-like random unitary.
HermitianMatrix RandomHermitianWithSpectrum(const RealVector& spectrum, RngStream& rng);

/// Random unit-trace matrix with lambda_min >= min_eigenvalue.
HermitianMatrix RandomDensity(Eigen::Index n, double min_eigenvalue, RngStream& rng);

/// Gibbs outputs on duals with spectra spanning [-magnitude, magnitude],
/// n cycling through {2, 4, 8}: lambda_min >= -1e-10, |tr - 1| <= 1e-10.
CheckOutcome GibbsMapFeasibility(int trials, std::uint64_t seed, double magnitude = 1e6);

/// D(X, Y) >= 0.5 ||X - Y||_tr^2 - 1e-8 on random positive definite pairs.
CheckOutcome PinskerInequality(int trials, std::uint64_t seed);

/// H(X, Y + Z) <= H(X, Y) + tr(Z (Gibbs(Y) - X)) + ||Z||_2^2 + 1e-8, ||Z||_2 <= 1.
CheckOutcome FenchelSmoothness(int trials, std::uint64_t seed);

/// |H(Q, Y) - D(Q, Gibbs(Y))| <= 1e-8.
CheckOutcome FenchelBregmanIdentity(int trials, std::uint64_t seed);

/// Gibbs(Y) against central differences of log tr exp(Y + I), step 1e-5.
CheckOutcome GibbsGradientConsistency(int trials, std::uint64_t seed);

/// Closed-form strong gap dominates sampled tr(F(X)(X - Z)) and is attained
/// by the linear minimizer; nonnegative on feasible points.
CheckOutcome StrongGapClosedForm(int trials, std::uint64_t seed);

/// X - B passes the monotonicity witness; the anti-fixture -X must fail it.
CheckOutcome QuadraticMonotonicity(int trials, std::uint64_t seed);

/// Mean of Hermitian Gaussian oracle noise shrinks like 1/sqrt(draws).
CheckOutcome OracleNoiseZeroMean(int draws, std::uint64_t seed);

/// exp(log(exp A)) = exp A to 1e-8 relative, spectrum of A in [-5, 5].
CheckOutcome ExpLogRoundTrip(int trials, std::uint64_t seed);

/// Every check above; `scale` multiplies the trial counts.
std::vector<CheckOutcome> RunCheckSuite(double scale, std::uint64_t seed);

/// Prints one "[PASS] name: detail" / "[FAIL] ..." line per outcome and
/// returns whether all passed.
bool PrintOutcomes(std::ostream& out, const std::vector<CheckOutcome>& outcomes);

}  // namespace spectra_svi::checks
