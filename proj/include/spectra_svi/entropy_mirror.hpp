#pragma once

#include "spectra_svi/hermitian.hpp"

namespace spectra_svi {

// Quantum-entropy mirror map on the unit-trace spectrahedron.
//
//   omega(X)   = tr(X log X - X)
//   omega*(Y)  = log tr exp(Y + I)
//   grad omega*(Y) = exp(Y + I) / tr exp(Y + I)      (the Gibbs state)
//
// All exponentials are shifted by lambda_max, so duals of any magnitude are
// handled without overflow.

/// Eigenvalues below this are treated as exact zeros (0 log 0 = 0).
inline constexpr double kEntropyZeroCutoff = 1e-15;

/// tr(X log X - X). Requires X PSD and tr X <= 1 + 1e-8.
double QuantumEntropy(const HermitianMatrix& x);

/// log tr exp(Y + I), computed with the max-shift.
double ConjugateEntropy(const HermitianMatrix& y);

/// exp(Y + I) / tr exp(Y + I). PSD with unit trace for any finite Y.
HermitianMatrix GibbsMap(const HermitianMatrix& y);

/// Gibbs map for {X >= 0, tr X <= p}: Y is embedded as diag(Y, 0) with a
/// slack coordinate, mapped, truncated back to n x n and scaled by p.
HermitianMatrix GibbsMapBounded(const HermitianMatrix& y, double p);

/// tr(X log X - X log Y). Y must be positive definite (lambda_min >= 1e-12);
/// DomainError otherwise.
double VonNeumannDivergence(const HermitianMatrix& x, const HermitianMatrix& y);

/// omega(Q) + omega*(Y) - tr(QY); equals D(Q, GibbsMap(Y)) for unit-trace Q.
double FenchelCoupling(const HermitianMatrix& q, const HermitianMatrix& y);

/// Dual/primal pair of one block; primal is GibbsMap(dual) scaled to the
/// block's trace law.
struct MirrorPoint {
  HermitianMatrix dual;
  HermitianMatrix primal;
};

}  // namespace spectra_svi
