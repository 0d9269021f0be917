#pragma once

#include <functional>
#include <span>

#include "spectra_svi/block_profile.hpp"

// Brute-force reference computations for tests and acceptance runs. None of
// these share code with the routines they are used to check: the projection
// and the series exponential go straight to Eigen, and the sampled supremum
// never looks at eigenvalues of F.

namespace spectra_svi::verification {

/// Euclidean (Frobenius) projection of B onto {Z >= 0, tr Z = p} or
/// {Z >= 0, tr Z <= p}: project the eigenvalues onto the simplex with the
/// sorted-threshold algorithm and reassemble.
HermitianMatrix ProjectSpectrahedron(const HermitianMatrix& b, double p, TraceMode mode);

/// Euclidean projection of a real vector onto {x >= 0, sum x = p}.
RealVector ProjectSimplex(const RealVector& v, double p);

using HermitianFunction = std::function<double(const HermitianMatrix&)>;

/// Gradient G of f with respect to the real inner product tr(G D), from
/// central differences along the Hermitian coordinate basis
/// (E_jj, E_jk + E_kj, i E_jk - i E_kj).
HermitianMatrix FiniteDiffGradient(const HermitianFunction& f, const HermitianMatrix& x,
                                   double h = 1e-5);

/// sum_{k < terms} A^k / k!. Only meaningful for ||A||_2 <= 1.
ComplexMatrix TaylorExp(const ComplexMatrix& a, int terms);

/// max over random feasible Z (plus `extra` candidates) of -tr(F Z).
double SampledSupLinear(const BlockProfile& f_value, const SpectraSet& set, int probes,
                        RngStream& rng, std::span<const BlockProfile> extra = {});

}  // namespace spectra_svi::verification
