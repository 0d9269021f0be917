#include "spectra_svi/entropy_mirror.hpp"

#include <cmath>
#include <sstream>

#include "spectra_svi/error.hpp"

namespace spectra_svi {

namespace {

constexpr double kTraceSlack = 1e-8;
constexpr double kDivergenceMinEigenvalue = 1e-12;

// sum_i lambda_i log lambda_i over the spectrum, with 0 log 0 = 0.
double NegativeVonNeumannTerm(const RealVector& spectrum) {
  double acc = 0.0;
  for (double l : spectrum) {
    if (l > kEntropyZeroCutoff) acc += l * std::log(l);
  }
  return acc;
}

void RequireDensityLike(const EigenDecomposition& d, const char* what) {
  if (d.min() < -kPsdTolerance) {
    std::ostringstream msg;
    msg << what << ": argument is not PSD (lambda_min = " << d.min() << ")";
    throw NotPsdError(msg.str());
  }
  const double trace = d.eigenvalues.sum();
  if (trace > 1.0 + kTraceSlack) {
    std::ostringstream msg;
    msg << what << ": trace " << trace << " exceeds 1";
    throw DomainError(msg.str());
  }
}

// Softmax weights exp(lambda_i - shift), shift >= every lambda_i.
RealVector ShiftedExp(const RealVector& lambda, double shift) {
  return (lambda.array() - shift).exp().matrix();
}

}  // namespace

double QuantumEntropy(const HermitianMatrix& x) {
  const EigenDecomposition d = Eig(x);
  RequireDensityLike(d, "quantum_entropy");
  return NegativeVonNeumannTerm(d.eigenvalues) - x.Trace();
}

double ConjugateEntropy(const HermitianMatrix& y) {
  const EigenDecomposition d = Eig(y);
  const double top = d.max();
  return top + 1.0 + std::log(ShiftedExp(d.eigenvalues, top).sum());
}

HermitianMatrix GibbsMap(const HermitianMatrix& y) {
  const EigenDecomposition d = Eig(y);
  RealVector w = ShiftedExp(d.eigenvalues, d.max());
  w /= w.sum();
  return d.Apply(w);
}

HermitianMatrix GibbsMapBounded(const HermitianMatrix& y, double p) {
  if (!(p > 0.0)) throw DomainError("gibbs_map_bounded requires p > 0");
  // The slack coordinate of diag(Y, 0) has eigenvalue 0 and eigenvector
  // e_{n+1}; dropping it leaves the first n weights over the same
  // eigenvectors of Y.
  const EigenDecomposition d = Eig(y);
  const double shift = std::max(d.max(), 0.0);
  RealVector w = ShiftedExp(d.eigenvalues, shift);
  const double slack = std::exp(-shift);
  w *= p / (w.sum() + slack);
  return d.Apply(w);
}

double VonNeumannDivergence(const HermitianMatrix& x, const HermitianMatrix& y) {
  if (x.dim() != y.dim()) throw DomainError("von_neumann_divergence: dimension mismatch");
  const EigenDecomposition dx = Eig(x);
  RequireDensityLike(dx, "von_neumann_divergence");
  const EigenDecomposition dy = Eig(y);
  if (dy.min() < kDivergenceMinEigenvalue) {
    std::ostringstream msg;
    msg << "von_neumann_divergence: second argument is singular (lambda_min = " << dy.min()
        << ")";
    throw DomainError(msg.str());
  }
  if (dy.eigenvalues.sum() > 1.0 + kTraceSlack) {
    throw DomainError("von_neumann_divergence: second argument has trace above 1");
  }
  const HermitianMatrix log_y = dy.Apply([](double l) { return std::log(l); });
  return NegativeVonNeumannTerm(dx.eigenvalues) - TraceProduct(x, log_y);
}

double FenchelCoupling(const HermitianMatrix& q, const HermitianMatrix& y) {
  if (q.dim() != y.dim()) throw DomainError("fenchel_coupling: dimension mismatch");
  return QuantumEntropy(q) + ConjugateEntropy(y) - TraceProduct(q, y);
}

}  // namespace spectra_svi
