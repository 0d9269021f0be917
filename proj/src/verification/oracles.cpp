#include "spectra_svi/verification/oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <vector>

#include "spectra_svi/error.hpp"

namespace spectra_svi::verification {

RealVector ProjectSimplex(const RealVector& v, double p) {
  // Sort descending, find the largest k with u_k - (sum_{j<=k} u_j - p)/k > 0.
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - p) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

HermitianMatrix ProjectSpectrahedron(const HermitianMatrix& b, double p, TraceMode mode) {
  if (!(p > 0.0)) throw DomainError("projection bound must be positive");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(b.matrix());
  if (solver.info() != Eigen::Success) throw NumericalFailure("projection eigensolver failed");
  const RealVector& lambda = solver.eigenvalues();
  RealVector projected;
  const RealVector clipped = lambda.cwiseMax(0.0);
  if (mode == TraceMode::kAtMost && clipped.sum() <= p) {
    projected = clipped;
  } else {
    projected = ProjectSimplex(lambda, p);
  }
  const ComplexMatrix& v = solver.eigenvectors();
  return Hermitianize(v * projected.cast<Complex>().asDiagonal() * v.adjoint());
}

HermitianMatrix FiniteDiffGradient(const HermitianFunction& f, const HermitianMatrix& x,
                                   double h) {
  const Eigen::Index n = x.dim();
  auto directional = [&](const ComplexMatrix& d) {
    const HermitianMatrix dir = HermitianMatrix::FromMatrix(d);
    return (f(x + h * dir) - f(x - h * dir)) / (2.0 * h);
  };
  ComplexMatrix g = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    d(j, j) = 1.0;
    g(j, j) = directional(d);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(j, k) = sym(k, j) = 1.0;
      ComplexMatrix skew = ComplexMatrix::Zero(n, n);
      skew(j, k) = Complex(0.0, 1.0);
      skew(k, j) = Complex(0.0, -1.0);
      // tr(G sym) = 2 Re G_jk, tr(G skew) = 2 Im G_jk
      g(j, k) = Complex(directional(sym), directional(skew)) * 0.5;
      g(k, j) = std::conj(g(j, k));
    }
  }
  return HermitianMatrix::FromMatrix(g);
}

ComplexMatrix TaylorExp(const ComplexMatrix& a, int terms) {
  if (a.rows() != a.cols()) throw DomainError("taylor_exp needs a square matrix");
  ComplexMatrix sum = ComplexMatrix::Zero(a.rows(), a.cols());
  ComplexMatrix term = ComplexMatrix::Identity(a.rows(), a.cols());
  for (int k = 0; k < terms; ++k) {
    sum += term;
    term = (term * a) / static_cast<double>(k + 1);
  }
  return sum;
}

double SampledSupLinear(const BlockProfile& f_value, const SpectraSet& set, int probes,
                        RngStream& rng, std::span<const BlockProfile> extra) {
  double best = -std::numeric_limits<double>::infinity();
  auto consider = [&](const BlockProfile& z) {
    double v = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      v -= (f_value[i].matrix().array() * z[i].matrix().conjugate().array()).real().sum();
    }
    best = std::max(best, v);
  };
  for (const BlockProfile& z : extra) consider(z);
  for (int k = 0; k < probes; ++k) consider(RandomFeasible(set, rng));
  return best;
}

}  // namespace spectra_svi::verification
