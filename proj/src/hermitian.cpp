#include "spectra_svi/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "spectra_svi/error.hpp"

namespace spectra_svi {

namespace {

void RequireSameDim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("Hermitian dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  }
}

}  // namespace

HermitianMatrix Hermitianize(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DomainError("hermitianize requires a square matrix");
  }
  ComplexMatrix h = (a + a.adjoint()) * 0.5;
  return HermitianMatrix(std::move(h));
}

HermitianMatrix HermitianMatrix::FromMatrix(const ComplexMatrix& a, double tolerance) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DomainError("Hermitian matrix must be square with positive dimension");
  }
  if (!a.allFinite()) {
    throw DomainError("Hermitian matrix has non-finite entries");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tolerance * scale) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max |A - A^H| = " << asym << ")";
    throw DomainError(msg.str());
  }
  return Hermitianize(a);
}

HermitianMatrix HermitianMatrix::Zero(Eigen::Index n) {
  return HermitianMatrix(ComplexMatrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::Identity(Eigen::Index n) {
  return HermitianMatrix(ComplexMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::Diagonal(const RealVector& d) {
  ComplexMatrix m = ComplexMatrix::Zero(d.size(), d.size());
  m.diagonal() = d.cast<Complex>();
  return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::Diagonal(std::initializer_list<double> d) {
  RealVector v(static_cast<Eigen::Index>(d.size()));
  std::copy(d.begin(), d.end(), v.data());
  return Diagonal(v);
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  RequireSameDim(*this, o);
  m_ += o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  RequireSameDim(*this, o);
  m_ -= o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

double TraceProduct(const HermitianMatrix& a, const HermitianMatrix& b) {
  RequireSameDim(a, b);
  // tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij); real for Hermitian pairs.
  return (a.matrix().array() * b.matrix().conjugate().array()).real().sum();
}

HermitianMatrix EigenDecomposition::Apply(const RealVector& values) const {
  ComplexMatrix m = eigenvectors * values.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  return Hermitianize(m);
}

HermitianMatrix EigenDecomposition::Apply(const std::function<double(double)>& f) const {
  return Apply(RealVector(eigenvalues.unaryExpr(f)));
}

EigenDecomposition Eig(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Hermitian eigensolver did not converge (dim " << a.dim()
        << ", ||A||_F = " << a.matrix().norm()
        << ", max |A_ij| = " << a.matrix().cwiseAbs().maxCoeff() << ")";
    throw NumericalFailure(msg.str());
  }
  const RealVector& ascending = solver.eigenvalues();
  const Eigen::Index n = ascending.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return ascending(i) > ascending(j);
  });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = ascending(order[k]);
    out.eigenvectors.col(k) = solver.eigenvectors().col(order[k]);
  }
  return out;
}

HermitianMatrix MatrixExp(const HermitianMatrix& a) {
  const EigenDecomposition d = Eig(a);
  const double limit = std::log(std::numeric_limits<double>::max());
  if (d.max() > limit) {
    std::ostringstream msg;
    msg << "matrix_exp overflows: lambda_max = " << d.max()
        << " exceeds " << limit << "; use the shift-invariant Gibbs map instead";
    throw OverflowError(msg.str());
  }
  return d.Apply([](double x) { return std::exp(x); });
}

HermitianMatrix MatrixLog(const HermitianMatrix& a, double floor) {
  const EigenDecomposition d = Eig(a);
  if (d.min() < -kPsdTolerance) {
    std::ostringstream msg;
    msg << "matrix_log requires a PSD argument (lambda_min = " << d.min() << ")";
    throw NotPsdError(msg.str());
  }
  return d.Apply([floor](double x) { return std::log(std::max(x, floor)); });
}

double TraceNorm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

double TraceNorm(const HermitianMatrix& a) {
  return Eig(a).eigenvalues.cwiseAbs().sum();
}

double SpectralNorm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double SpectralNorm(const HermitianMatrix& a) {
  const EigenDecomposition d = Eig(a);
  return std::max(std::abs(d.max()), std::abs(d.min()));
}

double FrobeniusNorm(const ComplexMatrix& a) { return a.norm(); }

}  // namespace spectra_svi
