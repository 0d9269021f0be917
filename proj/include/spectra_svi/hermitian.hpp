#pragma once

#include <complex>
#include <functional>
#include <initializer_list>

#include <Eigen/Dense>

namespace spectra_svi {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Dense complex matrix with A = A^H enforced at construction.
///
/// Every constructor either produces an exactly Hermitian matrix (diagonal
/// imaginary parts are exactly zero, off-diagonal pairs are exact conjugates)
/// or throws DomainError. Arithmetic that preserves the Hermitian structure
/// is provided directly; anything else goes through matrix() and back through
/// FromMatrix() or Hermitianize().
class HermitianMatrix {
 public:
  /// Largest tolerated |A_ij - conj(A_ji)|, relative to max(1, max |A_ij|).
  static constexpr double kConstructionTolerance = 1e-12;

  HermitianMatrix() = default;

  static HermitianMatrix FromMatrix(const ComplexMatrix& a,
                                    double tolerance = kConstructionTolerance);
  static HermitianMatrix Zero(Eigen::Index n);
  static HermitianMatrix Identity(Eigen::Index n);
  static HermitianMatrix Diagonal(const RealVector& d);
  static HermitianMatrix Diagonal(std::initializer_list<double> d);

  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double Trace() const { return m_.diagonal().real().sum(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  HermitianMatrix operator-() const { return *this * -1.0; }

 private:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  friend HermitianMatrix Hermitianize(const ComplexMatrix& a);

  ComplexMatrix m_;
};

/// Real inner product tr(AB) of two Hermitian matrices.
double TraceProduct(const HermitianMatrix& a, const HermitianMatrix& b);

/// (A + A^H) / 2. Throws DomainError for non-square input.
HermitianMatrix Hermitianize(const ComplexMatrix& a);

struct EigenDecomposition {
  RealVector eigenvalues;     // descending
  ComplexMatrix eigenvectors;  // orthonormal columns, paired with eigenvalues

  double max() const { return eigenvalues(0); }
  double min() const { return eigenvalues(eigenvalues.size() - 1); }

  /// V diag(f(lambda)) V^H.
  HermitianMatrix Apply(const std::function<double(double)>& f) const;
  HermitianMatrix Apply(const RealVector& values) const;
  HermitianMatrix Reconstruct() const { return Apply(eigenvalues); }
};

/// Hermitian eigendecomposition, eigenvalues sorted descending with ties
/// broken by solver index. Throws NumericalFailure if the solver does not
/// converge.
EigenDecomposition Eig(const HermitianMatrix& a);

/// exp(A). Throws OverflowError when lambda_max exceeds log(DBL_MAX); use
/// GibbsMap for shift-invariant exponentials of unbounded duals.
HermitianMatrix MatrixExp(const HermitianMatrix& a);

/// log(A) with eigenvalues clamped below at `floor`. Throws NotPsdError when
/// lambda_min < -1e-10.
HermitianMatrix MatrixLog(const HermitianMatrix& a, double floor = 1e-300);

double TraceNorm(const ComplexMatrix& a);
double TraceNorm(const HermitianMatrix& a);
double SpectralNorm(const ComplexMatrix& a);
double SpectralNorm(const HermitianMatrix& a);
double FrobeniusNorm(const ComplexMatrix& a);
inline double FrobeniusNorm(const HermitianMatrix& a) { return FrobeniusNorm(a.matrix()); }

/// Eigenvalue below which a PSD check fails.
inline constexpr double kPsdTolerance = 1e-10;

}  // namespace spectra_svi
