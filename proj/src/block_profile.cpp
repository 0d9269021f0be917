#include "spectra_svi/block_profile.hpp"

#include <cmath>
#include <sstream>

#include "spectra_svi/entropy_mirror.hpp"
#include "spectra_svi/error.hpp"

namespace spectra_svi {

const char* ToString(TraceMode mode) {
  return mode == TraceMode::kEquals ? "TraceEquals" : "TraceAtMost";
}

SpectraSet::SpectraSet(std::vector<BlockSpec> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DomainError("spectra set needs at least one block");
  for (const BlockSpec& b : blocks_) {
    if (b.dim < 1) throw DomainError("spectra set block dimension must be >= 1");
    if (!(b.bound > 0.0) || !std::isfinite(b.bound)) {
      throw DomainError("spectra set trace bound must be positive and finite");
    }
  }
}

SpectraSet SpectraSet::Uniform(std::size_t count, Eigen::Index dim, double bound, TraceMode mode) {
  return SpectraSet(std::vector<BlockSpec>(count, BlockSpec{dim, bound, mode}));
}

Eigen::Index SpectraSet::TotalDim() const {
  Eigen::Index n = 0;
  for (const BlockSpec& b : blocks_) n += b.dim;
  return n;
}

BlockProfile BlockProfile::Zero(const SpectraSet& set) {
  BlockProfile z;
  z.blocks.reserve(set.size());
  for (const BlockSpec& b : set.blocks()) z.blocks.push_back(HermitianMatrix::Zero(b.dim));
  return z;
}

namespace {

void RequireSameShape(const BlockProfile& a, const BlockProfile& b) {
  if (a.size() != b.size()) throw DomainError("block profile size mismatch");
}

}  // namespace

BlockProfile& BlockProfile::operator+=(const BlockProfile& o) {
  RequireSameShape(*this, o);
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] += o.blocks[i];
  return *this;
}

BlockProfile& BlockProfile::operator-=(const BlockProfile& o) {
  RequireSameShape(*this, o);
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] -= o.blocks[i];
  return *this;
}

BlockProfile& BlockProfile::operator*=(double s) {
  for (HermitianMatrix& b : blocks) b *= s;
  return *this;
}

double TraceProduct(const BlockProfile& a, const BlockProfile& b) {
  RequireSameShape(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += TraceProduct(a[i], b[i]);
  return acc;
}

double SpectralNorm(const BlockProfile& a) {
  double n = 0.0;
  for (const HermitianMatrix& b : a.blocks) n = std::max(n, SpectralNorm(b));
  return n;
}

double FrobeniusNorm(const BlockProfile& a) {
  double sq = 0.0;
  for (const HermitianMatrix& b : a.blocks) sq += b.matrix().squaredNorm();
  return std::sqrt(sq);
}

double TraceNorm(const BlockProfile& a) {
  double n = 0.0;
  for (const HermitianMatrix& b : a.blocks) n += TraceNorm(b);
  return n;
}

bool Conforms(const BlockProfile& x, const SpectraSet& set) {
  if (x.size() != set.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].dim() != set[i].dim) return false;
  }
  return true;
}

std::string FeasibilityViolation(const BlockProfile& x, const SpectraSet& set, double psd_tol,
                                 double trace_tol) {
  if (!Conforms(x, set)) return "profile does not conform to the set's block dimensions";
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::ostringstream msg;
    const double lmin = Eig(x[i]).min();
    if (lmin < -psd_tol) {
      msg << "block " << i << " is not PSD (lambda_min = " << lmin << ")";
      return msg.str();
    }
    const double tr = x[i].Trace();
    const double p = set[i].bound;
    const bool ok = set[i].mode == TraceMode::kEquals ? std::abs(tr - p) <= trace_tol
                                                      : tr <= p + trace_tol;
    if (!ok) {
      msg << "block " << i << " violates " << ToString(set[i].mode) << " " << p
          << " (trace = " << tr << ")";
      return msg.str();
    }
  }
  return {};
}

ComplexMatrix RandomComplexGaussian(Eigen::Index rows, Eigen::Index cols, double variance,
                                    RngStream& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
  ComplexMatrix m(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

HermitianMatrix RandomHermitian(Eigen::Index n, double sigma, RngStream& rng) {
  return Hermitianize(RandomComplexGaussian(n, n, sigma * sigma, rng));
}

BlockProfile RandomFeasible(const SpectraSet& set, RngStream& rng, double spread) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BlockProfile z;
  z.blocks.reserve(set.size());
  for (const BlockSpec& b : set.blocks()) {
    HermitianMatrix g = GibbsMap(RandomHermitian(b.dim, spread, rng));
    const double scale = b.mode == TraceMode::kEquals ? b.bound : unit(rng) * b.bound;
    z.blocks.push_back(g * scale);
  }
  return z;
}

}  // namespace spectra_svi
