#include <doctest.h>

#include <cmath>

#include "spectra_svi/block_profile.hpp"
#include "spectra_svi/svi_problem.hpp"
#include "spectra_svi/verification/oracles.hpp"

using namespace spectra_svi;
using namespace spectra_svi::verification;

TEST_SUITE("oracles") {

TEST_CASE("simplex projection") {
  RealVector v(2);
  v << 0.6, 0.2;
  const RealVector p = ProjectSimplex(v, 1.0);
  CHECK(p(0) == doctest::Approx(0.7));
  CHECK(p(1) == doctest::Approx(0.3));

  RealVector w(3);
  w << 2.0, -1.0, 0.0;
  const RealVector q = ProjectSimplex(w, 1.0);
  CHECK(q(0) == doctest::Approx(1.0));
  CHECK(q(1) == 0.0);
  CHECK(q(2) == 0.0);
}

TEST_CASE("spectrahedron projection") {
  const HermitianMatrix feasible = HermitianMatrix::Diagonal({0.25, 0.75});
  CHECK((ProjectSpectrahedron(feasible, 1.0, TraceMode::kEquals).matrix() - feasible.matrix())
            .norm() <= 1e-14);
  const HermitianMatrix small = HermitianMatrix::Diagonal({0.2, 0.1});
  CHECK((ProjectSpectrahedron(small, 1.0, TraceMode::kAtMost).matrix() - small.matrix()).norm() <=
        1e-14);

  const HermitianMatrix p =
      ProjectSpectrahedron(HermitianMatrix::Diagonal({0.6, 0.2}), 1.0, TraceMode::kEquals);
  CHECK(p(0, 0).real() == doctest::Approx(0.7));
  CHECK(p(1, 1).real() == doctest::Approx(0.3));

  const HermitianMatrix neg =
      ProjectSpectrahedron(HermitianMatrix::Diagonal({0.5, -0.4}), 1.0, TraceMode::kAtMost);
  CHECK(neg(0, 0).real() == doctest::Approx(0.5));
  CHECK(neg(1, 1).real() == doctest::Approx(0.0));
}

TEST_CASE("projection minimizes the Frobenius distance") {
  RngStream rng(71);
  for (TraceMode mode : {TraceMode::kEquals, TraceMode::kAtMost}) {
    const SpectraSet set = SpectraSet::Uniform(1, 3, 1.0, mode);
    const HermitianMatrix b = RandomHermitian(3, 1.0, rng);
    const HermitianMatrix p = ProjectSpectrahedron(b, 1.0, mode);
    BlockProfile pp;
    pp.blocks.push_back(p);
    CHECK(IsFeasible(pp, set));
    const double best = FrobeniusNorm(p - b);
    for (int k = 0; k < 1000; ++k) {
      CHECK(FrobeniusNorm(RandomFeasible(set, rng)[0] - b) >= best - 1e-12);
    }
  }
}

TEST_CASE("finite difference gradient of a quadratic form") {
  RngStream rng(72);
  const HermitianMatrix a = RandomHermitian(3, 1.0, rng);
  const HermitianMatrix x = RandomHermitian(3, 1.0, rng);
  // d/dX 0.5 tr(X A X) = 0.5 (A X + X A) in the trace pairing.
  const HermitianMatrix fd = FiniteDiffGradient(
      [&](const HermitianMatrix& m) { return 0.5 * TraceProduct(m, Hermitianize(m.matrix() * a.matrix())); },
      x, 1e-5);
  const ComplexMatrix exact = 0.5 * (a.matrix() * x.matrix() + x.matrix() * a.matrix());
  CHECK((fd.matrix() - exact).norm() <= 1e-8);
}

TEST_CASE("taylor exponential") {
  CHECK((TaylorExp(ComplexMatrix::Zero(2, 2), 5) - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  CHECK(TaylorExp(d, 25)(0, 0).real() == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("sampled sup bounds the closed-form infimum") {
  RngStream rng(73);
  const SpectraSet set = SpectraSet::Uniform(2, 2, 1.0, TraceMode::kAtMost);
  BlockProfile f;
  f.blocks = {RandomHermitian(2, 1.0, rng), RandomHermitian(2, 1.0, rng)};
  const double sampled = SampledSupLinear(f, set, 500, rng, {});
  BlockProfile zstar = LinearMinimizer(f, set);
  CHECK(sampled <= -TraceProduct(f, zstar) + 1e-12);
  const BlockProfile extra[] = {zstar};
  CHECK(SampledSupLinear(f, set, 10, rng, extra) == doctest::Approx(-TraceProduct(f, zstar)));
}

}  // TEST_SUITE
