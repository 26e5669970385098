#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qdcat/fock_oracle.hpp"
#include "qdcat/model.hpp"
#include "test_support.hpp"

using namespace qdcat;

TEST(SystemParams, DerivedCouplings) {
  const SystemParams p(0.3, 0.4, 1.0, 0.1);
  EXPECT_DOUBLE_EQ(p.g(), 0.5);
  EXPECT_FALSE(p.is_symmetric());
  EXPECT_THROW(p.kappa(), InvalidArgument);

  const auto s = SystemParams::symmetric(0.13);
  EXPECT_NEAR(s.g(), 1.0, 1e-15);
  EXPECT_NEAR(s.kappa(), 1.0 / std::numbers::sqrt2, 1e-15);
  EXPECT_DOUBLE_EQ(s.gamma(), 0.13);
}

TEST(SystemParams, RejectsInvalidValues) {
  EXPECT_THROW(SystemParams(0.0, 1.0), InvalidArgument);
  EXPECT_THROW(SystemParams(1.0, -1.0), InvalidArgument);
  EXPECT_THROW(SystemParams(1.0, 1.0, -0.5), InvalidArgument);
  EXPECT_THROW(SystemParams(1.0, 1.0, 0.0, -1e-3), InvalidArgument);
  EXPECT_THROW(SystemParams(NAN, 1.0), InvalidArgument);
}

TEST(Cats, OddCatNormalisation) {
  const auto odd = make_odd_cat(1.0);
  // (2 - 2 e^{-2})^{-1/2}, evaluated with mpmath.
  EXPECT_NEAR(odd.c().real(), 0.760433311589407, 1e-12);
  EXPECT_EQ(odd.d(), -odd.c());
  EXPECT_EQ(odd.parity(), Parity::Odd);
  const double c = std::abs(odd.c());
  EXPECT_NEAR(2 * c * c - 2 * c * c * std::exp(-2.0), 1.0, 1e-12);
  EXPECT_THROW(make_odd_cat(0.0), InvalidArgument);
}

TEST(Cats, EvenCatNormalisation) {
  const auto even = make_even_cat(1.0);
  EXPECT_NEAR(even.c().real(), 0.663625300142288, 1e-12);
  EXPECT_EQ(even.c(), even.d());

  const auto vac = make_even_cat(0.0);
  EXPECT_NEAR(vac.norm_squared(), 1.0, 1e-12);
  EXPECT_EQ(vac.alpha1(), cplx(0.0));

  EXPECT_NEAR(make_even_cat(2.0).norm_squared(), 1.0, 1e-12);
}

TEST(Cats, RandomAmplitudesStayNormalised) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> r(0.01, 6.0), phi(0.0, 2 * std::numbers::pi);
  for (int i = 0; i < 500; ++i) {
    const cplx a = std::polar(r(rng), phi(rng));
    EXPECT_NEAR(make_odd_cat(a).norm_squared(), 1.0, 1e-12);
    EXPECT_NEAR(make_even_cat(a).norm_squared(), 1.0, 1e-12);
  }
}

TEST(Cats, GeneralSuperpositionValidation) {
  EXPECT_THROW(CoherentSuperposition(1.0, 1.0, 1.0, -1.0), InvalidArgument);
  const auto s = CoherentSuperposition::normalized({0.3, 0.1}, {-0.7, 0.2}, {1.0, 0.5}, {-0.2, 1.1});
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
  EXPECT_EQ(s.parity(), Parity::General);
  EXPECT_THROW(CoherentSuperposition::normalized(1.0, -1.0, 0.5, 0.5), InvalidArgument);
}

TEST(CoherentOverlap, KnownValues) {
  EXPECT_NEAR(std::abs(coherent_overlap({0.7, -0.2}, {0.7, -0.2}) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(coherent_overlap(1.0, -1.0).real(), 0.135335283236613, 1e-14);
  EXPECT_NEAR(coherent_overlap(1.0, -1.0).imag(), 0.0, 1e-15);
}

TEST(CoherentOverlap, MatchesTruncatedFockInnerProduct) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const cplx a = gen::random_complex(rng, 1.2);
    const cplx b = gen::random_complex(rng, 1.2);
    const Eigen::VectorXcd va = coherent_vector(a, 80);
    const Eigen::VectorXcd vb = coherent_vector(b, 80);
    EXPECT_NEAR(std::abs(va.dot(vb) - coherent_overlap(a, b)), 0.0, 1e-12);
  }
}

TEST(CoherentOverlap, HermitianSymmetryAndBound) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const cplx a = gen::random_complex(rng, 2.0);
    const cplx b = gen::random_complex(rng, 2.0);
    EXPECT_NEAR(std::abs(coherent_overlap(a, b) - std::conj(coherent_overlap(b, a))), 0.0, 1e-15);
    EXPECT_LT(std::abs(coherent_overlap(a, b)), 1.0);
    EXPECT_NEAR(std::abs(coherent_overlap(a, a)), 1.0, 1e-15);
  }
}

TEST(TwoQubitDensity, RejectsInvalidMatrices) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity() / 4.0;
  EXPECT_NO_THROW(TwoQubitDensity{m});

  Eigen::Matrix4cd skew = m;
  skew(0, 1) = cplx(0.1, 0.0);
  EXPECT_THROW(TwoQubitDensity{skew}, InvalidArgument);

  EXPECT_THROW(TwoQubitDensity{2.0 * m}, InvalidArgument);

  Eigen::Matrix4cd neg = Eigen::Matrix4cd::Zero();
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(TwoQubitDensity{neg}, InvalidArgument);

  EXPECT_NEAR(TwoQubitDensity::basis_state(2).purity(), 1.0, 1e-15);
  EXPECT_THROW(TwoQubitDensity::basis_state(4), InvalidArgument);
}

TEST(TimeGrid, UniformAndValidation) {
  const auto grid = TimeGrid::uniform(2.0, 401);
  ASSERT_EQ(grid.size(), 401u);
  EXPECT_EQ(grid.gt_over_pi(100), 0.5);
  EXPECT_EQ(grid.gt_over_pi(400), 2.0);
  EXPECT_NEAR(grid.gt(100), std::numbers::pi / 2, 1e-15);

  const TimeGrid abs({0.0, 1.0}, TimeGrid::Units::Absolute);
  EXPECT_EQ(abs.gt(1), 1.0);

  EXPECT_THROW(TimeGrid({}), InvalidArgument);
  EXPECT_THROW(TimeGrid({0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(TimeGrid({-1.0}), InvalidArgument);
  EXPECT_THROW(TimeGrid::uniform(2.0, 0), InvalidArgument);
}
