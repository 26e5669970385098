#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qdcat/closed_form.hpp"
#include "qdcat/fock_oracle.hpp"
#include "qdcat/qubit_embed.hpp"
#include "test_support.hpp"

using namespace qdcat;
using std::numbers::pi;

namespace {

double concurrence_via_embedding(const CoherentSuperposition& sup, double gt) {
  const auto p = SystemParams::symmetric();
  return wootters_concurrence(reduced_density(sup, ideal_amplitudes(p, gt)).rho);
}

}  // namespace

TEST(QubitBasis, OddCatAtQuarterPeriod) {
  const auto b = build_basis(make_odd_cat(1.0), ideal_amplitudes(SystemParams::symmetric(), pi / 2));
  for (const auto& m : b.modes) {
    EXPECT_NEAR(m.p, std::exp(-1.0), 1e-15);
    EXPECT_NEAR(m.p, 0.367879441171442, 1e-12);
    EXPECT_NEAR(m.norm * m.norm + m.p * m.p, 1.0, 1e-12);
    EXPECT_FALSE(m.degenerate);
  }
}

TEST(QubitBasis, DegenerateAtStart) {
  const auto b = build_basis(make_odd_cat(1.0), ideal_amplitudes(SystemParams::symmetric(), 0.0));
  EXPECT_TRUE(b.degenerate());
  EXPECT_EQ(b.modes[0].p, 1.0);
}

TEST(QubitBasis, OrthonormalInFockSpace) {
  std::mt19937_64 rng(41);
  const SystemParams p(0.4, 0.9, 0.3);
  for (int i = 0; i < 20; ++i) {
    const auto sup = CoherentSuperposition::normalized(gen::random_complex(rng),
                                                       gen::random_complex(rng),
                                                       gen::random_complex(rng),
                                                       gen::random_complex(rng));
    const auto b = build_basis(sup, ideal_amplitudes(p, 0.3 + i));
    for (const auto& m : b.modes) {
      ASSERT_FALSE(m.degenerate);
      EXPECT_GT(m.norm, 0.0);
      EXPECT_LT(m.norm, 1.0);
      const Eigen::VectorXcd zero = coherent_vector(m.beta0, 60);
      const Eigen::VectorXcd one = (coherent_vector(m.beta1, 60) - m.overlap * zero) / m.norm;
      EXPECT_NEAR(std::abs(zero.dot(one)), 0.0, 1e-12);
      EXPECT_NEAR(one.norm(), 1.0, 1e-12);
    }
  }
}

TEST(ReducedDensity, MatchesExplicitOddCatMatrix) {
  const auto p = SystemParams::symmetric(0.0, 0.7);
  for (double a : {0.3, 1.0, 2.0, 4.0}) {
    for (double gt : {0.2, 0.7, pi / 4, pi / 2, 2.0, 2.9}) {
      const auto rd = reduced_density(make_odd_cat(a), ideal_amplitudes(p, gt));
      const auto r = odd_cat_matrix(a, gt);
      EXPECT_NEAR((rd.rho.matrix() - r).cwiseAbs().maxCoeff(), 0.0, 1e-12)
          << "alpha " << a << " gt " << gt;
      EXPECT_NEAR(rd.raw_trace, 1.0, 1e-12);
    }
  }
}

TEST(ReducedDensity, KnownEntryAndStart) {
  const auto r = odd_cat_matrix(1.0, pi / 2);
  // (1 - 2 e^{-2} + e^{-4}) / (2 (1 - e^{-2})) = (1 - e^{-2}) / 2
  EXPECT_NEAR(r(0, 0).real(), 0.432332358381694, 1e-12);

  const auto rd = reduced_density(make_odd_cat(1.0), ideal_amplitudes(SystemParams::symmetric(), 0.0));
  EXPECT_TRUE(rd.degenerate);
  EXPECT_EQ(rd.rho(0, 0), cplx(1.0));
  EXPECT_EQ(wootters_concurrence(rd.rho), 0.0);
}

TEST(ReducedDensity, AxiomsForGeneralSuperpositions) {
  std::mt19937_64 rng(43);
  const SystemParams p(0.6, 1.1, 0.2);
  for (int i = 0; i < 200; ++i) {
    const auto sup = CoherentSuperposition::normalized(
        gen::random_complex(rng), gen::random_complex(rng),
        gen::random_complex(rng, 1.5), gen::random_complex(rng, 1.5));
    const auto rd = reduced_density(sup, ideal_amplitudes(p, 0.05 * (i + 1)));
    EXPECT_NEAR(rd.raw_trace, 1.0, 1e-9);
    const auto& m = rd.rho.matrix();
    EXPECT_NEAR((m - m.adjoint()).cwiseAbs().maxCoeff(), 0.0, 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
  }
}

TEST(WhichPath, IdealFactorIsCavityOverlap) {
  std::mt19937_64 rng(47);
  const SystemParams p(0.6, 1.1, 0.4);
  for (int i = 0; i < 100; ++i) {
    const auto sup = CoherentSuperposition::normalized(
        gen::random_complex(rng), gen::random_complex(rng),
        gen::random_complex(rng), gen::random_complex(rng));
    const auto amps = ideal_amplitudes(p, 0.1 * i);
    const cplx expected = coherent_overlap(sup.alpha1() * amps.u, sup.alpha2() * amps.u);
    EXPECT_NEAR(std::abs(which_path_factor(sup, amps) - expected), 0.0, 1e-14);
  }
}

TEST(WhichPath, DissipativeFactorNeedsFullTracedWeight) {
  const auto p = SystemParams::symmetric(0.13);
  const double a = 1.0;
  const auto sup = make_odd_cat(a);
  const auto amps = dissipative_amplitudes(p, 1.3);
  const double v_sq = std::norm(amps.v1);
  EXPECT_NEAR(which_path_factor(sup, amps).real(), std::exp(-2 * a * a * (1 - 2 * v_sq)), 1e-14);
  EXPECT_NEAR(reduced_density(sup, amps).raw_trace, 1.0, 1e-12);
  // Without the factor two in the exponent the branch coherence does not
  // match the exciton overlaps and the assembled trace drifts from one.
  EXPECT_THROW(reduced_density(sup, amps, std::exp(-a * a * (1 - 2 * v_sq))),
               NumericalIntegrityError);
}

TEST(Wootters, CanonicalStates) {
  const double s = 1.0 / std::numbers::sqrt2;
  EXPECT_NEAR(wootters_concurrence(TwoQubitDensity::pure(Eigen::Vector4cd(s, 0, 0, s))), 1.0, 1e-12);
  EXPECT_NEAR(wootters_concurrence(TwoQubitDensity::pure(Eigen::Vector4cd(0, s, -s, 0))), 1.0, 1e-12);
  EXPECT_NEAR(wootters_concurrence(TwoQubitDensity(Eigen::Matrix4cd::Identity() / 4.0)), 0.0, 1e-12);

  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    Eigen::Vector2cd x(gen::random_complex(rng), gen::random_complex(rng));
    Eigen::Vector2cd y(gen::random_complex(rng), gen::random_complex(rng));
    Eigen::Vector4cd prod;
    prod << x(0) * y(0), x(0) * y(1), x(1) * y(0), x(1) * y(1);
    EXPECT_NEAR(wootters_concurrence(TwoQubitDensity::pure(prod)), 0.0, 1e-10);
  }
}

TEST(Wootters, SchmidtLaw) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 1000; ++i) {
    Eigen::Vector4cd psi(gen::random_complex(rng), 0, 0, gen::random_complex(rng));
    psi.normalize();
    const double expected = 2.0 * std::abs(psi(0) * psi(3));
    EXPECT_NEAR(wootters_concurrence(TwoQubitDensity::pure(psi)), expected, 1e-10);
  }
}

TEST(Wootters, LocalUnitaryInvariance) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 500; ++i) {
    const auto rho = i % 2 ? gen::random_density(rng)
                           : gen::random_low_rank_density(rng, 1 + i % 4);
    const Eigen::Matrix4cd u =
        gen::kron(gen::random_unitary2(rng), gen::random_unitary2(rng));
    Eigen::Matrix4cd moved = u * rho.matrix() * u.adjoint();
    moved = (0.5 * (moved + moved.adjoint())).eval();
    EXPECT_NEAR(wootters_concurrence(TwoQubitDensity(moved)), wootters_concurrence(rho), 1e-9);
  }
}

TEST(Wootters, LiteralProductRouteAgreesOnFullRank) {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 500; ++i) {
    const auto rho = gen::random_density(rng);
    const auto a = wootters_lambdas(rho);
    const auto b = m12_lambdas(rho);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(a[k], b[k], 1e-6);
  }
}

TEST(Wootters, TinyNegativeEigenvaluesAreTolerated) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 1.0 + 5e-11;
  m(1, 1) = -5e-11;
  const TwoQubitDensity rho(m);
  EXPECT_EQ(wootters_concurrence(rho), 0.0);
  EXPECT_NO_THROW(m12_eigenvalues(rho));
}

TEST(Wootters, OddCatQuarterPeriod) {
  const TwoQubitDensity r(odd_cat_matrix(1.0, pi / 4));
  EXPECT_NEAR(wootters_concurrence(r), 0.268941421369995, 1e-12);
  EXPECT_NEAR(wootters_concurrence(r), concurrence_odd(1.0, pi / 4), 1e-12);
}

TEST(Wootters, ClosedFormsFromGeneralMachinery) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> alpha(0.1, 4.0), gt(0.01, 2 * pi);
  for (int i = 0; i < 200; ++i) {
    const double a = alpha(rng);
    const double x = gt(rng);
    EXPECT_NEAR(concurrence_via_embedding(make_odd_cat(a), x), concurrence_odd(a, x), 1e-9)
        << "alpha " << a << " gt " << x;
    EXPECT_NEAR(concurrence_via_embedding(make_even_cat(a), x), concurrence_even(a, x), 1e-9)
        << "alpha " << a << " gt " << x;
  }
}

TEST(Spectrum, ClosedFormAgainstNumerics) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> alpha(0.2, 4.0), gt(0.01, pi);
  for (int i = 0; i < 200; ++i) {
    const double a = alpha(rng);
    const double x = gt(rng);
    const auto closed = spectrum_check_odd(a, x);
    const auto num = wootters_lambdas(TwoQubitDensity(odd_cat_matrix(a, x)));
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(num[k], closed[k], 1e-9);
    EXPECT_LT(num[2], 1e-9);
    EXPECT_LT(num[3], 1e-9);
    EXPECT_NEAR(closed[0] - closed[1], concurrence_odd(a, x), 1e-12);
  }
}

TEST(Spectrum, SpecialTimes) {
  for (double a : {0.5, 1.0, 3.0}) {
    const auto half = spectrum_check_odd(a, pi / 2);
    EXPECT_NEAR(half[0] - half[1], 1.0, 1e-12);
    const auto zero = spectrum_check_odd(a, 0.0);
    EXPECT_EQ(zero[0], 0.0);
    EXPECT_EQ(zero[1], 0.0);
  }
  const auto q = spectrum_check_odd(1.0, pi / 4);
  EXPECT_NEAR(q[0] - q[1], 1.0 / (std::numbers::e + 1.0), 1e-14);
}
