#include "qdcat/qubit_embed.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qdcat/closed_form.hpp"

namespace qdcat {

namespace {

// Eigenvalues of rho below this are treated as numerical zeros.
constexpr double kRankCutoff = 1e-14;

Eigen::Matrix4d spin_flip() {
  Eigen::Matrix4d y;
  y << 0, 0, 0, -1,
       0, 0, 1, 0,
       0, 1, 0, 0,
       -1, 0, 0, 0;
  return y;
}

QubitMode make_mode(cplx beta0, cplx beta1) {
  QubitMode m;
  m.beta0 = beta0;
  m.beta1 = beta1;
  m.overlap = coherent_overlap(beta0, beta1);
  m.p = std::abs(m.overlap);
  const double n_sq = std::max(0.0, 1.0 - m.p * m.p);
  m.norm = std::sqrt(n_sq);
  m.degenerate = n_sq < 1e-12;
  return m;
}

}  // namespace

QubitBasis build_basis(const CoherentSuperposition& sup, const ModeAmplitudes& amps) {
  return QubitBasis{{make_mode(sup.alpha1() * amps.v1, sup.alpha2() * amps.v1),
                     make_mode(sup.alpha1() * amps.v2, sup.alpha2() * amps.v2)}};
}

cplx which_path_factor(const CoherentSuperposition& sup, const ModeAmplitudes& amps) {
  const cplx a1 = sup.alpha1();
  const cplx a2 = sup.alpha2();
  const double traced_weight = std::norm(amps.u) + amps.leak;
  return std::exp(traced_weight * (-0.5 * std::norm(a1) - 0.5 * std::norm(a2) + std::conj(a1) * a2));
}

EmbeddedDensity reduced_density(const CoherentSuperposition& sup, const ModeAmplitudes& amps,
                                cplx which_path) {
  const QubitBasis basis = build_basis(sup, amps);
  if (basis.degenerate()) {
    return {TwoQubitDensity::basis_state(0), true, 1.0};
  }
  const auto& m1 = basis.modes[0];
  const auto& m2 = basis.modes[1];

  // Branch one sits on |00>; branch two is (s1|0> + N1|1>)(s2|0> + N2|1>).
  Eigen::Vector4cd first = Eigen::Vector4cd::Zero();
  first(0) = 1.0;
  const Eigen::Vector2cd q1(m1.overlap, m1.norm);
  const Eigen::Vector2cd q2(m2.overlap, m2.norm);
  Eigen::Vector4cd second;
  second << q1(0) * q2(0), q1(0) * q2(1), q1(1) * q2(0), q1(1) * q2(1);

  const cplx c = sup.c();
  const cplx d = sup.d();
  const cplx cross = std::conj(c) * d * which_path;
  TwoQubitDensity::Matrix rho = std::norm(c) * first * first.adjoint() +
                                std::norm(d) * second * second.adjoint() +
                                cross * second * first.adjoint() +
                                std::conj(cross) * first * second.adjoint();

  const double tr = rho.trace().real();
  if (sup.parity() != Parity::General && std::abs(tr - 1.0) > 1e-9) {
    throw NumericalIntegrityError("cat-state reduced density has trace " + std::to_string(tr) +
                                  "; the which-path factor is inconsistent with the amplitudes");
  }
  if (!(tr > 0.0)) throw NumericalIntegrityError("reduced density has nonpositive trace");
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return {TwoQubitDensity(rho), false, tr};
}

EmbeddedDensity reduced_density(const CoherentSuperposition& sup, const ModeAmplitudes& amps) {
  return reduced_density(sup, amps, which_path_factor(sup, amps));
}

TwoQubitDensity::Matrix odd_cat_matrix(double abs_alpha, double gt, double which_path) {
  if (!(abs_alpha > 0.0)) throw InvalidArgument("odd_cat_matrix: |alpha| must be positive");
  const double a2 = abs_alpha * abs_alpha;
  const double s = std::sin(gt);
  const double p = std::exp(-s * s * a2);
  const double m = std::sqrt(std::max(0.0, 1.0 - p * p));
  const double w = which_path;
  const double pre = 1.0 / (2.0 * -std::expm1(-2.0 * a2));

  const double a = 1.0 - 2.0 * w * p * p + p * p * p * p;
  const double b = -w * m * p + m * p * p * p;
  const double c = -w * m * m + m * m * p * p;
  const double e = m * m * p * p;
  const double f = m * m * m * p;
  const double h = m * m * m * m;

  Eigen::Matrix4d r;
  r << a, b, b, c,
       b, e, e, f,
       b, e, e, f,
       c, f, f, h;
  return (pre * r).cast<cplx>();
}

TwoQubitDensity::Matrix odd_cat_matrix(double abs_alpha, double gt) {
  const double c = std::cos(gt);
  return odd_cat_matrix(abs_alpha, gt, std::exp(-2.0 * c * c * abs_alpha * abs_alpha));
}

std::array<double, 4> wootters_lambdas(const TwoQubitDensity& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho.matrix());
  if (es.info() != Eigen::Success) {
    throw NumericalIntegrityError("eigendecomposition of the density matrix failed");
  }
  const Eigen::Vector4d p = es.eigenvalues();
  if (p.minCoeff() < -1e-8) {
    throw NumericalIntegrityError("density matrix has eigenvalue " +
                                  std::to_string(p.minCoeff()));
  }
  Eigen::Vector4d root;
  for (int i = 0; i < 4; ++i) root(i) = p(i) > kRankCutoff ? std::sqrt(p(i)) : 0.0;
  const Eigen::Matrix4cd w = es.eigenvectors() * root.asDiagonal();
  const Eigen::Matrix4cd tau = w.transpose() * spin_flip().cast<cplx>() * w;

  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
  const Eigen::Vector4d sv = svd.singularValues();
  std::array<double, 4> out{sv(0), sv(1), sv(2), sv(3)};
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::array<cplx, 4> m12_eigenvalues(const TwoQubitDensity& rho) {
  const Eigen::Matrix4cd y = spin_flip().cast<cplx>();
  const Eigen::Matrix4cd m = rho.matrix() * y * rho.matrix().conjugate() * y;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m, false);
  if (es.info() != Eigen::Success) {
    throw NumericalIntegrityError("eigendecomposition of rho (sy x sy) rho* (sy x sy) failed");
  }
  std::array<cplx, 4> ev;
  for (int i = 0; i < 4; ++i) {
    ev[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const cplx z = ev[static_cast<std::size_t>(i)];
    if (z.real() < -1e-8 || std::abs(z.imag()) > 1e-8) {
      throw NumericalIntegrityError("spin-flip product has eigenvalue (" +
                                    std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                                    ")");
    }
  }
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.real() > b.real(); });
  return ev;
}

std::array<double, 4> m12_lambdas(const TwoQubitDensity& rho) {
  const auto ev = m12_eigenvalues(rho);
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = std::sqrt(std::max(0.0, ev[i].real()));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double wootters_concurrence(const TwoQubitDensity& rho) {
  const auto l = wootters_lambdas(rho);
  return clamp_concurrence(std::max(l[0] - l[1] - l[2] - l[3], 0.0));
}

std::array<double, 4> spectrum_check_odd(double abs_alpha, double gt) {
  if (!(abs_alpha > 0.0)) throw InvalidArgument("spectrum_check_odd: |alpha| must be positive");
  const double a2 = abs_alpha * abs_alpha;
  const double c = std::cos(gt);
  const double s = std::sin(gt);
  const double grow = -std::expm1(-2.0 * s * s * a2);
  const double den = 2.0 * -std::expm1(-2.0 * a2);
  const double l1 = grow * (1.0 + std::exp(-2.0 * c * c * a2)) / den;
  const double l2 = grow * -std::expm1(-2.0 * c * c * a2) / den;
  return {l1, l2, 0.0, 0.0};
}

}  // namespace qdcat
