#include "qdcat/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace qdcat {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

SystemParams::SystemParams(double g1, double g2, double omega, double gamma)
    : g1_(g1), g2_(g2), omega_(omega), gamma_(gamma) {
  if (!(g1 > 0.0) || !(g2 > 0.0) || !std::isfinite(g1) || !std::isfinite(g2)) {
    throw InvalidArgument("couplings g1, g2 must be positive and finite");
  }
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw InvalidArgument("omega must be nonnegative and finite");
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("gamma must be nonnegative and finite");
  }
}

SystemParams SystemParams::symmetric(double gamma_over_g, double omega) {
  const double k = 1.0 / std::numbers::sqrt2;
  return SystemParams(k, k, omega, gamma_over_g);
}

double SystemParams::g() const noexcept { return std::hypot(g1_, g2_); }

bool SystemParams::is_symmetric() const noexcept {
  return std::abs(g1_ - g2_) <= 1e-12 * g();
}

double SystemParams::kappa() const {
  if (!is_symmetric()) {
    throw InvalidArgument("kappa is defined only for equal couplings g1 = g2");
  }
  return g() / std::numbers::sqrt2;
}

const char* to_string(Parity p) noexcept {
  switch (p) {
    case Parity::Odd:
      return "odd";
    case Parity::Even:
      return "even";
    case Parity::General:
      return "general";
  }
  return "general";
}

cplx coherent_overlap(cplx a, cplx b) noexcept {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

CoherentSuperposition::CoherentSuperposition(cplx c, cplx d, cplx alpha1, cplx alpha2,
                                             Parity parity)
    : c_(c), d_(d), alpha1_(alpha1), alpha2_(alpha2), parity_(parity) {
  if (!finite(c) || !finite(d) || !finite(alpha1) || !finite(alpha2)) {
    throw InvalidArgument("superposition coefficients and amplitudes must be finite");
  }
  const double n2 = norm_squared();
  if (std::abs(n2 - 1.0) > kValidationTol) {
    throw InvalidArgument("superposition is not normalised: <psi|psi> = " +
                          std::to_string(n2));
  }
}

CoherentSuperposition CoherentSuperposition::normalized(cplx c, cplx d, cplx alpha1,
                                                        cplx alpha2) {
  const double n2 = std::norm(c) + std::norm(d) +
                    2.0 * std::real(std::conj(c) * d * coherent_overlap(alpha1, alpha2));
  if (!(n2 > 1e-300) || !std::isfinite(n2)) {
    throw InvalidArgument("superposition has zero norm");
  }
  const double s = 1.0 / std::sqrt(n2);
  return CoherentSuperposition(c * s, d * s, alpha1, alpha2, Parity::General);
}

double CoherentSuperposition::norm_squared() const noexcept {
  return std::norm(c_) + std::norm(d_) +
         2.0 * std::real(std::conj(c_) * d_ * coherent_overlap(alpha1_, alpha2_));
}

CoherentSuperposition make_odd_cat(cplx alpha) {
  const double a2 = std::norm(alpha);
  if (!(a2 > 0.0)) {
    throw InvalidArgument("odd cat state is undefined for alpha = 0");
  }
  // 2 - 2 exp(-2|a|^2) via expm1 keeps precision for small |alpha|.
  const double n_minus = 1.0 / std::sqrt(-2.0 * std::expm1(-2.0 * a2));
  return CoherentSuperposition(n_minus, -n_minus, alpha, -alpha, Parity::Odd);
}

CoherentSuperposition make_even_cat(cplx alpha) {
  const double a2 = std::norm(alpha);
  const double n_plus = 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-2.0 * a2));
  return CoherentSuperposition(n_plus, n_plus, alpha, -alpha, Parity::Even);
}

double ModeAmplitudes::total_weight() const noexcept {
  return std::norm(u) + std::norm(v1) + std::norm(v2) + leak;
}

TwoQubitDensity::TwoQubitDensity(const Matrix& entries) : entries_(entries) {
  if (!entries.allFinite()) {
    throw InvalidArgument("density matrix has non-finite entries");
  }
  const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kValidationTol) {
    throw InvalidArgument("density matrix is not Hermitian (deviation " +
                          std::to_string(herm) + ")");
  }
  const cplx tr = entries.trace();
  if (std::abs(tr - 1.0) > kValidationTol) {
    throw InvalidArgument("density matrix trace differs from one: " +
                          std::to_string(tr.real()));
  }
  // Symmetrise so downstream eigensolvers see an exactly Hermitian matrix.
  entries_ = 0.5 * (entries + entries.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw InvalidArgument("density matrix is not positive semidefinite (eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
}

TwoQubitDensity TwoQubitDensity::pure(const Eigen::Vector4cd& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw InvalidArgument("pure state vector is zero");
  const Eigen::Vector4cd unit = psi / n;
  return TwoQubitDensity(unit * unit.adjoint());
}

TwoQubitDensity TwoQubitDensity::basis_state(int index) {
  if (index < 0 || index > 3) throw InvalidArgument("basis index must be in [0, 3]");
  Matrix m = Matrix::Zero();
  m(index, index) = 1.0;
  return TwoQubitDensity(m);
}

double TwoQubitDensity::purity() const { return (entries_ * entries_).trace().real(); }

TimeGrid::TimeGrid(std::vector<double> points, Units units) : units_(units) {
  if (points.empty()) throw InvalidArgument("time grid is empty");
  const double scale = units == Units::GtOverPi ? std::numbers::pi : 1.0;
  gt_.reserve(points.size());
  over_pi_.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] >= 0.0) || !std::isfinite(points[i])) {
      throw InvalidArgument("time grid points must be finite and nonnegative");
    }
    if (i > 0 && !(points[i] > points[i - 1])) {
      throw InvalidArgument("time grid points must be strictly increasing");
    }
    gt_.push_back(points[i] * scale);
    over_pi_.push_back(units == Units::GtOverPi ? points[i] : points[i] / std::numbers::pi);
  }
}

TimeGrid TimeGrid::uniform(double t_max_over_pi, int n_points) {
  if (n_points < 1) throw InvalidArgument("time grid needs at least one point");
  if (n_points > 1 && !(t_max_over_pi > 0.0)) {
    throw InvalidArgument("t_max_over_pi must be positive for a multi-point grid");
  }
  std::vector<double> pts(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    pts[static_cast<std::size_t>(i)] =
        n_points == 1 ? 0.0 : t_max_over_pi * i / (n_points - 1);
  }
  return TimeGrid(std::move(pts), Units::GtOverPi);
}

double TimeGrid::gt_over_pi(std::size_t i) const { return over_pi_.at(i); }

}  // namespace qdcat
