#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qdcat/errors.hpp"

namespace qdcat {

using cplx = std::complex<double>;

/// Tolerance used when validating the invariants of constructed values.
inline constexpr double kValidationTol = 1e-12;

/// Physical constants of one scenario. Couplings, frequency and decay rate
/// share one (arbitrary) inverse-time unit.
class SystemParams {
 public:
  SystemParams(double g1, double g2, double omega = 0.0, double gamma = 0.0);

  /// Equal couplings normalised so that the total coupling g is one.
  static SystemParams symmetric(double gamma_over_g = 0.0, double omega = 0.0);

  double g1() const noexcept { return g1_; }
  double g2() const noexcept { return g2_; }
  double omega() const noexcept { return omega_; }
  double gamma() const noexcept { return gamma_; }

  /// Total coupling sqrt(g1^2 + g2^2).
  double g() const noexcept;

  /// True when both dots couple identically (|g1 - g2| <= 1e-12 g), which the
  /// dissipative model requires.
  bool is_symmetric() const noexcept;

  /// Per-dot coupling g / sqrt(2); throws InvalidArgument unless symmetric.
  double kappa() const;

 private:
  double g1_;
  double g2_;
  double omega_;
  double gamma_;
};

enum class Parity { Odd, Even, General };

const char* to_string(Parity p) noexcept;

/// Overlap <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b) of two coherent states.
cplx coherent_overlap(cplx a, cplx b) noexcept;

/// Normalised cavity state C|alpha1> + D|alpha2>.
class CoherentSuperposition {
 public:
  /// Validates |C|^2 + |D|^2 + 2 Re(C* D <alpha1|alpha2>) = 1.
  CoherentSuperposition(cplx c, cplx d, cplx alpha1, cplx alpha2,
                        Parity parity = Parity::General);

  /// Rescales (c, d) so the superposition has unit norm.
  static CoherentSuperposition normalized(cplx c, cplx d, cplx alpha1, cplx alpha2);

  cplx c() const noexcept { return c_; }
  cplx d() const noexcept { return d_; }
  cplx alpha1() const noexcept { return alpha1_; }
  cplx alpha2() const noexcept { return alpha2_; }
  Parity parity() const noexcept { return parity_; }

  double norm_squared() const noexcept;

 private:
  cplx c_;
  cplx d_;
  cplx alpha1_;
  cplx alpha2_;
  Parity parity_;
};

/// N_-(|alpha> - |-alpha>); throws InvalidArgument for alpha = 0.
CoherentSuperposition make_odd_cat(cplx alpha);

/// N_+(|alpha> + |-alpha>).
CoherentSuperposition make_even_cat(cplx alpha);

/// Coefficients (u, v1, v2) that map the cavity amplitude at t = 0 onto the
/// cavity and exciton amplitudes at time t. `leak` is the weight carried off
/// into the environment.
struct ModeAmplitudes {
  cplx u{1.0, 0.0};
  cplx v1{0.0, 0.0};
  cplx v2{0.0, 0.0};
  double leak = 0.0;

  /// |u|^2 + |v1|^2 + |v2|^2 + leak; one for every valid instance.
  double total_weight() const noexcept;
};

/// Hermitian, unit-trace, positive semidefinite 4x4 matrix in the basis
/// {|00>, |01>, |10>, |11>}.
class TwoQubitDensity {
 public:
  using Matrix = Eigen::Matrix4cd;

  /// Validates the density-matrix axioms; throws InvalidArgument otherwise.
  explicit TwoQubitDensity(const Matrix& entries);

  static TwoQubitDensity pure(const Eigen::Vector4cd& psi);
  static TwoQubitDensity basis_state(int index);

  const Matrix& matrix() const noexcept { return entries_; }
  cplx operator()(int row, int col) const { return entries_(row, col); }

  double purity() const;

 private:
  Matrix entries_;
};

/// Ordered sample of dimensionless times g t.
class TimeGrid {
 public:
  enum class Units { GtOverPi, Absolute };

  /// Points are given in `units`; they are stored as g t. Throws unless the
  /// points are nonnegative and strictly increasing.
  explicit TimeGrid(std::vector<double> points, Units units = Units::GtOverPi);

  /// `n_points` evenly spaced values of g t / pi over [0, t_max_over_pi].
  static TimeGrid uniform(double t_max_over_pi, int n_points);

  std::size_t size() const noexcept { return gt_.size(); }
  double gt(std::size_t i) const { return gt_.at(i); }
  double gt_over_pi(std::size_t i) const;
  const std::vector<double>& gt_points() const noexcept { return gt_; }
  Units expressed_in() const noexcept { return units_; }

 private:
  std::vector<double> gt_;
  std::vector<double> over_pi_;
  Units units_;
};

}  // namespace qdcat
