#pragma once

#include <array>

#include "qdcat/model.hpp"

namespace qdcat {

/// Orthonormalised qubit for one exciton mode built from the two branch
/// coherent states: |0> = |beta0>, |1> = (|beta1> - s |beta0>) / N with
/// s = <beta0|beta1> and N = sqrt(1 - |s|^2).
struct QubitMode {
  cplx beta0;
  cplx beta1;
  cplx overlap;  ///< s = <beta0|beta1>
  double p;      ///< |s|
  double norm;   ///< N
  bool degenerate;
};

struct QubitBasis {
  std::array<QubitMode, 2> modes;

  bool degenerate() const noexcept { return modes[0].degenerate || modes[1].degenerate; }
};

QubitBasis build_basis(const CoherentSuperposition& sup, const ModeAmplitudes& amps);

/// Overlap <X1|X2> of everything traced out alongside the cavity (cavity
/// branch plus environment branch). For lossless amplitudes this is
/// <alpha1 u|alpha2 u>; for an odd cat with exciton decay it is
/// exp(-2|alpha|^2 (1 - 2|v|^2)).
cplx which_path_factor(const CoherentSuperposition& sup, const ModeAmplitudes& amps);

struct EmbeddedDensity {
  TwoQubitDensity rho;
  bool degenerate;
  double raw_trace;  ///< trace before renormalisation
};

/// Two-exciton reduced density matrix in the qubit basis of build_basis.
///
/// `which_path` multiplies the coherence between the two branches. A
/// degenerate basis yields |00><00| with the flag set. For cat states the
/// assembled trace must be within 1e-9 of one, otherwise
/// NumericalIntegrityError is raised.
EmbeddedDensity reduced_density(const CoherentSuperposition& sup, const ModeAmplitudes& amps,
                                cplx which_path);

/// reduced_density with which_path_factor(sup, amps).
EmbeddedDensity reduced_density(const CoherentSuperposition& sup, const ModeAmplitudes& amps);

/// The explicit odd-cat matrix for g1 = g2 with P = exp(-sin^2(gt)|alpha|^2),
/// M = sqrt(1 - P^2) and coherence factor `which_path`.
TwoQubitDensity::Matrix odd_cat_matrix(double abs_alpha, double gt, double which_path);
/// Same with the lossless factor exp(-2 cos^2(gt) |alpha|^2).
TwoQubitDensity::Matrix odd_cat_matrix(double abs_alpha, double gt);

/// Square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy), in
/// decreasing order.
///
/// Computed as the singular values of W^T (sy x sy) W for rho = W W^dagger,
/// which avoids the square-root amplification of eigenvalue noise that the
/// literal product suffers for rank-deficient rho.
std::array<double, 4> wootters_lambdas(const TwoQubitDensity& rho);

/// Eigenvalues of the literal non-Hermitian product rho (sy x sy) rho* (sy x sy)
/// from a general complex eigensolver, sorted by decreasing real part.
/// Throws NumericalIntegrityError for Re < -1e-8 or |Im| > 1e-8.
std::array<cplx, 4> m12_eigenvalues(const TwoQubitDensity& rho);

/// Clipped square roots of m12_eigenvalues.
std::array<double, 4> m12_lambdas(const TwoQubitDensity& rho);

/// max(l1 - l2 - l3 - l4, 0).
double wootters_concurrence(const TwoQubitDensity& rho);

/// Closed-form square-root spectrum of the odd-cat matrix:
/// {l1, l2, 0, 0}.
std::array<double, 4> spectrum_check_odd(double abs_alpha, double gt);

}  // namespace qdcat
