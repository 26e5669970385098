#pragma once

#include <vector>

#include "qdcat/model.hpp"

namespace qdcat {

/// Constants of the damped one-excitation dynamics for two identical dots.
struct DissipativeConstants {
  double delta;  ///< sqrt(32 kappa^2 - gamma^2), positive
  double kappa;
  double gamma;

  /// Throws InvalidArgument when g1 != g2 and RegimeError unless
  /// 32 kappa^2 > gamma^2.
  static DissipativeConstants from(const SystemParams& params);
};

/// Lossless amplitudes: u = cos(gt), v_m = -i (g_m/g) sin(gt), all times
/// exp(-i omega t).
ModeAmplitudes ideal_amplitudes(const SystemParams& params, double t);

/// Amplitudes of the cavity and the two (identical) exciton modes when each
/// exciton decays into a zero-temperature continuum at rate gamma.
///
/// The exciton coefficient is returned in the closed form
/// (4 kappa / delta) exp(-gamma t / 4) sin(delta t / 4) exp(-i omega t), which
/// differs from the lossless v_m by a constant factor of i. Every observable
/// uses |v| only.
ModeAmplitudes dissipative_amplitudes(const SystemParams& params, double t);

/// Exciton-exciton concurrence for an odd-cat cavity field.
double concurrence_odd(double abs_alpha, double gt);
/// Exciton-exciton concurrence for an even-cat cavity field.
double concurrence_even(double abs_alpha, double gt);

double nbar_odd(double abs_alpha, double gt);
double nbar_even(double abs_alpha, double gt);

/// Mean cavity photon number <a^dagger a> for an arbitrary superposition at
/// the time described by `amps`.
double mean_photon_number(const CoherentSuperposition& sup, const ModeAmplitudes& amps);

/// Odd-cat concurrence with exciton decay (requires g1 = g2 and the
/// underdamped regime).
double concurrence_odd_dissipative(double abs_alpha, const SystemParams& params, double t);

/// Same quantity expressed through the exciton weight |v1|^2 directly.
double concurrence_odd_from_exciton_weight(double abs_alpha, double v_sq);

struct Peak {
  int index;      ///< 0 for the maximum near gt = pi/2, 1 near 3pi/2, ...
  double gt;
  double value;
};

/// Local maxima of concurrence_odd_dissipative, one per bracket
/// gt in ((n + 1/4) pi, (n + 3/4) pi), located to 1e-10 in gt.
std::vector<Peak> dissipative_peaks(double abs_alpha, const SystemParams& params,
                                    int count);

/// Clamps a concurrence to [0, 1]; throws NumericalIntegrityError when the
/// raw value lies more than 1e-9 outside.
double clamp_concurrence(double raw);

}  // namespace qdcat
