#include "qdcat/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qdcat {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_alpha(double abs_alpha, const char* what) {
  if (!(abs_alpha > 0.0) || !std::isfinite(abs_alpha)) {
    throw InvalidArgument(std::string(what) + ": |alpha| must be positive and finite");
  }
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidArgument("time must be finite and nonnegative");
  }
}

// exp(-2 c2 a2) (1 - exp(-2 s2 a2)), the numerator shared by both parities.
double concurrence_numerator(double a2, double cos_sq, double sin_sq) {
  return std::exp(-2.0 * cos_sq * a2) * -std::expm1(-2.0 * sin_sq * a2);
}

// Golden-section search for the maximum of f on [lo, hi].
template <typename F>
double golden_section_argmax(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

DissipativeConstants DissipativeConstants::from(const SystemParams& params) {
  const double kappa = params.kappa();
  const double gamma = params.gamma();
  const double disc = 32.0 * kappa * kappa - gamma * gamma;
  if (!(disc > 0.0)) {
    throw RegimeError("overdamped regime: 32 kappa^2 <= gamma^2 (kappa = " +
                      std::to_string(kappa) + ", gamma = " + std::to_string(gamma) + ")");
  }
  return {std::sqrt(disc), kappa, gamma};
}

ModeAmplitudes ideal_amplitudes(const SystemParams& params, double t) {
  require_time(t);
  const double g = params.g();
  const cplx phase = std::exp(-kI * params.omega() * t);
  const double c = std::cos(g * t);
  const double s = std::sin(g * t);
  ModeAmplitudes a;
  a.u = c * phase;
  a.v1 = -kI * (params.g1() / g) * s * phase;
  a.v2 = -kI * (params.g2() / g) * s * phase;
  a.leak = 0.0;
  return a;
}

ModeAmplitudes dissipative_amplitudes(const SystemParams& params, double t) {
  require_time(t);
  const auto k = DissipativeConstants::from(params);
  const double envelope = std::exp(-0.25 * k.gamma * t);
  const double theta = 0.25 * k.delta * t;
  const cplx phase = std::exp(-kI * params.omega() * t);

  ModeAmplitudes a;
  a.u = envelope * (std::cos(theta) + (k.gamma / k.delta) * std::sin(theta)) * phase;
  a.v1 = (4.0 * k.kappa / k.delta) * envelope * std::sin(theta) * phase;
  a.v2 = a.v1;
  const double rest = 1.0 - std::norm(a.u) - std::norm(a.v1) - std::norm(a.v2);
  a.leak = std::clamp(rest, 0.0, 1.0);
  return a;
}

double clamp_concurrence(double raw) {
  if (!std::isfinite(raw) || raw < -1e-9 || raw > 1.0 + 1e-9) {
    throw NumericalIntegrityError("concurrence outside [0, 1]: " + std::to_string(raw));
  }
  return std::clamp(raw, 0.0, 1.0);
}

double concurrence_odd(double abs_alpha, double gt) {
  require_alpha(abs_alpha, "concurrence_odd");
  const double a2 = abs_alpha * abs_alpha;
  const double c = std::cos(gt);
  const double s = std::sin(gt);
  return clamp_concurrence(concurrence_numerator(a2, c * c, s * s) /
                           -std::expm1(-2.0 * a2));
}

double concurrence_even(double abs_alpha, double gt) {
  require_alpha(abs_alpha, "concurrence_even");
  const double a2 = abs_alpha * abs_alpha;
  const double c = std::cos(gt);
  const double s = std::sin(gt);
  return clamp_concurrence(concurrence_numerator(a2, c * c, s * s) /
                           (1.0 + std::exp(-2.0 * a2)));
}

double nbar_odd(double abs_alpha, double gt) {
  require_alpha(abs_alpha, "nbar_odd");
  const double a2 = abs_alpha * abs_alpha;
  const double c = std::cos(gt);
  return a2 * c * c * (1.0 + std::exp(-2.0 * a2)) / -std::expm1(-2.0 * a2);
}

double nbar_even(double abs_alpha, double gt) {
  if (!(abs_alpha >= 0.0) || !std::isfinite(abs_alpha)) {
    throw InvalidArgument("nbar_even: |alpha| must be nonnegative and finite");
  }
  const double a2 = abs_alpha * abs_alpha;
  const double c = std::cos(gt);
  return a2 * c * c * -std::expm1(-2.0 * a2) / (1.0 + std::exp(-2.0 * a2));
}

double mean_photon_number(const CoherentSuperposition& sup, const ModeAmplitudes& amps) {
  // a|alpha_j u> = alpha_j u |alpha_j u>; the branch overlap of the full
  // multimode state is time independent and equals <alpha1|alpha2>.
  const cplx b1 = sup.alpha1() * amps.u;
  const cplx b2 = sup.alpha2() * amps.u;
  const cplx cross = std::conj(sup.c()) * sup.d() * std::conj(b1) * b2 *
                     coherent_overlap(sup.alpha1(), sup.alpha2());
  return std::norm(sup.c()) * std::norm(b1) + std::norm(sup.d()) * std::norm(b2) +
         2.0 * cross.real();
}

double concurrence_odd_from_exciton_weight(double abs_alpha, double v_sq) {
  require_alpha(abs_alpha, "concurrence_odd_dissipative");
  const double a2 = abs_alpha * abs_alpha;
  const double num = std::exp(-2.0 * a2 * (1.0 - 2.0 * v_sq)) * -std::expm1(-4.0 * a2 * v_sq);
  return clamp_concurrence(num / -std::expm1(-2.0 * a2));
}

double concurrence_odd_dissipative(double abs_alpha, const SystemParams& params, double t) {
  require_alpha(abs_alpha, "concurrence_odd_dissipative");
  const auto amps = dissipative_amplitudes(params, t);
  return concurrence_odd_from_exciton_weight(abs_alpha, std::norm(amps.v1));
}

std::vector<Peak> dissipative_peaks(double abs_alpha, const SystemParams& params,
                                    int count) {
  require_alpha(abs_alpha, "dissipative_peaks");
  if (count < 0) throw InvalidArgument("peak count must be nonnegative");
  DissipativeConstants::from(params);
  const double g = params.g();
  auto c_of_gt = [&](double gt) {
    return concurrence_odd_dissipative(abs_alpha, params, gt / g);
  };
  std::vector<Peak> peaks;
  peaks.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    const double lo = (n + 0.25) * std::numbers::pi;
    const double hi = (n + 0.75) * std::numbers::pi;
    const double gt = golden_section_argmax(c_of_gt, lo, hi, 1e-10);
    peaks.push_back({n, gt, c_of_gt(gt)});
  }
  return peaks;
}

}  // namespace qdcat
