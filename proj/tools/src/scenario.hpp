#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qdcat/model.hpp"

namespace qdcat::cli {

/// Raised for malformed or out-of-range scenario input; maps to exit code 2.
class ScenarioError : public InvalidArgument {
 public:
  ScenarioError(const std::string& key, const std::string& what)
      : InvalidArgument(key.empty() ? what : key + ": " + what), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

enum class Observable { Concurrence, Nbar, Leakage, Spectrum };

struct Tolerances {
  double concurrence = 1e-6;
  double nbar = 1e-6;
  double leakage = 1e-9;
  double amplitude = 1e-8;
};

struct Scenario {
  Parity parity = Parity::Odd;
  cplx alpha{1.0, 0.0};
  // Only read for Parity::General; alpha is then the first branch.
  cplx c{1.0, 0.0};
  cplx d{0.0, 0.0};
  cplx alpha2{0.0, 0.0};

  double g1 = 0.70710678118654752;
  double g2 = 0.70710678118654752;
  double omega = 0.0;
  double gamma = 0.0;

  double t_max_over_pi = 2.0;
  int n_points = 401;
  bool oracle = false;
  int cutoff_budget = 80;
  std::set<Observable> outputs{Observable::Concurrence, Observable::Nbar, Observable::Leakage};
  Tolerances tol;
  int threads = 0;  // 0: hardware concurrency; never affects results

  SystemParams params() const;
  CoherentSuperposition superposition() const;
  TimeGrid grid() const;
  bool dissipative() const noexcept { return gamma > 0.0; }
  bool wants(Observable o) const { return outputs.count(o) != 0; }

  /// Cross-field checks beyond what the core types enforce.
  void validate() const;
};

using KeyValues = std::map<std::string, std::string>;

/// Every key accepted in scenario files and as `--key` flags.
const std::vector<std::string>& scenario_keys();

/// Reads `key = value` lines; blank lines and `#` comments are skipped.
KeyValues parse_key_values(std::istream& in);
KeyValues read_scenario_file(const std::string& path);

/// Parses `values` over `base`; only keys present in `values` change.
Scenario apply_values(Scenario base, const KeyValues& values);

/// Canonical key=value description, in scenario_keys() order, used for the
/// CSV header block. `threads` is left out so output is independent of it.
std::vector<std::pair<std::string, std::string>> describe(const Scenario& s);

/// Shortest round-trip-safe text for a double ("%.17g" trimmed).
std::string format_exact(double v);
/// Fixed 12-significant-digit text used in every data row.
std::string format_value(double v);

}  // namespace qdcat::cli
