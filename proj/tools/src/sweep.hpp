#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "scenario.hpp"

namespace qdcat::cli {

/// A grid point failed; carries the point so the report can name it.
class PointError : public Error {
 public:
  PointError(double gt_over_pi, std::string cause, const std::string& what)
      : Error(what), gt_over_pi_(gt_over_pi), cause_(std::move(cause)) {}
  double gt_over_pi() const noexcept { return gt_over_pi_; }
  /// Short name of the underlying error category.
  const std::string& cause() const noexcept { return cause_; }

 private:
  double gt_over_pi_;
  std::string cause_;
};

struct Deviation {
  std::string observable;
  double max_deviation;
  double tolerance;
  bool pass() const { return max_deviation <= tolerance; }
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Closed form vs oracle; empty unless the oracle ran.
  std::vector<Deviation> deviations;
};

/// Runs `task(i)` for i in [0, n) on up to `threads` workers (0 means
/// hardware concurrency). When tasks throw, the exception of the lowest
/// index is rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task);

/// One row per grid point with the requested observables. Throws
/// TruncationError before any work when the oracle does not fit the budget.
SweepTable run_sweep(const Scenario& scenario);

void write_csv(std::ostream& out, const Scenario& scenario, const SweepTable& table);

}  // namespace qdcat::cli
