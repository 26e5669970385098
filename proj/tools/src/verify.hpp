#pragma once

#include <iosfwd>

#include "sweep.hpp"

namespace qdcat::cli {

struct VerifyReport {
  SweepTable table;
  bool pass() const;
};

/// Sweeps with the oracle forced on and compares every observable. Lossless
/// scenarios use the truncated Fock evolution; dissipative ones the
/// amplitude ODE.
VerifyReport run_verify(Scenario scenario);

void write_report(std::ostream& out, const Scenario& scenario, const VerifyReport& report);

}  // namespace qdcat::cli
