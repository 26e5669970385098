#include "verify.hpp"

#include <algorithm>
#include <ostream>

namespace qdcat::cli {

bool VerifyReport::pass() const {
  return !table.deviations.empty() &&
         std::all_of(table.deviations.begin(), table.deviations.end(),
                     [](const Deviation& d) { return d.pass(); });
}

VerifyReport run_verify(Scenario scenario) {
  scenario.oracle = true;
  scenario.outputs = {Observable::Concurrence, Observable::Nbar, Observable::Leakage};
  return {run_sweep(scenario)};
}

void write_report(std::ostream& out, const Scenario& scenario, const VerifyReport& report) {
  Scenario shown = scenario;
  shown.oracle = true;
  shown.outputs = {Observable::Concurrence, Observable::Nbar, Observable::Leakage};
  for (const auto& [key, value] : describe(shown)) out << "# " << key << '=' << value << '\n';
  out << "# oracle_kind=" << (scenario.dissipative() ? "amplitude_ode" : "truncated_fock") << '\n';
  out << "observable,max_deviation,tolerance,status\n";
  for (const auto& d : report.table.deviations) {
    out << d.observable << ',' << format_value(d.max_deviation) << ',' << format_exact(d.tolerance)
        << ',' << (d.pass() ? "PASS" : "FAIL") << '\n';
  }
  out << "overall,,," << (report.pass() ? "PASS" : "FAIL") << '\n';
}

}  // namespace qdcat::cli
