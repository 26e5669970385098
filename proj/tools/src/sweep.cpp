#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

#include "qdcat/closed_form.hpp"
#include "qdcat/fock_oracle.hpp"
#include "qdcat/qubit_embed.hpp"

namespace qdcat::cli {

namespace {

struct Point {
  double c = 0.0;
  double c_oracle = 0.0;
  double nbar = 0.0;
  double nbar_oracle = 0.0;
  double leakage = 0.0;
  double amp_dev = 0.0;
  std::array<double, 4> lambdas{};
};

const char* cause_of(const std::exception& e) {
  if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid_argument";
  if (dynamic_cast<const RegimeError*>(&e)) return "regime";
  if (dynamic_cast<const TruncationError*>(&e)) return "truncation";
  if (dynamic_cast<const IntegratorError*>(&e)) return "integrator";
  if (dynamic_cast<const NumericalIntegrityError*>(&e)) return "numerical_integrity";
  return "internal";
}

// Closed forms apply to the cat parities with identical couplings; anything
// else goes through the general embedding.
bool has_closed_form(const Scenario& s, const SystemParams& p) {
  return s.parity != Parity::General && p.is_symmetric() && std::abs(s.alpha) > 0.0;
}

}  // namespace

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

SweepTable run_sweep(const Scenario& s) {
  s.validate();
  const SystemParams p = s.params();
  const CoherentSuperposition sup = s.superposition();
  const TimeGrid grid = s.grid();
  const double g = p.g();
  const double abs_alpha = std::abs(s.alpha);
  const bool closed = has_closed_form(s, p);
  const bool ideal_oracle = s.oracle && !s.dissipative();

  // Everything that can fail for resource reasons happens before the pool.
  std::shared_ptr<const Hamiltonian> h;
  std::unique_ptr<FockState> initial;
  if (ideal_oracle) {
    auto space = std::make_shared<const FockSpace>(FockSpace::for_superposition(sup, s.cutoff_budget));
    h = build_hamiltonian(p, space);
    initial = std::make_unique<FockState>(prepare_initial(sup, space));
  }
  std::vector<ModeAmplitudes> ode;
  if (s.oracle && s.dissipative()) ode = dissipative_amplitude_ode(p, grid);

  std::vector<Point> points(grid.size());
  parallel_for(grid.size(), s.threads, [&](std::size_t i) {
    const double gt = grid.gt(i);
    const double t = gt / g;
    try {
      Point& pt = points[i];
      const ModeAmplitudes amps =
          s.dissipative() ? dissipative_amplitudes(p, t) : ideal_amplitudes(p, t);

      if (s.dissipative()) {
        pt.c = concurrence_odd_dissipative(abs_alpha, p, t);
      } else if (closed) {
        pt.c = s.parity == Parity::Odd ? concurrence_odd(abs_alpha, gt) : concurrence_even(abs_alpha, gt);
      }
      if (!closed || s.wants(Observable::Spectrum)) {
        const auto rd = reduced_density(sup, amps);
        if (!closed) pt.c = wootters_concurrence(rd.rho);
        pt.lambdas = wootters_lambdas(rd.rho);
      }
      pt.nbar = mean_photon_number(sup, amps);
      pt.leakage = amps.leak;

      if (ideal_oracle) {
        const OracleSample o = ideal_oracle_sample(*h, *initial, sup, p, t);
        pt.c_oracle = o.concurrence;
        pt.nbar_oracle = o.nbar;
        pt.leakage = o.leakage;
      } else if (!ode.empty()) {
        const ModeAmplitudes& a = ode[i];
        pt.c_oracle = wootters_concurrence(reduced_density(sup, a).rho);
        pt.nbar_oracle = mean_photon_number(sup, a);
        pt.amp_dev = std::max({std::abs(std::abs(a.u) - std::abs(amps.u)),
                               std::abs(std::abs(a.v1) - std::abs(amps.v1)),
                               std::abs(std::abs(a.v2) - std::abs(amps.v2))});
      }
    } catch (const std::exception& e) {
      throw PointError(grid.gt_over_pi(i), cause_of(e), e.what());
    }
  });

  SweepTable table;
  table.columns.push_back("gt_over_pi");
  const bool want_c = s.wants(Observable::Concurrence);
  const bool want_n = s.wants(Observable::Nbar);
  const bool want_l = s.wants(Observable::Leakage);
  const bool want_s = s.wants(Observable::Spectrum);
  if (want_c) {
    table.columns.push_back("C_analytic");
    if (s.oracle) table.columns.push_back("C_oracle");
  }
  if (want_n) {
    table.columns.push_back("nbar");
    if (s.oracle) table.columns.push_back("nbar_oracle");
  }
  if (want_l) table.columns.push_back("leakage");
  if (want_s) {
    for (const char* name : {"lambda1", "lambda2", "lambda3", "lambda4"}) table.columns.push_back(name);
  }

  table.rows.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& pt = points[i];
    std::vector<double> row{grid.gt_over_pi(i)};
    if (want_c) {
      row.push_back(pt.c);
      if (s.oracle) row.push_back(pt.c_oracle);
    }
    if (want_n) {
      row.push_back(pt.nbar);
      if (s.oracle) row.push_back(pt.nbar_oracle);
    }
    if (want_l) row.push_back(pt.leakage);
    if (want_s) row.insert(row.end(), pt.lambdas.begin(), pt.lambdas.end());
    table.rows.push_back(std::move(row));
  }

  if (s.oracle) {
    double dc = 0.0, dn = 0.0, leak = 0.0, amp = 0.0;
    for (const Point& pt : points) {
      dc = std::max(dc, std::abs(pt.c - pt.c_oracle));
      dn = std::max(dn, std::abs(pt.nbar - pt.nbar_oracle));
      leak = std::max(leak, pt.leakage);
      amp = std::max(amp, pt.amp_dev);
    }
    table.deviations.push_back({"concurrence", dc, s.tol.concurrence});
    table.deviations.push_back({"nbar", dn, s.tol.nbar});
    if (s.dissipative()) {
      table.deviations.push_back({"amplitude_modulus", amp, s.tol.amplitude});
    } else {
      table.deviations.push_back({"leakage", leak, s.tol.leakage});
    }
  }
  return table;
}

void write_csv(std::ostream& out, const Scenario& scenario, const SweepTable& table) {
  for (const auto& [key, value] : describe(scenario)) out << "# " << key << '=' << value << '\n';
  for (const auto& d : table.deviations) {
    out << "# max_deviation_" << d.observable << '=' << format_value(d.max_deviation) << '\n';
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_value(row[c]);
    out << '\n';
  }
}

}  // namespace qdcat::cli
