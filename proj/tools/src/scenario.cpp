#include "scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "qdcat/closed_form.hpp"

namespace qdcat::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ScenarioError(key, "expected a finite number, got '" + text + "'");
  }
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ScenarioError(key, "expected an integer, got '" + text + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ScenarioError(key, "expected true/false, got '" + text + "'");
}

Parity to_parity(const std::string& text) {
  if (text == "odd") return Parity::Odd;
  if (text == "even") return Parity::Even;
  if (text == "general") return Parity::General;
  throw ScenarioError("parity", "expected odd, even or general, got '" + text + "'");
}

const char* observable_name(Observable o) {
  switch (o) {
    case Observable::Concurrence:
      return "concurrence";
    case Observable::Nbar:
      return "nbar";
    case Observable::Leakage:
      return "leakage";
    case Observable::Spectrum:
      return "spectrum";
  }
  return "?";
}

std::set<Observable> to_outputs(const std::string& text) {
  std::set<Observable> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item == "concurrence") out.insert(Observable::Concurrence);
    else if (item == "nbar") out.insert(Observable::Nbar);
    else if (item == "leakage") out.insert(Observable::Leakage);
    else if (item == "spectrum") out.insert(Observable::Spectrum);
    else throw ScenarioError("outputs", "unknown observable '" + item + "'");
  }
  if (out.empty()) throw ScenarioError("outputs", "at least one observable is required");
  return out;
}

}  // namespace

std::string format_exact(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string format_value(double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in output
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys{
      "parity",        "alpha_re",        "alpha_im",  "c_re",        "c_im",
      "d_re",          "d_im",            "alpha2_re", "alpha2_im",   "g1",
      "g2",            "omega",           "gamma",     "t_max_over_pi", "n_points",
      "oracle",        "cutoff_budget",   "outputs",   "tol_concurrence", "tol_nbar",
      "tol_leakage",   "tol_amplitude",   "threads"};
  return keys;
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ScenarioError("", "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const auto& keys = scenario_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ScenarioError(key, "unknown key on line " + std::to_string(lineno));
    }
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValues read_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario", "cannot open '" + path + "'");
  return parse_key_values(in);
}

Scenario apply_values(Scenario s, const KeyValues& values) {
  for (const auto& [key, text] : values) {
    if (key == "parity") s.parity = to_parity(text);
    else if (key == "alpha_re") s.alpha.real(to_double(key, text));
    else if (key == "alpha_im") s.alpha.imag(to_double(key, text));
    else if (key == "c_re") s.c.real(to_double(key, text));
    else if (key == "c_im") s.c.imag(to_double(key, text));
    else if (key == "d_re") s.d.real(to_double(key, text));
    else if (key == "d_im") s.d.imag(to_double(key, text));
    else if (key == "alpha2_re") s.alpha2.real(to_double(key, text));
    else if (key == "alpha2_im") s.alpha2.imag(to_double(key, text));
    else if (key == "g1") s.g1 = to_double(key, text);
    else if (key == "g2") s.g2 = to_double(key, text);
    else if (key == "omega") s.omega = to_double(key, text);
    else if (key == "gamma") s.gamma = to_double(key, text);
    else if (key == "t_max_over_pi") s.t_max_over_pi = to_double(key, text);
    else if (key == "n_points") s.n_points = to_int(key, text);
    else if (key == "oracle") s.oracle = to_bool(key, text);
    else if (key == "cutoff_budget") s.cutoff_budget = to_int(key, text);
    else if (key == "outputs") s.outputs = to_outputs(text);
    else if (key == "tol_concurrence") s.tol.concurrence = to_double(key, text);
    else if (key == "tol_nbar") s.tol.nbar = to_double(key, text);
    else if (key == "tol_leakage") s.tol.leakage = to_double(key, text);
    else if (key == "tol_amplitude") s.tol.amplitude = to_double(key, text);
    else if (key == "threads") s.threads = to_int(key, text);
    else throw ScenarioError(key, "unknown key");
  }
  return s;
}

SystemParams Scenario::params() const {
  try {
    return SystemParams(g1, g2, omega, gamma);
  } catch (const InvalidArgument& e) {
    throw ScenarioError("g1/g2/omega/gamma", e.what());
  }
}

CoherentSuperposition Scenario::superposition() const {
  try {
    switch (parity) {
      case Parity::Odd:
        return make_odd_cat(alpha);
      case Parity::Even:
        return make_even_cat(alpha);
      case Parity::General:
        return CoherentSuperposition::normalized(c, d, alpha, alpha2);
    }
  } catch (const InvalidArgument& e) {
    throw ScenarioError("alpha", e.what());
  }
  throw ScenarioError("parity", "unsupported parity");
}

TimeGrid Scenario::grid() const {
  if (n_points < 1) throw ScenarioError("n_points", "must be at least 1");
  if (!(t_max_over_pi > 0.0)) throw ScenarioError("t_max_over_pi", "must be positive");
  try {
    return TimeGrid::uniform(t_max_over_pi, n_points);
  } catch (const InvalidArgument& e) {
    throw ScenarioError("t_max_over_pi", e.what());
  }
}

void Scenario::validate() const {
  const auto p = params();
  superposition();
  grid();
  if (outputs.empty()) throw ScenarioError("outputs", "at least one observable is required");
  if (cutoff_budget < 1) throw ScenarioError("cutoff_budget", "must be positive");
  if (threads < 0) throw ScenarioError("threads", "must be nonnegative");
  for (double t : {tol.concurrence, tol.nbar, tol.leakage, tol.amplitude}) {
    if (!(t > 0.0)) throw ScenarioError("tol_*", "tolerances must be positive");
  }
  if (dissipative()) {
    if (parity != Parity::Odd) {
      throw ScenarioError("gamma", "exciton decay is only modelled for the odd cat");
    }
    try {
      DissipativeConstants::from(p);
    } catch (const Error& e) {
      throw ScenarioError("gamma", e.what());
    }
  }
}

std::vector<std::pair<std::string, std::string>> describe(const Scenario& s) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("parity", to_string(s.parity));
  out.emplace_back("alpha_re", format_exact(s.alpha.real()));
  out.emplace_back("alpha_im", format_exact(s.alpha.imag()));
  if (s.parity == Parity::General) {
    out.emplace_back("c_re", format_exact(s.c.real()));
    out.emplace_back("c_im", format_exact(s.c.imag()));
    out.emplace_back("d_re", format_exact(s.d.real()));
    out.emplace_back("d_im", format_exact(s.d.imag()));
    out.emplace_back("alpha2_re", format_exact(s.alpha2.real()));
    out.emplace_back("alpha2_im", format_exact(s.alpha2.imag()));
  }
  out.emplace_back("g1", format_exact(s.g1));
  out.emplace_back("g2", format_exact(s.g2));
  out.emplace_back("omega", format_exact(s.omega));
  out.emplace_back("gamma", format_exact(s.gamma));
  out.emplace_back("t_max_over_pi", format_exact(s.t_max_over_pi));
  out.emplace_back("n_points", std::to_string(s.n_points));
  out.emplace_back("oracle", s.oracle ? "true" : "false");
  out.emplace_back("cutoff_budget", std::to_string(s.cutoff_budget));
  std::string outs;
  for (auto o : s.outputs) {
    if (!outs.empty()) outs += ',';
    outs += observable_name(o);
  }
  out.emplace_back("outputs", outs);
  out.emplace_back("tol_concurrence", format_exact(s.tol.concurrence));
  out.emplace_back("tol_nbar", format_exact(s.tol.nbar));
  out.emplace_back("tol_leakage", format_exact(s.tol.leakage));
  out.emplace_back("tol_amplitude", format_exact(s.tol.amplitude));
  return out;
}

}  // namespace qdcat::cli
