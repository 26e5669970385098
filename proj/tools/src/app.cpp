#include "app.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "presets.hpp"
#include "sweep.hpp"
#include "verify.hpp"

namespace qdcat::cli {

namespace {

std::string quoted(const std::string& s) {
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') q += '\\';
    q += (ch == '\n' || ch == '\r') ? ' ' : ch;
  }
  return q + '"';
}

// One machine-parsable line per failure: `qdcat: error kind=... message="..."`.
int report(std::ostream& err, int code, const std::string& kind, const std::string& message,
           const std::string& extra = {}) {
  err << "qdcat: error code=" << code << " kind=" << kind;
  if (!extra.empty()) err << ' ' << extra;
  err << " message=" << quoted(message) << '\n';
  return code;
}

int code_for_cause(const std::string& cause) {
  if (cause == "invalid_argument" || cause == "regime") return kInvalidScenario;
  if (cause == "truncation") return kResourceExceeded;
  return kNumericalFailure;
}

struct ScenarioFlags {
  std::string file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App* cmd) {
    cmd->add_option("--scenario", file, "key=value scenario file")->check(CLI::ExistingFile);
    for (const auto& key : scenario_keys()) {
      options[key] = cmd->add_option("--" + key, values[key], "overrides '" + key + "' in the file");
    }
  }

  Scenario resolve() const {
    KeyValues kv;
    if (!file.empty()) kv = read_scenario_file(file);
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) kv[key] = values.at(key);
    }
    Scenario s = apply_values(Scenario{}, kv);
    s.validate();
    return s;
  }
};

bool write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exciton entanglement from cat-state cavity fields: closed forms and Fock-space oracle", "qdcat"};
  app.require_subcommand(1);

  ScenarioFlags sweep_flags;
  std::string sweep_output;
  auto* sweep = app.add_subcommand("sweep", "tabulate observables over a time grid as CSV");
  sweep_flags.attach(sweep);
  sweep->add_option("-o,--output", sweep_output, "CSV destination (default stdout)");

  ScenarioFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "compare closed forms with the numerical oracle");
  verify_flags.attach(verify);

  std::string preset_name;
  std::string preset_dir;
  int preset_threads = 0;
  bool preset_oracle = false;
  auto* preset = app.add_subcommand("preset", "write the CSV data behind one figure");
  preset->add_option("name", preset_name, "fig1 fig2 fig3 fig4 fig5 conclusion")->required();
  preset->add_option("--output-dir", preset_dir, "defaults to $QDCAT_OUTPUT_DIR, then .");
  preset->add_option("--threads", preset_threads, "worker count, 0 for all cores")->check(CLI::NonNegativeNumber);
  preset->add_flag("--oracle", preset_oracle, "add oracle columns (slow for |alpha| = 5)");

  auto* list = app.add_subcommand("presets", "list the built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return report(err, kInvalidScenario, "usage", e.what());
  }

  try {
    if (*list) {
      for (const auto& p : presets()) out << p.name << "  " << p.description << '\n';
      return kOk;
    }
    if (*sweep) {
      const Scenario s = sweep_flags.resolve();
      const SweepTable table = run_sweep(s);
      std::ostringstream csv;
      write_csv(csv, s, table);
      if (!write_text(sweep_output, csv.str(), out)) {
        return report(err, kNumericalFailure, "io", "cannot write '" + sweep_output + "'");
      }
      return kOk;
    }
    if (*verify) {
      const Scenario s = verify_flags.resolve();
      const VerifyReport r = run_verify(s);
      write_report(out, s, r);
      return r.pass() ? kOk : kVerifyFailed;
    }
    if (*preset) {
      run_preset(find_preset(preset_name), preset_output_dir(preset_dir), preset_threads,
                 preset_oracle, out);
      return kOk;
    }
  } catch (const ScenarioError& e) {
    return report(err, kInvalidScenario, "invalid_scenario", e.what(),
                  e.key().empty() ? "" : "key=" + e.key());
  } catch (const TruncationError& e) {
    return report(err, kResourceExceeded, "resource", e.what(),
                  "required_cutoff=" + std::to_string(e.required_cutoff()));
  } catch (const PointError& e) {
    return report(err, code_for_cause(e.cause()), e.cause(), e.what(),
                  "gt_over_pi=" + format_value(e.gt_over_pi()));
  } catch (const InvalidArgument& e) {
    return report(err, kInvalidScenario, "invalid_scenario", e.what());
  } catch (const RegimeError& e) {
    return report(err, kInvalidScenario, "regime", e.what());
  } catch (const Error& e) {
    return report(err, kNumericalFailure, "numerical", e.what());
  } catch (const std::exception& e) {
    return report(err, kNumericalFailure, "internal", e.what());
  }
  return report(err, kInvalidScenario, "usage", "no subcommand");
}

}  // namespace qdcat::cli
