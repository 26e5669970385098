#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "scenario.hpp"

namespace qdcat::cli {

struct PresetRun {
  std::string file;
  Scenario scenario;
};

struct Preset {
  std::string name;
  std::string description;
  std::vector<PresetRun> runs;
};

/// fig1 ... fig5 and conclusion.
const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name);

/// Reported peak values of the damped odd-cat concurrence and our numbers.
struct PeakCheck {
  double abs_alpha;
  int index;
  double gt_over_pi;
  double closed_form;
  double ode_oracle;
  double reported;
  bool reproduced;  // |closed_form - reported| <= 0.02
};
std::vector<PeakCheck> conclusion_peaks();

/// Output directory: explicit value, else $QDCAT_OUTPUT_DIR, else ".".
std::filesystem::path preset_output_dir(const std::string& explicit_dir);

/// Writes one CSV per run (plus conclusion_peaks.csv for `conclusion`) and
/// lists the files on `log`. Files are only written after every run
/// succeeded.
std::vector<std::filesystem::path> run_preset(const Preset& preset, const std::filesystem::path& dir,
                                              int threads, bool oracle, std::ostream& log);

}  // namespace qdcat::cli
