#ifndef RESOLAB_HARNESS_HPP
#define RESOLAB_HARNESS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resolab/finder.hpp"
#include "resolab/model.hpp"

namespace resolab {

enum class SweepMode { thm1_check, thm2_check, identities_only, decoupled_oracle };

const char* mode_name(SweepMode m);
SweepMode mode_from_name(const std::string& name);  // ConfigError on unknown

struct SweepConfig {
  ModelParams model;
  double theta = 0.3;
  double x_inf = 1.0;
  double l_left = 6.0;
  double l_right = 0.0;  // 0 = sized automatically per h
  std::vector<double> h_values;  // strictly decreasing
  double c0 = 1.0;
  SweepMode mode = SweepMode::thm2_check;
  std::string out_dir = "out";
  int jobs = 0;  // 0 = hardware concurrency
  bool seedless = false;
  bool completeness_check = true;
  bool emit_timings = false;
  FinderOptions finder;

  void check() const;  // ConfigError on violations
  static SweepConfig defaults();
  static SweepConfig from_json_file(const std::string& path);
  std::string to_json() const;
};

struct ResonanceRecord {
  double h;
  int k;
  std::optional<std::complex<double>> e_num, e_thm1, e_thm2, e_red;
  double abs_gap_re, abs_gap_im, ratio_im;  // NaN when undefined
  std::string note;
};

struct SlopeFit {
  double slope;
  double r2;
  int n_used;
};

/// Least-squares slope of log(err) vs log(h); needs >= 4 pairs with err > 0.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& pairs);

struct NamedCheck {
  std::string name;
  double value;
  double bound;
  bool pass;
};

struct StageTiming {
  std::string stage;
  double wall_s;
};

struct SweepReport {
  SweepConfig config;
  std::vector<ResonanceRecord> records;
  std::map<std::string, SlopeFit> slopes;
  std::vector<NamedCheck> identity_checks;
  std::vector<StageTiming> timings;
  bool pass = false;
};

/// Run the configured mode pipeline.  Deterministic for a fixed config,
/// including under parallel execution.
SweepReport run(const SweepConfig& config);

/// Write resonances.csv, report.json and the diagnostic SVG plots.
void emit(const SweepReport& report, const std::string& dir);

}  // namespace resolab

#endif
