// Copyright (c) 2026 The fairser authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRSER_FAIRNESS_HPP
#define FAIRSER_FAIRNESS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fairser {

/// One evaluation trial; the unit consumed by every metric here.
struct PredictionRecord {
  std::string id;
  std::string speaker;
  int true_label = 0;
  int pred_label = 0;
};

void save_predictions(std::span<const PredictionRecord> records,
                      const std::string& path);
std::vector<PredictionRecord> load_predictions(const std::string& path);

/// Unweighted average recall: mean of per-class recalls over the classes
/// present in the ground truth of `records` (absent classes are excluded
/// from the average). Throws DataError on empty input or labels >= C.
double uar(std::span<const PredictionRecord> records, int num_classes);

/// Per-speaker utilities u_i = that speaker's UAR over their own records,
/// ordered by speaker id ascending.
struct UtilityVector {
  std::vector<std::pair<std::string, double>> values;

  std::vector<double> utilities() const;
};

UtilityVector uar_per_speaker(std::span<const PredictionRecord> records,
                              int num_classes);

struct UtilityStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (N-1); 0 when N = 1
  double median = 0.0;  // midpoint average for even N
  double max = 0.0;
  double min = 0.0;
};

UtilityStats utility_stats(const std::vector<double>& utilities);

/// Gini coefficient: sum_ij |u_i - u_j| / (2 N^2 mu), via the sorted
/// O(N log N) identity. All utilities must be >= 0; mu = 0 maps to G = 0.
double gini(const std::vector<double>& utilities);

/// Isoelastic social welfare. Atkinson mode is the generalized power mean
/// M_{1-alpha} ((1/N) inside the power); paper_verbatim keeps 1/N outside.
/// Both reduce to the geometric mean at alpha = 1 and to the arithmetic
/// mean at alpha = 0; any zero utility with alpha >= 1 gives W = 0.
/// Evaluated in the log domain for alpha > 1 (sweeps go up to alpha = 100).
enum class IswfMode { Atkinson, PaperVerbatim };

const char* to_string(IswfMode mode);
IswfMode iswf_mode_from_string(std::string_view name);

double iswf(const std::vector<double>& utilities, double alpha, IswfMode mode);

/// alpha grid from 0 to 100: steps of 0.1 up to 1, then 12 points per
/// decade, with 0, 1, 10 and 100 hit exactly.
std::vector<double> default_alpha_grid();

std::vector<std::pair<double, double>> iswf_sweep(
    const std::vector<double>& utilities, const std::vector<double>& alpha_grid,
    IswfMode mode);

/// Percentile bootstrap over records (chunk-level resampling, with
/// replacement). Deterministic for a fixed seed: resample b draws from an
/// independent stream sub-seeded by counter mixing, so resamples may run in
/// parallel and merge in index order.
struct BootstrapInterval {
  double lo = 0.0;
  double hi = 0.0;
};

BootstrapInterval bootstrap_ci(std::span<const PredictionRecord> records,
                               int num_classes, int resamples, double level,
                               std::uint64_t seed, int jobs = 1);

struct ReportOptions {
  int bootstrap_resamples = 1000;  // 0 disables the CI
  double level = 0.95;
  std::uint64_t seed = 0;
  IswfMode mode = IswfMode::Atkinson;
  std::vector<double> alpha_grid;  // empty -> default_alpha_grid()
  int jobs = 1;
};

struct FairnessReport {
  double uar_c = 0.0;
  bool has_ci = false;
  BootstrapInterval ci;
  double level = 0.95;
  int resamples = 0;
  std::uint64_t seed = 0;
  UtilityVector utilities;
  UtilityStats stats;
  double gini = 0.0;
  std::vector<std::pair<double, double>> iswf_curve;
  IswfMode mode = IswfMode::Atkinson;
};

FairnessReport make_report(std::span<const PredictionRecord> records,
                           int num_classes, const ReportOptions& options);

/// JSON document with fixed key names (uar_c, ci_lo, ci_hi, gini, mean,
/// std, median, max, min, utilities, iswf, mode, seed, resamples).
std::string report_to_json(const FairnessReport& report);
void save_report(const FairnessReport& report, const std::string& path);

/// Multi-model sweep CSV: `alpha,w_<name1>,...`, one column per model.
void save_sweep_csv(const std::vector<double>& alpha_grid,
                    const std::vector<std::string>& model_names,
                    const std::vector<std::vector<double>>& welfare_columns,
                    const std::string& path);

}  // namespace fairser

#endif  // FAIRSER_FAIRNESS_HPP
