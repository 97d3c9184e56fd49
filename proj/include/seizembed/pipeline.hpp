#pragma once

// End-to-end orchestration behind the `run` command: dataset loading,
// per-patient split -> features -> transform -> fit -> evaluate, and the
// report/ROC/feature outputs. Patients run in a worker pool; every random
// draw is derived from per-patient seeds so results are independent of
// scheduling and thread count.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seizembed/dataset.hpp"
#include "seizembed/epoching.hpp"
#include "seizembed/evaluation.hpp"
#include "seizembed/features.hpp"

namespace seizembed {

enum class EmbeddedMode { off, on, both };

struct RunConfig {
  std::string data_dir;
  std::string out_dir = "out";
  std::vector<std::string> patients;  // empty = all in the dataset
  std::vector<std::string> channels;  // empty = per-patient intersection
  std::vector<ModelKind> models = {ModelKind::LR};
  EmbeddedMode embedded = EmbeddedMode::both;

  // split
  SplitKind split_kind = SplitKind::chronological_fraction;
  bool split_by_record_auto = false;  // first half of each patient's records -> train
  double fraction = 0.5;
  std::vector<std::string> train_records, test_records;

  // transform
  int n_quantiles = 50;
  int embed_dim = 20;
  double sigma = 1.0;

  std::uint64_t seed = 1;
  std::optional<double> threshold;  // default: 0.5 probabilistic, 0 margin
  std::optional<long> max_train_rows;
  int threads = 1;
  bool write_svg = false;
  bool save_models = false;

  void validate() const;
};

// `key = value` lines, '#' comments, whitespace-separated array values.
std::map<std::string, std::string> parse_kv_text(const std::string& text,
                                                 const std::vector<std::string>& allowed_keys);

RunConfig parse_run_config(const std::string& text);
RunConfig read_run_config_file(const std::string& path);

SynthDatasetConfig parse_synth_config(const std::string& text);
SynthDatasetConfig read_synth_config_file(const std::string& path);

// Canonical one-line-per-setting rendering used for the config hash.
std::string canonical_config_text(const RunConfig& config);

struct RunResult {
  EvalReport report;
  int n_patients_ok = 0;
  int n_patients_failed = 0;
  std::vector<std::string> diagnostics;  // one line per skipped patient
  std::vector<std::string> written_files;
};

RunResult run_all(const RunConfig& config);

// Single-patient pipeline (exposed for tests and the python module).
struct PatientOutcome {
  std::vector<EvalRow> rows;
  std::vector<std::pair<std::string, RocCurve>> roc_curves;  // "<MODEL>-raw|embedded"
  FeatureMatrix features;  // all labeled epochs in record order (shared dump)
  std::string split_policy;
};

PatientOutcome run_patient(const DatasetPatient& patient, const RunConfig& config);

}  // namespace seizembed
