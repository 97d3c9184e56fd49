#pragma once

// Dataset directory handling: <dir>/<patient>/<record>.edf plus
// <dir>/<patient>/<patient>-summary.txt (CHB-MIT layout), and the synthetic
// dataset generator behind the `synth` command.

#include <cstdint>
#include <string>
#include <vector>

#include "seizembed/edf.hpp"
#include "seizembed/signal.hpp"

namespace seizembed {

struct SynthDatasetConfig {
  int n_patients = 6;
  int records_per_patient = 2;
  int n_channels = 18;
  double sample_rate_hz = 256.0;
  double record_duration_s = 300.0;
  int min_events = 2;  // seizure events per record
  int max_events = 3;
  double event_duration_s = 21.0;
  SeizureMode mode = SeizureMode::high_amp_low_freq;
  double background_amplitude_uv = 30.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct DatasetRecord {
  std::string record_id;
  std::string edf_path;
  SeizureAnnotation annotation;
};

struct DatasetPatient {
  std::string patient_id;
  std::vector<DatasetRecord> records;  // sorted by record_id
};

// Deterministic by seed: same config writes byte-identical files.
std::vector<DatasetPatient> write_synth_dataset(const SynthDatasetConfig& config,
                                                const std::string& out_dir);

// Scan a dataset directory. Patients are subdirectories carrying a summary
// file; EDFs without a summary entry get an empty annotation.
std::vector<DatasetPatient> load_dataset(const std::string& dir);

// Channel names present in every recording, in first-recording order.
std::vector<std::string> common_channels(const std::vector<EegRecording>& recordings);

}  // namespace seizembed
