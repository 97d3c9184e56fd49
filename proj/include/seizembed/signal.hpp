#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace seizembed {

// Multichannel sampled EEG in physical units (microvolt), channel-major.
struct EegRecording {
  std::string record_id;
  std::vector<std::string> channel_names;
  double sample_rate_hz = 0.0;
  Eigen::MatrixXd samples;  // channels x total_samples

  std::size_t n_channels() const { return static_cast<std::size_t>(samples.rows()); }
  std::size_t n_samples() const { return static_cast<std::size_t>(samples.cols()); }
  double duration_s() const { return static_cast<double>(samples.cols()) / sample_rate_hz; }

  // Throws std::invalid_argument if any type invariant is broken.
  void validate() const;
};

// Expert seizure annotation for one record: sorted, non-overlapping intervals.
struct SeizureAnnotation {
  std::string record_id;
  std::vector<std::pair<double, double>> intervals;  // (start_s, end_s)

  void validate(double duration_s = -1.0) const;
};

enum class SeizureMode { high_amp_low_freq, low_amp_high_freq };

struct SynthConfig {
  int n_channels = 18;
  double sample_rate_hz = 256.0;
  double duration_s = 60.0;
  std::vector<std::pair<double, double>> seizure_intervals;
  SeizureMode seizure_mode = SeizureMode::high_amp_low_freq;
  double background_amplitude_uv = 30.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Deterministic synthetic EEG: AR(1) Gaussian background (rho = 0.95),
// normalized per channel to exactly background_amplitude_uv RMS, plus an
// additive sinusoid inside each seizure interval (3 Hz at 5x RMS for
// high_amp_low_freq, 40 Hz at 0.5x RMS for low_amp_high_freq).
std::pair<EegRecording, SeizureAnnotation> synth_recording(const SynthConfig& config,
                                                           const std::string& record_id = "synth");

// Keep only the named channels, in the given order. Throws if one is missing.
EegRecording select_channels(const EegRecording& rec, const std::vector<std::string>& names);

}  // namespace seizembed
