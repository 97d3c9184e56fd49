#include "seizembed/signal.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "seizembed/rng.hpp"

namespace seizembed {

void EegRecording::validate() const {
  if (sample_rate_hz <= 0.0) throw std::invalid_argument("recording: sample_rate_hz must be > 0");
  if (samples.cols() <= 0) throw std::invalid_argument("recording: no samples");
  if (static_cast<Eigen::Index>(channel_names.size()) != samples.rows())
    throw std::invalid_argument("recording: channel_names size != channel dimension");
  std::set<std::string> seen;
  for (const auto& name : channel_names) {
    if (!seen.insert(name).second)
      throw std::invalid_argument("recording: duplicate channel name '" + name + "'");
  }
}

void SeizureAnnotation::validate(double duration_s) const {
  double prev_end = -1.0;
  for (const auto& [start, end] : intervals) {
    if (!(start >= 0.0 && start < end))
      throw std::invalid_argument("annotation: interval must satisfy 0 <= start < end");
    if (duration_s >= 0.0 && end > duration_s)
      throw std::invalid_argument("annotation: interval end exceeds recording duration");
    if (start < prev_end)
      throw std::invalid_argument("annotation: intervals must be sorted and non-overlapping");
    prev_end = end;
  }
}

void SynthConfig::validate() const {
  if (n_channels < 1) throw std::invalid_argument("synth: n_channels must be >= 1");
  if (sample_rate_hz <= 0.0) throw std::invalid_argument("synth: sample_rate_hz must be > 0");
  if (duration_s <= 0.0) throw std::invalid_argument("synth: duration_s must be > 0");
  SeizureAnnotation tmp{"", seizure_intervals};
  tmp.validate(duration_s);
}

std::pair<EegRecording, SeizureAnnotation> synth_recording(const SynthConfig& config,
                                                           const std::string& record_id) {
  config.validate();
  const auto n = static_cast<Eigen::Index>(std::llround(config.duration_s * config.sample_rate_hz));
  if (n <= 0) throw std::invalid_argument("synth: empty recording");

  EegRecording rec;
  rec.record_id = record_id;
  rec.sample_rate_hz = config.sample_rate_hz;
  rec.samples.resize(config.n_channels, n);
  rec.channel_names.reserve(config.n_channels);

  constexpr double kRho = 0.95;  // AR(1) background color
  for (int ch = 0; ch < config.n_channels; ++ch) {
    rec.channel_names.push_back("CH" + std::to_string(ch + 1));
    Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(ch)));
    double acc = 0.0;
    double sumsq = 0.0;
    auto row = rec.samples.row(ch);
    for (Eigen::Index i = 0; i < n; ++i) {
      acc = kRho * acc + rng.normal();
      row(i) = acc;
      sumsq += acc * acc;
    }
    const double rms = std::sqrt(sumsq / static_cast<double>(n));
    row *= (rms > 0.0 ? config.background_amplitude_uv / rms : 0.0);
  }

  const bool high_amp = config.seizure_mode == SeizureMode::high_amp_low_freq;
  const double freq_hz = high_amp ? 3.0 : 40.0;
  // sinusoid amplitude such that its RMS is the requested multiple of background RMS
  const double amp = (high_amp ? 5.0 : 0.5) * config.background_amplitude_uv * std::sqrt(2.0);
  for (const auto& [start, end] : config.seizure_intervals) {
    const auto i0 = static_cast<Eigen::Index>(std::ceil(start * config.sample_rate_hz));
    const auto i1 = std::min<Eigen::Index>(n, static_cast<Eigen::Index>(std::ceil(end * config.sample_rate_hz)));
    for (Eigen::Index i = i0; i < i1; ++i) {
      const double t = static_cast<double>(i) / config.sample_rate_hz - start;
      const double v = amp * std::sin(2.0 * M_PI * freq_hz * t);
      for (int ch = 0; ch < config.n_channels; ++ch) rec.samples(ch, i) += v;
    }
  }

  SeizureAnnotation ann{record_id, config.seizure_intervals};
  rec.validate();
  ann.validate(rec.duration_s());
  return {std::move(rec), std::move(ann)};
}

EegRecording select_channels(const EegRecording& rec, const std::vector<std::string>& names) {
  EegRecording out;
  out.record_id = rec.record_id;
  out.sample_rate_hz = rec.sample_rate_hz;
  out.channel_names = names;
  out.samples.resize(static_cast<Eigen::Index>(names.size()), rec.samples.cols());
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = std::find(rec.channel_names.begin(), rec.channel_names.end(), names[i]);
    if (it == rec.channel_names.end())
      throw std::invalid_argument("select_channels: channel '" + names[i] + "' not present in " + rec.record_id);
    out.samples.row(static_cast<Eigen::Index>(i)) =
        rec.samples.row(it - rec.channel_names.begin());
  }
  out.validate();
  return out;
}

}  // namespace seizembed
