#include "seizembed/features.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "seizembed/fft.hpp"
#include "seizembed/parallel.hpp"

namespace seizembed {

void BandDef::validate(double sample_rate_hz) const {
  if (!(lo_hz > 0.0 && lo_hz < hi_hz))
    throw std::invalid_argument("band '" + name + "': need 0 < lo < hi");
  if (hi_hz > sample_rate_hz / 2.0)
    throw std::invalid_argument("band '" + name + "': upper edge " + std::to_string(hi_hz) +
                                " Hz exceeds Nyquist " + std::to_string(sample_rate_hz / 2.0) + " Hz");
}

std::vector<BandDef> default_bands() {
  return {{"alpha", 8.0, 12.0}, {"beta", 12.0, 30.0}, {"gamma", 30.0, 100.0}};
}

double line_length(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("line_length: need at least 2 samples");
  double sum = 0.0;
  for (std::size_t t = 1; t < x.size(); ++t) sum += std::abs(x[t] - x[t - 1]);
  return sum;
}

std::vector<double> band_powers(std::span<const double> x, const std::vector<BandDef>& bands,
                                double sample_rate_hz) {
  const std::size_t n = x.size();
  if (n != static_cast<std::size_t>(std::llround(sample_rate_hz)) || n < 2)
    throw std::invalid_argument("band_power: epoch length must equal round(sample_rate_hz)");
  for (const auto& b : bands) b.validate(sample_rate_hz);

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = x[i] - mean;

  const auto spectrum = dft_real(centered.data(), n);
  const double t2 = static_cast<double>(n) * static_cast<double>(n);
  const double bin_hz = sample_rate_hz / static_cast<double>(n);
  const std::size_t nyquist = n / 2;

  std::vector<double> out(bands.size(), 0.0);
  for (std::size_t m = 1; m <= nyquist; ++m) {
    const double f = static_cast<double>(m) * bin_hz;
    const double mag2 = std::norm(spectrum[m]) / t2;
    const double scale = (n % 2 == 0 && m == nyquist) ? 1.0 : 2.0;  // one-sided
    for (std::size_t b = 0; b < bands.size(); ++b)
      if (f >= bands[b].lo_hz && f < bands[b].hi_hz) out[b] += scale * mag2;
  }
  return out;
}

double band_power(std::span<const double> x, const BandDef& band, double sample_rate_hz) {
  return band_powers(x, {band}, sample_rate_hz)[0];
}

FeatureMatrix extract_features(const EpochSet& epochs, const std::vector<BandDef>& bands,
                               int n_threads) {
  if (epochs.epochs.empty()) throw std::invalid_argument("extract_features: empty epoch set");
  for (const auto& b : bands) b.validate(epochs.sample_rate_hz);

  const std::size_t n_channels = epochs.channel_names.size();
  const std::size_t per_channel = 1 + bands.size();
  const std::size_t k = n_channels * per_channel;
  const std::size_t n = epochs.epochs.size();

  FeatureMatrix out;
  out.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  out.feature_names.reserve(k);
  for (const auto& ch : epochs.channel_names) {
    out.feature_names.push_back(ch + ":LL");
    for (const auto& b : bands) out.feature_names.push_back(ch + ":" + b.name);
  }
  {
    std::set<std::string> unique(out.feature_names.begin(), out.feature_names.end());
    if (unique.size() != out.feature_names.size())
      throw std::invalid_argument("extract_features: duplicate feature names");
  }
  out.labels.reserve(n);
  out.event_ids.reserve(n);
  for (const auto& e : epochs.epochs) {
    out.labels.push_back(e.label);
    out.event_ids.push_back(e.event_id);
  }

  auto process = [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const Epoch& ep = epochs.epochs[j];
      if (static_cast<std::size_t>(ep.samples.rows()) != n_channels)
        throw std::invalid_argument("extract_features: epoch channel count mismatch at row " +
                                    std::to_string(j));
      for (std::size_t ch = 0; ch < n_channels; ++ch) {
        // MatrixXd is column-major, so copy the channel out once
        const Eigen::VectorXd sig = ep.samples.row(static_cast<Eigen::Index>(ch));
        const std::span<const double> x(sig.data(), static_cast<std::size_t>(sig.size()));
        try {
          const double ll = line_length(x);
          const auto bp = band_powers(x, bands, epochs.sample_rate_hz);
          out.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(ch * per_channel)) = ll;
          for (std::size_t b = 0; b < bp.size(); ++b)
            out.values(static_cast<Eigen::Index>(j),
                       static_cast<Eigen::Index>(ch * per_channel + 1 + b)) = bp[b];
        } catch (const std::exception& ex) {
          throw std::runtime_error("extract_features: epoch " + std::to_string(j) + " (" +
                                   ep.record_id + " t=" + std::to_string(ep.start_s) +
                                   "), channel '" + epochs.channel_names[ch] + "': " + ex.what());
        }
      }
    }
  };

  parallel_chunks(n, n_threads, process);

  if (!out.values.allFinite())
    throw std::runtime_error("extract_features: non-finite feature value produced");
  return out;
}

}  // namespace seizembed
