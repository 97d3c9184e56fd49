#pragma once

// The four per-channel biomarkers: line-length and alpha/beta/gamma band
// powers from a single-segment, mean-removed, rectangular-window
// periodogram (one-sided scaling).

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "seizembed/epoching.hpp"

namespace seizembed {

struct BandDef {
  std::string name;
  double lo_hz = 0.0;
  double hi_hz = 0.0;

  void validate(double sample_rate_hz) const;  // 0 < lo < hi <= fs/2
};

// alpha 8-12, beta 12-30, gamma 30-100 Hz; edges are [lo, hi) so adjacent
// bands never share a bin.
std::vector<BandDef> default_bands();

struct FeatureMatrix {
  Eigen::MatrixXd values;                  // n_epochs x k
  std::vector<std::string> feature_names;  // "<channel>:<LL|alpha|beta|gamma>"
  std::vector<int> labels;
  std::vector<int> event_ids;              // -1 = none

  std::size_t rows() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }
};

// Sum of absolute first differences. Requires >= 2 samples.
double line_length(std::span<const double> x);

// One-sided band power: mean removal, DFT, sum of |X[m]|^2 / T^2 over bins
// with lo <= m*(fs/T) < hi, doubling non-DC non-Nyquist bins. Requires the
// epoch length to equal round(fs) (1-second epochs).
double band_power(std::span<const double> x, const BandDef& band, double sample_rate_hz);

// All requested band powers from one DFT of the segment.
std::vector<double> band_powers(std::span<const double> x, const std::vector<BandDef>& bands,
                                double sample_rate_hz);

// Row j = concat over channels of [LL, P_alpha, P_beta, P_gamma] for epoch j.
// Rows keep epoch order; labels/event_ids are carried through. n_threads > 1
// parallelizes over epochs with order-preserving chunks.
FeatureMatrix extract_features(const EpochSet& epochs,
                               const std::vector<BandDef>& bands = default_bands(),
                               int n_threads = 1);

}  // namespace seizembed
