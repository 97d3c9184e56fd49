#pragma once

// Quantile preprocessing + periodic feature embedding. Each scalar feature
// x_i is rank-normalized to [0, 1] and lifted to d coordinates
//   z_i = [cos(2 pi c_1 x_i), sin(2 pi c_1 x_i), ..., cos(2 pi c_{d/2} x_i), sin(...)]
// with frozen per-feature coefficients c ~ N(0, sigma^2); the z_i blocks are
// concatenated into one k*d vector.

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "seizembed/features.hpp"

namespace seizembed {

// Per-feature quantile landmarks; landmark j sits at probability j/(Q-1).
struct QuantileMap {
  Eigen::MatrixXd landmarks;  // k x Q, each row non-decreasing
  long fitted_on = 0;         // training rows used for the fit

  int n_features() const { return static_cast<int>(landmarks.rows()); }
  int n_quantiles() const { return static_cast<int>(landmarks.cols()); }
};

// Frozen embedding coefficients, one row of d/2 values per feature.
struct PeriodicEmbedder {
  Eigen::MatrixXd coeffs;  // k x d/2
  int d = 0;
  double sigma = 1.0;
  std::uint64_t seed = 0;

  int n_features() const { return static_cast<int>(coeffs.rows()); }
  long n_parameters() const { return static_cast<long>(coeffs.size()); }
  int output_dim() const { return n_features() * d; }
};

struct EmbeddedMatrix {
  Eigen::MatrixXd values;  // n x k*d, every entry in [-1, 1]
  int k = 0;
  int d = 0;
  std::vector<int> labels;
  std::vector<int> event_ids;

  // column pair of (feature i, coefficient l): pairs are interleaved
  // [cos, sin] inside each feature's d-wide block
  std::pair<int, int> col_pair(int feature, int coeff) const {
    const int base = feature * d + 2 * coeff;
    return {base, base + 1};
  }
};

// Empirical quantiles of each training column at probabilities j/(Q-1),
// linearly interpolated between order statistics.
QuantileMap fit_quantile(const FeatureMatrix& train, int n_quantiles = 50);

// Piecewise-linear map through the landmarks onto [0, 1]; values outside the
// training range clamp, values on a landmark plateau map to its probability
// midpoint (so an all-constant feature maps to 0.5).
FeatureMatrix apply_quantile(const QuantileMap& map, const FeatureMatrix& X);

double apply_quantile_scalar(const QuantileMap& map, int feature, double value);

// Coefficients drawn from seeded N(0, sigma^2); frozen (never trained).
PeriodicEmbedder make_embedder(int k, int d = 20, double sigma = 1.0, std::uint64_t seed = 0);

// Embed one k-vector into k*d periodic coordinates.
Eigen::VectorXd embed(const PeriodicEmbedder& e, const Eigen::VectorXd& x);

// Row-wise embedding of a whole matrix (columns already in [0, 1] from the
// quantile map; any finite input is legal).
EmbeddedMatrix embed_matrix(const PeriodicEmbedder& e, const FeatureMatrix& X);

// apply_quantile then embed, carrying labels/event_ids through.
EmbeddedMatrix transform_pipeline(const QuantileMap& map, const PeriodicEmbedder& e,
                                  const FeatureMatrix& X);

}  // namespace seizembed
