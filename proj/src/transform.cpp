#include "seizembed/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seizembed/rng.hpp"

namespace seizembed {

QuantileMap fit_quantile(const FeatureMatrix& train, int n_quantiles) {
  if (train.rows() == 0) throw std::invalid_argument("fit_quantile: empty training matrix");
  if (n_quantiles < 2) throw std::invalid_argument("fit_quantile: need Q >= 2");
  if (!train.values.allFinite())
    throw std::invalid_argument("fit_quantile: non-finite feature values");

  const auto n = static_cast<std::size_t>(train.rows());
  const int k = static_cast<int>(train.cols());
  QuantileMap map;
  map.fitted_on = static_cast<long>(n);
  map.landmarks.resize(k, n_quantiles);

  std::vector<double> col(n);
  for (int i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < n; ++r) col[r] = train.values(static_cast<Eigen::Index>(r), i);
    std::sort(col.begin(), col.end());
    for (int j = 0; j < n_quantiles; ++j) {
      // linear interpolation between order statistics at position p*(n-1)
      const double p = static_cast<double>(j) / static_cast<double>(n_quantiles - 1);
      const double pos = p * static_cast<double>(n - 1);
      const auto lo = static_cast<std::size_t>(std::floor(pos));
      const double frac = pos - static_cast<double>(lo);
      const double v = (lo + 1 < n) ? col[lo] + frac * (col[lo + 1] - col[lo]) : col[lo];
      map.landmarks(i, j) = v;
    }
  }
  return map;
}

double apply_quantile_scalar(const QuantileMap& map, int feature, double value) {
  const int Q = map.n_quantiles();
  const auto row = map.landmarks.row(feature);
  if (value <= row(0)) {
    // exact hit on a leading plateau maps to its probability midpoint
    if (value == row(0)) {
      int hi = 0;
      while (hi + 1 < Q && row(hi + 1) == value) ++hi;
      return (0.0 + static_cast<double>(hi)) / 2.0 / static_cast<double>(Q - 1);
    }
    return 0.0;
  }
  if (value >= row(Q - 1)) {
    if (value == row(Q - 1)) {
      int lo = Q - 1;
      while (lo - 1 >= 0 && row(lo - 1) == value) --lo;
      return (static_cast<double>(lo) + static_cast<double>(Q - 1)) / 2.0 /
             static_cast<double>(Q - 1);
    }
    return 1.0;
  }

  // first landmark >= value
  const double* begin = &row(0);
  const double* it = std::lower_bound(begin, begin + Q, value);
  const int idx = static_cast<int>(it - begin);
  if (row(idx) == value) {
    int hi = idx;
    while (hi + 1 < Q && row(hi + 1) == value) ++hi;
    return (static_cast<double>(idx) + static_cast<double>(hi)) / 2.0 /
           static_cast<double>(Q - 1);
  }
  const double lo_v = row(idx - 1), hi_v = row(idx);
  const double t = (value - lo_v) / (hi_v - lo_v);
  return (static_cast<double>(idx - 1) + t) / static_cast<double>(Q - 1);
}

FeatureMatrix apply_quantile(const QuantileMap& map, const FeatureMatrix& X) {
  if (static_cast<int>(X.cols()) != map.n_features())
    throw std::invalid_argument("apply_quantile: feature count mismatch");
  FeatureMatrix out = X;
  for (int i = 0; i < map.n_features(); ++i)
    for (Eigen::Index r = 0; r < out.values.rows(); ++r)
      out.values(r, i) = apply_quantile_scalar(map, i, X.values(r, i));
  return out;
}

PeriodicEmbedder make_embedder(int k, int d, double sigma, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("make_embedder: need k >= 1");
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("make_embedder: d must be even and >= 2");
  if (!(sigma > 0.0)) throw std::invalid_argument("make_embedder: sigma must be positive");

  PeriodicEmbedder e;
  e.d = d;
  e.sigma = sigma;
  e.seed = seed;
  e.coeffs.resize(k, d / 2);
  Rng rng(seed);
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < d / 2; ++l) e.coeffs(i, l) = sigma * rng.normal();
  return e;
}

Eigen::VectorXd embed(const PeriodicEmbedder& e, const Eigen::VectorXd& x) {
  if (x.size() != e.n_features())
    throw std::invalid_argument("embed: input length != embedder feature count");
  if (!x.allFinite()) throw std::invalid_argument("embed: non-finite input");

  const int half = e.d / 2;
  Eigen::VectorXd z(e.output_dim());
  for (int i = 0; i < e.n_features(); ++i) {
    const double xi = x(i);
    for (int l = 0; l < half; ++l) {
      const double a = 2.0 * M_PI * e.coeffs(i, l) * xi;
      z(i * e.d + 2 * l) = std::cos(a);
      z(i * e.d + 2 * l + 1) = std::sin(a);
    }
  }
  return z;
}

EmbeddedMatrix embed_matrix(const PeriodicEmbedder& e, const FeatureMatrix& X) {
  if (static_cast<int>(X.cols()) != e.n_features())
    throw std::invalid_argument("embed: feature count mismatch");
  if (!X.values.allFinite()) throw std::invalid_argument("embed: non-finite input");

  EmbeddedMatrix out;
  out.k = e.n_features();
  out.d = e.d;
  out.labels = X.labels;
  out.event_ids = X.event_ids;
  out.values.resize(X.values.rows(), e.output_dim());
  const int half = e.d / 2;
  for (Eigen::Index r = 0; r < X.values.rows(); ++r) {
    for (int i = 0; i < out.k; ++i) {
      const double xi = X.values(r, i);
      for (int l = 0; l < half; ++l) {
        const double a = 2.0 * M_PI * e.coeffs(i, l) * xi;
        out.values(r, i * e.d + 2 * l) = std::cos(a);
        out.values(r, i * e.d + 2 * l + 1) = std::sin(a);
      }
    }
  }
  return out;
}

EmbeddedMatrix transform_pipeline(const QuantileMap& map, const PeriodicEmbedder& e,
                                  const FeatureMatrix& X) {
  if (map.n_features() != e.n_features())
    throw std::invalid_argument("transform_pipeline: quantile map and embedder disagree on k");
  return embed_matrix(e, apply_quantile(map, X));
}

}  // namespace seizembed
