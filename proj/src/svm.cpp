#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "seizembed/classifiers.hpp"

namespace seizembed {

namespace {

// Kernel rows on demand with a full cache when the training set is small
// enough; above the cap rows are recomputed per request through a ring of
// recently used rows.
class KernelCache {
 public:
  KernelCache(const Eigen::MatrixXd& X, double gamma, double coef0, int degree)
      : X_(X), gamma_(gamma), coef0_(coef0), degree_(degree), n_(X.rows()) {
    const Eigen::Index full_cap = 3000;
    full_ = n_ <= full_cap;
    if (full_) {
      gram_ = (gamma_ * (X_ * X_.transpose()).array() + coef0_).pow(degree_).matrix();
    } else {
      slots_.assign(kSlots, {-1, Eigen::VectorXd()});
    }
  }

  Eigen::VectorXd row(Eigen::Index i) {
    if (full_) return gram_.row(i).transpose();
    auto& slot = slots_[static_cast<std::size_t>(i) % kSlots];
    if (slot.first != i) {
      slot.second = (gamma_ * (X_ * X_.row(i).transpose()).array() + coef0_).pow(degree_).matrix();
      slot.first = i;
    }
    return slot.second;
  }

  double diag(Eigen::Index i) const {
    return std::pow(gamma_ * X_.row(i).squaredNorm() + coef0_, degree_);
  }

 private:
  static constexpr std::size_t kSlots = 64;
  const Eigen::MatrixXd& X_;
  double gamma_, coef0_;
  int degree_;
  Eigen::Index n_;
  bool full_ = false;
  Eigen::MatrixXd gram_;
  std::vector<std::pair<Eigen::Index, Eigen::VectorXd>> slots_;
};

}  // namespace

SvmModel fit_svm_impl(const Eigen::MatrixXd& X, const std::vector<int>& y_raw,
                      const TrainConfig& cfg, TrainMeta& meta) {
  const Eigen::Index n = X.rows();
  const double C = cfg.svm_C;

  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = y_raw[static_cast<std::size_t>(i)] == 1 ? 1.0 : -1.0;

  double gamma = cfg.svm_gamma;
  if (gamma <= 0.0) {
    // 1 / (input_dim * var(X)), variance over all entries
    const double mean = X.mean();
    const double var = (X.array() - mean).square().sum() / static_cast<double>(X.size());
    gamma = var > 0.0 ? 1.0 / (static_cast<double>(X.cols()) * var)
                      : 1.0 / static_cast<double>(X.cols());
  }

  KernelCache cache(X, gamma, cfg.svm_coef0, cfg.svm_degree);

  // minimize 1/2 a^T Q a - e^T a,  0 <= a <= C,  Q_ij = y_i y_j K_ij
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);
  Eigen::VectorXd kdiag(n);
  for (Eigen::Index i = 0; i < n; ++i) kdiag(i) = cache.diag(i);

  const long max_iter = cfg.svm_max_iter > 0
                            ? cfg.svm_max_iter
                            : std::max<long>(1000000L, 300L * static_cast<long>(n));
  constexpr double kTau = 1e-12;

  double violation = std::numeric_limits<double>::infinity();
  long iter = 0;
  for (; iter < max_iter; ++iter) {
    // maximal violating pair: i from I_up, j from I_low
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    Eigen::Index i = -1, j = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      const double yg = -y(t) * grad(t);
      const bool in_up = (y(t) > 0 && alpha(t) < C) || (y(t) < 0 && alpha(t) > 0);
      const bool in_low = (y(t) > 0 && alpha(t) > 0) || (y(t) < 0 && alpha(t) < C);
      if (in_up && yg > m_up) {
        m_up = yg;
        i = t;
      }
      if (in_low && yg < m_low) {
        m_low = yg;
        j = t;
      }
    }
    violation = m_up - m_low;
    if (violation <= cfg.svm_tol || i < 0 || j < 0) break;

    const Eigen::VectorXd ki = cache.row(i);
    const Eigen::VectorXd kj = cache.row(j);

    // analytic step along the equality constraint (alpha_i += y_i t,
    // alpha_j -= y_j t); the curvature is K_ii + K_jj - 2 K_ij either way
    const double quad = std::max(kdiag(i) + kdiag(j) - 2.0 * ki(j), kTau);
    const double delta = (m_up - m_low) / quad;

    const double old_ai = alpha(i), old_aj = alpha(j);
    double ai = old_ai + y(i) * delta;
    double aj = old_aj - y(j) * delta;

    // clip to the box, preserving y_i a_i + y_j a_j
    const double sum = y(i) * old_ai + y(j) * old_aj;
    ai = std::min(std::max(ai, 0.0), C);
    aj = y(j) * (sum - y(i) * ai);
    aj = std::min(std::max(aj, 0.0), C);
    ai = y(i) * (sum - y(j) * aj);
    ai = std::min(std::max(ai, 0.0), C);

    const double dai = ai - old_ai, daj = aj - old_aj;
    if (std::abs(dai) < kTau && std::abs(daj) < kTau) break;
    alpha(i) = ai;
    alpha(j) = aj;
    grad += (y(i) * dai) * y.cwiseProduct(ki) + (y(j) * daj) * y.cwiseProduct(kj);
  }

  if (violation > cfg.svm_tol) {
    meta.converged = false;
    meta.note = "SVM SMO stopped at iteration cap with violation " + std::to_string(violation);
  }

  // bias from the final violating-pair bounds
  double m_up = -std::numeric_limits<double>::infinity();
  double m_low = std::numeric_limits<double>::infinity();
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = -y(t) * grad(t);
    const bool in_up = (y(t) > 0 && alpha(t) < C) || (y(t) < 0 && alpha(t) > 0);
    const bool in_low = (y(t) > 0 && alpha(t) > 0) || (y(t) < 0 && alpha(t) < C);
    if (in_up) m_up = std::max(m_up, yg);
    if (in_low) m_low = std::min(m_low, yg);
  }

  SvmModel model;
  model.gamma = gamma;
  model.coef0 = cfg.svm_coef0;
  model.degree = cfg.svm_degree;
  model.bias = (m_up + m_low) / 2.0;
  model.kkt_violation = std::max(0.0, m_up - m_low);

  std::vector<Eigen::Index> sv;
  for (Eigen::Index t = 0; t < n; ++t)
    if (alpha(t) > 0.0) sv.push_back(t);
  model.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), X.cols());
  model.dual_coef.resize(static_cast<Eigen::Index>(sv.size()));
  model.sv_indices.reserve(sv.size());
  for (std::size_t r = 0; r < sv.size(); ++r) {
    model.support_vectors.row(static_cast<Eigen::Index>(r)) = X.row(sv[r]);
    model.dual_coef(static_cast<Eigen::Index>(r)) = alpha(sv[r]) * y(sv[r]);
    model.sv_indices.push_back(static_cast<int>(sv[r]));
  }
  return model;
}

}  // namespace seizembed
