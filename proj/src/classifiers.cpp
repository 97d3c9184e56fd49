#include "seizembed/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seizembed/rng.hpp"

namespace seizembed {

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "LR" || name == "lr") return ModelKind::LR;
  if (name == "MLP" || name == "mlp") return ModelKind::MLP;
  if (name == "SVM" || name == "svm") return ModelKind::SVM;
  if (name == "KNN" || name == "knn") return ModelKind::KNN;
  if (name == "GNB" || name == "gnb") return ModelKind::GNB;
  if (name == "BNB" || name == "bnb") return ModelKind::BNB;
  throw std::invalid_argument("unknown model kind '" + name + "'");
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::LR: return "LR";
    case ModelKind::MLP: return "MLP";
    case ModelKind::SVM: return "SVM";
    case ModelKind::KNN: return "KNN";
    case ModelKind::GNB: return "GNB";
    case ModelKind::BNB: return "BNB";
  }
  return "?";
}

void TrainConfig::validate() const {
  if (lr_C <= 0.0 || lr_max_iter < 1 || lr_tol <= 0.0)
    throw std::invalid_argument("config: bad LR hyperparameters");
  if (mlp_hidden.empty() || mlp_learning_rate <= 0.0 || mlp_batch < 1 || mlp_epochs < 1)
    throw std::invalid_argument("config: bad MLP hyperparameters");
  for (int h : mlp_hidden)
    if (h < 1) throw std::invalid_argument("config: MLP hidden sizes must be positive");
  if (svm_C <= 0.0 || svm_degree < 1 || svm_tol <= 0.0)
    throw std::invalid_argument("config: bad SVM hyperparameters");
  if (knn_k < 1) throw std::invalid_argument("config: KNN k must be >= 1");
  if (gnb_var_smoothing < 0.0 || bnb_alpha <= 0.0)
    throw std::invalid_argument("config: bad naive Bayes hyperparameters");
  if (max_train_rows && *max_train_rows < 2)
    throw std::invalid_argument("config: max_train_rows must be >= 2");
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// stable mean binary cross-entropy of logits z against labels y
double logistic_loss(const Eigen::VectorXd& z, const Eigen::VectorXd& y) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    // log(1 + e^z) - y z, computed without overflow
    const double zi = z(i);
    total += std::max(zi, 0.0) + std::log1p(std::exp(-std::abs(zi))) - y(i) * zi;
  }
  return total / static_cast<double>(z.size());
}

LogisticModel fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const TrainConfig& cfg, TrainMeta& meta) {
  const auto n = static_cast<double>(X.rows());
  LogisticModel m;
  m.lambda = 1.0 / (cfg.lr_C * n);
  m.weights = Eigen::VectorXd::Zero(X.cols());
  m.bias = 0.0;

  double step = 1.0;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(X.rows());
  double loss = logistic_loss(z, y) + 0.5 * m.lambda * m.weights.squaredNorm();

  for (int it = 0; it < cfg.lr_max_iter; ++it) {
    const Eigen::VectorXd p = z.unaryExpr([](double v) { return sigmoid(v); });
    const Eigen::VectorXd residual = p - y;
    Eigen::VectorXd grad_w = X.transpose() * residual / n + m.lambda * m.weights;
    const double grad_b = residual.mean();

    const double gnorm = std::max(grad_w.cwiseAbs().maxCoeff(), std::abs(grad_b));
    m.iterations = it;
    if (gnorm < cfg.lr_tol) return m;

    // backtracking line search (Armijo, c = 1e-4)
    const double g2 = grad_w.squaredNorm() + grad_b * grad_b;
    bool moved = false;
    for (int half = 0; half < 60; ++half) {
      const Eigen::VectorXd w_try = m.weights - step * grad_w;
      const double b_try = m.bias - step * grad_b;
      const Eigen::VectorXd z_try = X * w_try + Eigen::VectorXd::Constant(X.rows(), b_try);
      const double loss_try = logistic_loss(z_try, y) + 0.5 * m.lambda * w_try.squaredNorm();
      if (loss_try <= loss - 1e-4 * step * g2) {
        m.weights = w_try;
        m.bias = b_try;
        z = z_try;
        loss = loss_try;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      meta.converged = true;  // step underflow: gradient no longer improves the loss
      meta.note = "LR stopped early: line search exhausted";
      m.iterations = it;
      return m;
    }
    step = std::min(step * 2.0, 1e12);
  }
  meta.converged = false;
  meta.note = "LR hit iteration cap before reaching gradient tolerance";
  m.iterations = cfg.lr_max_iter;
  return m;
}

GnbModel fit_gnb(const Eigen::MatrixXd& X, const std::vector<int>& y, const TrainConfig& cfg) {
  const Eigen::Index dim = X.cols();
  GnbModel m;
  m.mean = Eigen::MatrixXd::Zero(2, dim);
  m.variance = Eigen::MatrixXd::Zero(2, dim);
  long count[2] = {0, 0};
  for (std::size_t i = 0; i < y.size(); ++i) {
    m.mean.row(y[i]) += X.row(static_cast<Eigen::Index>(i));
    ++count[y[i]];
  }
  for (int c = 0; c < 2; ++c) m.mean.row(c) /= static_cast<double>(count[c]);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto diff = X.row(static_cast<Eigen::Index>(i)) - m.mean.row(y[i]);
    m.variance.row(y[i]) += diff.cwiseProduct(diff);
  }
  for (int c = 0; c < 2; ++c) m.variance.row(c) /= static_cast<double>(count[c]);

  // smoothing: epsilon = var_smoothing * max feature variance over all rows
  Eigen::VectorXd overall_mean = X.colwise().mean();
  double max_var = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    double v = 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      const double d = X(i, j) - overall_mean(j);
      v += d * d;
    }
    max_var = std::max(max_var, v / static_cast<double>(X.rows()));
  }
  const double eps = std::max(cfg.gnb_var_smoothing * max_var, 1e-300);
  m.variance.array() += eps;

  const double n = static_cast<double>(y.size());
  m.log_prior[0] = std::log(static_cast<double>(count[0]) / n);
  m.log_prior[1] = std::log(static_cast<double>(count[1]) / n);
  return m;
}

BnbModel fit_bnb(const Eigen::MatrixXd& X, const std::vector<int>& y, const TrainConfig& cfg) {
  const Eigen::Index dim = X.cols();
  BnbModel m;
  m.binarize = cfg.bnb_binarize;
  Eigen::MatrixXd on_count = Eigen::MatrixXd::Zero(2, dim);
  long count[2] = {0, 0};
  for (std::size_t i = 0; i < y.size(); ++i) {
    ++count[y[i]];
    for (Eigen::Index j = 0; j < dim; ++j)
      if (X(static_cast<Eigen::Index>(i), j) > m.binarize) on_count(y[i], j) += 1.0;
  }
  m.log_theta.resize(2, dim);
  m.log_one_minus.resize(2, dim);
  for (int c = 0; c < 2; ++c) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double theta = (on_count(c, j) + cfg.bnb_alpha) /
                           (static_cast<double>(count[c]) + 2.0 * cfg.bnb_alpha);
      m.log_theta(c, j) = std::log(theta);
      m.log_one_minus(c, j) = std::log1p(-theta);
    }
  }
  const double n = static_cast<double>(y.size());
  m.log_prior[0] = std::log(static_cast<double>(count[0]) / n);
  m.log_prior[1] = std::log(static_cast<double>(count[1]) / n);
  return m;
}

double posterior_from_joint(double joint0, double joint1) {
  // P(y=1 | x) computed stably from the two log-joints
  const double hi = std::max(joint0, joint1);
  const double z0 = std::exp(joint0 - hi), z1 = std::exp(joint1 - hi);
  return z1 / (z0 + z1);
}

}  // namespace

// defined in mlp.cpp / svm.cpp
MlpModel fit_mlp_impl(const Eigen::MatrixXd& X, const std::vector<int>& y, const TrainConfig& cfg,
                      TrainMeta& meta);
SvmModel fit_svm_impl(const Eigen::MatrixXd& X, const std::vector<int>& y, const TrainConfig& cfg,
                      TrainMeta& meta);

TrainedModel fit(const Eigen::MatrixXd& X, const std::vector<int>& y, const TrainConfig& config) {
  config.validate();
  if (X.rows() < 2) throw std::invalid_argument("fit: need at least 2 rows");
  if (static_cast<std::size_t>(X.rows()) != y.size())
    throw std::invalid_argument("fit: X rows and y length differ");
  if (!X.allFinite()) throw std::invalid_argument("fit: non-finite values in X");
  long n_pos = 0;
  for (int label : y) {
    if (label != 0 && label != 1) throw std::invalid_argument("fit: labels must be 0/1");
    n_pos += label;
  }
  if (n_pos == 0 || n_pos == static_cast<long>(y.size()))
    throw std::invalid_argument("fit: single-class training set");

  // optional negative-class subsample (tractability cap for SVM/KNN)
  Eigen::MatrixXd Xs;
  std::vector<int> ys;
  const Eigen::MatrixXd* Xp = &X;
  const std::vector<int>* yp = &y;
  if (config.max_train_rows && static_cast<long>(y.size()) > *config.max_train_rows) {
    const long target_neg = std::max<long>(1, *config.max_train_rows - n_pos);
    std::vector<std::size_t> neg_rows;
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] == 0) neg_rows.push_back(i);
    if (static_cast<long>(neg_rows.size()) > target_neg) {
      Rng rng(mix_seed(config.seed, "negative-subsample"));
      rng.shuffle(neg_rows);
      neg_rows.resize(static_cast<std::size_t>(target_neg));
      std::vector<std::size_t> keep = neg_rows;
      for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] == 1) keep.push_back(i);
      std::sort(keep.begin(), keep.end());
      Xs.resize(static_cast<Eigen::Index>(keep.size()), X.cols());
      ys.reserve(keep.size());
      for (std::size_t r = 0; r < keep.size(); ++r) {
        Xs.row(static_cast<Eigen::Index>(r)) = X.row(static_cast<Eigen::Index>(keep[r]));
        ys.push_back(y[keep[r]]);
      }
      Xp = &Xs;
      yp = &ys;
    }
  }

  TrainedModel model;
  model.kind = config.model_kind;
  model.input_dim = static_cast<int>(X.cols());
  model.config = config;
  model.meta.seed = config.seed;
  model.meta.n_rows = static_cast<long>(y.size());
  model.meta.n_used = static_cast<long>(yp->size());
  model.meta.n_positive = n_pos;

  switch (config.model_kind) {
    case ModelKind::LR: {
      Eigen::VectorXd yv(static_cast<Eigen::Index>(yp->size()));
      for (std::size_t i = 0; i < yp->size(); ++i) yv(static_cast<Eigen::Index>(i)) = (*yp)[i];
      model.impl = fit_logistic(*Xp, yv, config, model.meta);
      break;
    }
    case ModelKind::MLP:
      model.impl = fit_mlp_impl(*Xp, *yp, config, model.meta);
      break;
    case ModelKind::SVM:
      model.impl = fit_svm_impl(*Xp, *yp, config, model.meta);
      break;
    case ModelKind::KNN: {
      KnnModel m;
      m.points = *Xp;
      m.labels = *yp;
      m.k = std::min<int>(config.knn_k, static_cast<int>(yp->size()));
      model.impl = std::move(m);
      break;
    }
    case ModelKind::GNB:
      model.impl = fit_gnb(*Xp, *yp, config);
      break;
    case ModelKind::BNB:
      model.impl = fit_bnb(*Xp, *yp, config);
      break;
  }
  return model;
}

namespace {

double score_logistic(const LogisticModel& m, const Eigen::VectorXd& x) {
  return sigmoid(m.weights.dot(x) + m.bias);
}

double score_mlp(const MlpModel& m, const Eigen::VectorXd& x) {
  Eigen::VectorXd h = x;
  for (std::size_t l = 0; l + 1 < m.weights.size(); ++l)
    h = ((m.weights[l].transpose() * h + m.biases[l]).array().max(0.0)).matrix();
  const double z = (m.weights.back().transpose() * h + m.biases.back())(0);
  return sigmoid(z);
}

double score_svm(const SvmModel& m, const Eigen::VectorXd& x) {
  const Eigen::VectorXd base = m.support_vectors * x;
  double sum = m.bias;
  for (Eigen::Index i = 0; i < base.size(); ++i)
    sum += m.dual_coef(i) * std::pow(m.gamma * base(i) + m.coef0, m.degree);
  return sum;
}

double score_knn(const KnnModel& m, const Eigen::VectorXd& x) {
  const Eigen::Index n = m.points.rows();
  std::vector<std::pair<double, int>> dist(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    dist[static_cast<std::size_t>(i)] = {(m.points.row(i).transpose() - x).squaredNorm(),
                                         static_cast<int>(i)};
  // ties in distance break toward the lower training index
  std::partial_sort(dist.begin(), dist.begin() + m.k, dist.end());
  double hits = 0.0;
  for (int j = 0; j < m.k; ++j) hits += m.labels[static_cast<std::size_t>(dist[j].second)];
  return hits / static_cast<double>(m.k);
}

double score_gnb(const GnbModel& m, const Eigen::VectorXd& x) {
  double joint[2];
  for (int c = 0; c < 2; ++c) {
    double ll = m.log_prior[c];
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const double var = m.variance(c, j);
      const double d = x(j) - m.mean(c, j);
      ll += -0.5 * (std::log(2.0 * M_PI * var) + d * d / var);
    }
    joint[c] = ll;
  }
  return posterior_from_joint(joint[0], joint[1]);
}

double score_bnb(const BnbModel& m, const Eigen::VectorXd& x) {
  double joint[2];
  for (int c = 0; c < 2; ++c) {
    double ll = m.log_prior[c];
    for (Eigen::Index j = 0; j < x.size(); ++j)
      ll += (x(j) > m.binarize) ? m.log_theta(c, j) : m.log_one_minus(c, j);
    joint[c] = ll;
  }
  return posterior_from_joint(joint[0], joint[1]);
}

}  // namespace

double score(const TrainedModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.input_dim)
    throw std::invalid_argument("score: input has " + std::to_string(x.size()) +
                                " entries, model expects " + std::to_string(model.input_dim));
  return std::visit(
      [&](const auto& impl) -> double {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, LogisticModel>) return score_logistic(impl, x);
        else if constexpr (std::is_same_v<T, MlpModel>) return score_mlp(impl, x);
        else if constexpr (std::is_same_v<T, SvmModel>) return score_svm(impl, x);
        else if constexpr (std::is_same_v<T, KnnModel>) return score_knn(impl, x);
        else if constexpr (std::is_same_v<T, GnbModel>) return score_gnb(impl, x);
        else return score_bnb(impl, x);
      },
      model.impl);
}

Eigen::VectorXd score_batch(const TrainedModel& model, const Eigen::MatrixXd& X) {
  if (X.cols() != model.input_dim) throw std::invalid_argument("score_batch: dimension mismatch");
  Eigen::VectorXd out(X.rows());

  // batched paths where a matrix product pays off
  if (model.kind == ModelKind::SVM) {
    const auto& m = std::get<SvmModel>(model.impl);
    const Eigen::MatrixXd base = X * m.support_vectors.transpose();  // n x n_sv
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
      double sum = m.bias;
      for (Eigen::Index i = 0; i < m.dual_coef.size(); ++i)
        sum += m.dual_coef(i) * std::pow(m.gamma * base(r, i) + m.coef0, m.degree);
      out(r) = sum;
    }
    return out;
  }
  if (model.kind == ModelKind::KNN) {
    const auto& m = std::get<KnnModel>(model.impl);
    const Eigen::VectorXd train_sq = m.points.rowwise().squaredNorm();
    const Eigen::Index chunk = 512;
    for (Eigen::Index r0 = 0; r0 < X.rows(); r0 += chunk) {
      const Eigen::Index nr = std::min(chunk, X.rows() - r0);
      const Eigen::MatrixXd cross = X.middleRows(r0, nr) * m.points.transpose();
      for (Eigen::Index r = 0; r < nr; ++r) {
        const double q = X.row(r0 + r).squaredNorm();
        std::vector<std::pair<double, int>> dist(static_cast<std::size_t>(m.points.rows()));
        for (Eigen::Index i = 0; i < m.points.rows(); ++i)
          dist[static_cast<std::size_t>(i)] = {q + train_sq(i) - 2.0 * cross(r, i),
                                               static_cast<int>(i)};
        std::partial_sort(dist.begin(), dist.begin() + m.k, dist.end());
        double hits = 0.0;
        for (int j = 0; j < m.k; ++j) hits += m.labels[static_cast<std::size_t>(dist[j].second)];
        out(r0 + r) = hits / static_cast<double>(m.k);
      }
    }
    return out;
  }
  if (model.kind == ModelKind::MLP) {
    const auto& m = std::get<MlpModel>(model.impl);
    Eigen::MatrixXd h = X;
    for (std::size_t l = 0; l + 1 < m.weights.size(); ++l)
      h = ((h * m.weights[l]).rowwise() + m.biases[l].transpose()).array().max(0.0).matrix();
    const Eigen::VectorXd z = h * m.weights.back() + Eigen::VectorXd::Constant(h.rows(), m.biases.back()(0));
    for (Eigen::Index r = 0; r < X.rows(); ++r) out(r) = sigmoid(z(r));
    return out;
  }

  for (Eigen::Index r = 0; r < X.rows(); ++r) out(r) = score(model, X.row(r).transpose());
  return out;
}

double default_threshold(ModelKind kind) { return kind == ModelKind::SVM ? 0.0 : 0.5; }

int predict(const TrainedModel& model, const Eigen::VectorXd& x, double threshold) {
  return score(model, x) >= threshold ? 1 : 0;
}

int predict(const TrainedModel& model, const Eigen::VectorXd& x) {
  return predict(model, x, default_threshold(model.kind));
}

}  // namespace seizembed
