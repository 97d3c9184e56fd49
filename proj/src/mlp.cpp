#include <cmath>
#include <stdexcept>
#include <vector>

#include "seizembed/classifiers.hpp"
#include "seizembed/rng.hpp"

namespace seizembed {

namespace detail {

double mlp_loss_and_gradients(const MlpModel& model, const Eigen::MatrixXd& X,
                              const std::vector<int>& y, std::vector<Eigen::MatrixXd>& grad_w,
                              std::vector<Eigen::VectorXd>& grad_b) {
  const auto n_layers = model.weights.size();
  const double inv_n = 1.0 / static_cast<double>(X.rows());

  // forward, keeping pre-activations for the backward pass
  std::vector<Eigen::MatrixXd> activations;  // A_0 .. A_{L-1}
  std::vector<Eigen::MatrixXd> pre;          // Z_1 .. Z_L
  activations.push_back(X);
  for (std::size_t l = 0; l < n_layers; ++l) {
    Eigen::MatrixXd z =
        (activations.back() * model.weights[l]).rowwise() + model.biases[l].transpose();
    pre.push_back(z);
    if (l + 1 < n_layers) activations.push_back(z.array().max(0.0).matrix());
  }

  const Eigen::VectorXd logits = pre.back().col(0);
  double loss = 0.0;
  Eigen::VectorXd dz(logits.size());
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    const double zi = logits(i);
    const double yi = y[static_cast<std::size_t>(i)];
    loss += std::max(zi, 0.0) + std::log1p(std::exp(-std::abs(zi))) - yi * zi;
    dz(i) = (1.0 / (1.0 + std::exp(-zi)) - yi) * inv_n;
  }
  loss *= inv_n;

  grad_w.assign(n_layers, Eigen::MatrixXd());
  grad_b.assign(n_layers, Eigen::VectorXd());
  Eigen::MatrixXd delta = dz;  // B x fan_out of the current layer
  for (std::size_t l = n_layers; l-- > 0;) {
    grad_w[l] = activations[l].transpose() * delta;
    grad_b[l] = delta.colwise().sum().transpose();
    if (l > 0) {
      Eigen::MatrixXd upstream = delta * model.weights[l].transpose();
      delta = (pre[l - 1].array() > 0.0).cast<double>().matrix().cwiseProduct(upstream);
    }
  }
  return loss;
}

}  // namespace detail

MlpModel fit_mlp_impl(const Eigen::MatrixXd& X, const std::vector<int>& y, const TrainConfig& cfg,
                      TrainMeta& meta) {
  std::vector<int> dims;
  dims.push_back(static_cast<int>(X.cols()));
  for (int h : cfg.mlp_hidden) dims.push_back(h);
  dims.push_back(1);

  MlpModel model;
  Rng rng(mix_seed(cfg.seed, "mlp-init"));
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(dims[l]));  // uniform fan-in scaling
    Eigen::MatrixXd w(dims[l], dims[l + 1]);
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = rng.uniform(-bound, bound);
    model.weights.push_back(std::move(w));
    model.biases.push_back(Eigen::VectorXd::Zero(dims[l + 1]));
  }

  // Adam state
  const auto n_layers = model.weights.size();
  std::vector<Eigen::MatrixXd> mw(n_layers), vw(n_layers);
  std::vector<Eigen::VectorXd> mb(n_layers), vb(n_layers);
  for (std::size_t l = 0; l < n_layers; ++l) {
    mw[l] = Eigen::MatrixXd::Zero(model.weights[l].rows(), model.weights[l].cols());
    vw[l] = mw[l];
    mb[l] = Eigen::VectorXd::Zero(model.biases[l].size());
    vb[l] = mb[l];
  }
  constexpr double kEps = 1e-8;
  long t = 0;

  const auto n = static_cast<std::size_t>(X.rows());
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng shuffle_rng(mix_seed(cfg.seed, "mlp-shuffle"));

  std::vector<Eigen::MatrixXd> gw;
  std::vector<Eigen::VectorXd> gb;
  double last_loss = 0.0;
  const auto batch_size = static_cast<std::size_t>(cfg.mlp_batch);
  for (int epoch = 0; epoch < cfg.mlp_epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    for (std::size_t start = 0; start < n; start += batch_size) {
      const std::size_t stop = std::min(n, start + batch_size);
      Eigen::MatrixXd xb(static_cast<Eigen::Index>(stop - start), X.cols());
      std::vector<int> yb(stop - start);
      for (std::size_t i = start; i < stop; ++i) {
        xb.row(static_cast<Eigen::Index>(i - start)) = X.row(static_cast<Eigen::Index>(order[i]));
        yb[i - start] = y[order[i]];
      }
      last_loss = detail::mlp_loss_and_gradients(model, xb, yb, gw, gb);
      ++t;
      const double corr1 = 1.0 - std::pow(cfg.mlp_beta1, static_cast<double>(t));
      const double corr2 = 1.0 - std::pow(cfg.mlp_beta2, static_cast<double>(t));
      for (std::size_t l = 0; l < n_layers; ++l) {
        mw[l] = cfg.mlp_beta1 * mw[l] + (1.0 - cfg.mlp_beta1) * gw[l];
        vw[l] = cfg.mlp_beta2 * vw[l] + (1.0 - cfg.mlp_beta2) * gw[l].cwiseProduct(gw[l]);
        model.weights[l] -= (cfg.mlp_learning_rate * (mw[l] / corr1).array() /
                             ((vw[l] / corr2).array().sqrt() + kEps))
                                .matrix();
        mb[l] = cfg.mlp_beta1 * mb[l] + (1.0 - cfg.mlp_beta1) * gb[l];
        vb[l] = cfg.mlp_beta2 * vb[l] + (1.0 - cfg.mlp_beta2) * gb[l].cwiseProduct(gb[l]);
        model.biases[l] -= (cfg.mlp_learning_rate * (mb[l] / corr1).array() /
                            ((vb[l] / corr2).array().sqrt() + kEps))
                               .matrix();
      }
    }
  }

  bool finite = std::isfinite(last_loss);
  for (const auto& w : model.weights) finite = finite && w.allFinite();
  if (!finite) {
    meta.converged = false;
    meta.note = "MLP training diverged (non-finite loss or weights)";
  }
  return model;
}

}  // namespace seizembed
