#pragma once

// Native classifier set: logistic regression (full-batch gradient descent),
// MLP (Adam), SVM with degree-6 polynomial kernel (SMO), k-nearest
// neighbors, Gaussian and Bernoulli naive Bayes. All fits are deterministic
// given (X, y, config).

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace seizembed {

enum class ModelKind { LR, MLP, SVM, KNN, GNB, BNB };

ModelKind model_kind_from_string(const std::string& name);
std::string to_string(ModelKind kind);

struct TrainConfig {
  ModelKind model_kind = ModelKind::LR;
  std::uint64_t seed = 0;

  // LR: full-batch gradient descent with backtracking, L2 strength 1/(C*n)
  double lr_C = 1.0;
  int lr_max_iter = 1000;
  double lr_tol = 1e-6;

  // MLP: hidden layers, Adam, fixed epoch budget
  std::vector<int> mlp_hidden = {512, 256};
  double mlp_learning_rate = 1e-3;
  double mlp_beta1 = 0.9;
  double mlp_beta2 = 0.999;
  int mlp_batch = 200;
  int mlp_epochs = 50;

  // SVM: soft-margin dual via SMO, K(u,v) = (gamma*u.v + coef0)^degree
  double svm_C = 1.0;
  int svm_degree = 6;
  double svm_coef0 = 0.0;
  double svm_gamma = 0.0;  // <= 0 means 1/(input_dim * var(X))
  double svm_tol = 1e-3;
  long svm_max_iter = 0;  // 0 means max(10^6, 300*n)

  // KNN
  int knn_k = 5;

  // GNB / BNB
  double gnb_var_smoothing = 1e-9;
  double bnb_binarize = 0.0;
  double bnb_alpha = 1.0;

  // optional negative-class subsample cap (SVM/KNN tractability)
  std::optional<long> max_train_rows;

  void validate() const;
};

struct TrainMeta {
  std::uint64_t seed = 0;
  long n_rows = 0;      // rows offered
  long n_used = 0;      // rows after any negative subsampling
  long n_positive = 0;
  bool converged = true;
  std::string note;
};

struct LogisticModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  double lambda = 0.0;
  int iterations = 0;
};

struct MlpModel {
  std::vector<Eigen::MatrixXd> weights;  // layer l: fan_in x fan_out
  std::vector<Eigen::VectorXd> biases;
};

struct SvmModel {
  Eigen::MatrixXd support_vectors;  // n_sv x dim
  Eigen::VectorXd dual_coef;        // alpha_i * y_i
  std::vector<int> sv_indices;      // rows of the fitted training set
  double bias = 0.0;
  double gamma = 1.0;
  double coef0 = 0.0;
  int degree = 6;
  double kkt_violation = 0.0;       // final max violating-pair gap
};

struct KnnModel {
  Eigen::MatrixXd points;
  std::vector<int> labels;
  int k = 5;
};

struct GnbModel {
  Eigen::MatrixXd mean;      // 2 x dim (class 0, class 1)
  Eigen::MatrixXd variance;  // 2 x dim, smoothed
  double log_prior[2] = {0.0, 0.0};
};

struct BnbModel {
  Eigen::MatrixXd log_theta;      // 2 x dim, log P(feature on | class)
  Eigen::MatrixXd log_one_minus;  // 2 x dim
  double log_prior[2] = {0.0, 0.0};
  double binarize = 0.0;
};

struct TrainedModel {
  ModelKind kind = ModelKind::LR;
  int input_dim = 0;
  TrainConfig config;
  TrainMeta meta;
  std::variant<LogisticModel, MlpModel, SvmModel, KnnModel, GnbModel, BnbModel> impl;
};

// Deterministic fit. Throws on single-class input, non-finite values, or a
// dimension mismatch; a solver hitting its iteration cap sets
// meta.converged = false and meta.note instead of failing.
TrainedModel fit(const Eigen::MatrixXd& X, const std::vector<int>& y, const TrainConfig& config);

// Monotone seizure-confidence score: probability for LR/MLP/GNB/BNB, neighbor
// fraction for KNN, signed margin for SVM.
double score(const TrainedModel& model, const Eigen::VectorXd& x);

Eigen::VectorXd score_batch(const TrainedModel& model, const Eigen::MatrixXd& X);

// Default decision threshold: 0 for the SVM margin, 0.5 otherwise.
double default_threshold(ModelKind kind);

// 1 iff score >= threshold (ties break positive).
int predict(const TrainedModel& model, const Eigen::VectorXd& x, double threshold);
int predict(const TrainedModel& model, const Eigen::VectorXd& x);

namespace detail {

// Forward/backward pass for the MLP, exposed for gradient checking: returns
// mean cross-entropy loss and fills per-parameter gradients.
double mlp_loss_and_gradients(const MlpModel& model, const Eigen::MatrixXd& X,
                              const std::vector<int>& y, std::vector<Eigen::MatrixXd>& grad_w,
                              std::vector<Eigen::VectorXd>& grad_b);

}  // namespace detail

}  // namespace seizembed
