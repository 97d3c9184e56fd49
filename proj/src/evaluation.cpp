#include "seizembed/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace seizembed {

ConfusionCounts confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
  if (y_true.empty() || y_true.size() != y_pred.size())
    throw std::invalid_argument("confusion: label vectors must be non-empty and equal length");
  ConfusionCounts c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] == 1)
      (y_pred[i] == 1 ? c.tp : c.fn) += 1;
    else
      (y_pred[i] == 1 ? c.fp : c.tn) += 1;
  }
  return c;
}

std::pair<double, double> epoch_metrics(const ConfusionCounts& c) {
  if (c.tp + c.fn == 0 || c.tn + c.fp == 0)
    throw std::invalid_argument("epoch_metrics: need at least one positive and one negative");
  return {static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn),
          static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp)};
}

double event_sensitivity(const std::vector<int>& event_ids, const std::vector<int>& y_pred) {
  if (event_ids.size() != y_pred.size())
    throw std::invalid_argument("event_sensitivity: length mismatch");
  std::set<int> events, detected;
  for (std::size_t i = 0; i < event_ids.size(); ++i) {
    if (event_ids[i] < 0) continue;
    events.insert(event_ids[i]);
    if (y_pred[i] == 1) detected.insert(event_ids[i]);
  }
  if (events.empty()) throw std::invalid_argument("event_sensitivity: no events in truth");
  return static_cast<double>(detected.size()) / static_cast<double>(events.size());
}

RocCurve roc_auc(const std::vector<double>& scores, const std::vector<int>& y_true) {
  if (scores.empty() || scores.size() != y_true.size())
    throw std::invalid_argument("roc_auc: scores and labels must be non-empty and equal length");
  long p = 0, n = 0;
  for (int label : y_true) (label == 1 ? p : n) += 1;
  if (p == 0 || n == 0) throw std::invalid_argument("roc_auc: both classes required");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];  // descending
  });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});

  long tp = 0, fp = 0;
  long prev_tp = 0, prev_fp = 0;
  // trapezoid area accumulated in integer units of (fp steps) * (tp sums)
  long double area2 = 0.0L;  // twice the area, scaled by p*n at the end
  std::size_t i = 0;
  while (i < order.size()) {
    const double s = scores[order[i]];
    while (i < order.size() && scores[order[i]] == s) {
      (y_true[order[i]] == 1 ? tp : fp) += 1;
      ++i;
    }
    area2 += static_cast<long double>(fp - prev_fp) * static_cast<long double>(tp + prev_tp);
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(n),
                            static_cast<double>(tp) / static_cast<double>(p), s});
    prev_tp = tp;
    prev_fp = fp;
  }
  curve.auc = static_cast<double>(area2 / (2.0L * static_cast<long double>(p) *
                                           static_cast<long double>(n)));
  return curve;
}

EvalOutcome evaluate(const TrainedModel& model, const FittedTransform* transform,
                     const FeatureMatrix& test, double threshold, const std::string& patient_id,
                     const std::string& split_policy) {
  Eigen::VectorXd raw_scores;
  if (transform) {
    const EmbeddedMatrix z = transform_pipeline(transform->quantile, transform->embedder, test);
    raw_scores = score_batch(model, z.values);
  } else {
    raw_scores = score_batch(model, test.values);
  }

  std::vector<double> scores(raw_scores.data(), raw_scores.data() + raw_scores.size());
  std::vector<int> preds(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) preds[i] = scores[i] >= threshold ? 1 : 0;

  const ConfusionCounts c = confusion(test.labels, preds);
  const auto [sens, spec] = epoch_metrics(c);

  EvalOutcome out;
  out.row.patient_id = patient_id;
  out.row.model_kind = model.kind;
  out.row.embedded = transform != nullptr;
  out.row.epoch_sensitivity = sens;
  out.row.specificity = spec;
  out.row.event_sensitivity = event_sensitivity(test.event_ids, preds);
  out.roc = roc_auc(scores, test.labels);
  out.row.auc = out.roc.auc;
  out.row.threshold = threshold;
  out.row.seed = model.meta.seed;
  out.row.split_policy = split_policy;
  return out;
}

AggregateRow aggregate(const std::vector<EvalRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("aggregate: no rows");
  AggregateRow agg;
  agg.model_kind = rows.front().model_kind;
  agg.embedded = rows.front().embedded;
  agg.n_patients = static_cast<long>(rows.size());

  auto mean_std = [&](auto getter, double& mean, double& sd) {
    double m = 0.0;
    for (const auto& r : rows) m += getter(r);
    m /= static_cast<double>(rows.size());
    double v = 0.0;
    for (const auto& r : rows) {
      const double d = getter(r) - m;
      v += d * d;
    }
    mean = m;
    sd = std::sqrt(v / static_cast<double>(rows.size()));  // population std
  };
  mean_std([](const EvalRow& r) { return r.epoch_sensitivity; }, agg.mean_epoch_sensitivity,
           agg.std_epoch_sensitivity);
  mean_std([](const EvalRow& r) { return r.specificity; }, agg.mean_specificity,
           agg.std_specificity);
  mean_std([](const EvalRow& r) { return r.event_sensitivity; }, agg.mean_event_sensitivity,
           agg.std_event_sensitivity);
  mean_std([](const EvalRow& r) { return r.auc; }, agg.mean_auc, agg.std_auc);
  return agg;
}

}  // namespace seizembed
