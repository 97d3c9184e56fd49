#pragma once

// Epoch- and event-based metrics, ROC/AUC, and per-patient report rows with
// cross-patient aggregation.

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seizembed/classifiers.hpp"
#include "seizembed/transform.hpp"

namespace seizembed {

struct ConfusionCounts {
  long tp = 0, fp = 0, tn = 0, fn = 0;
};

struct RocPoint {
  double fpr = 0.0, tpr = 0.0, threshold = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // from (0,0) to (1,1), thresholds descending
  double auc = 0.0;
};

struct EvalRow {
  std::string patient_id;
  ModelKind model_kind = ModelKind::LR;
  bool embedded = false;
  double epoch_sensitivity = 0.0;
  double specificity = 0.0;
  double event_sensitivity = 0.0;
  double auc = 0.0;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  std::string split_policy;
};

struct AggregateRow {
  ModelKind model_kind = ModelKind::LR;
  bool embedded = false;
  long n_patients = 0;
  // unweighted per-patient mean and population standard deviation
  double mean_epoch_sensitivity = 0.0, std_epoch_sensitivity = 0.0;
  double mean_specificity = 0.0, std_specificity = 0.0;
  double mean_event_sensitivity = 0.0, std_event_sensitivity = 0.0;
  double mean_auc = 0.0, std_auc = 0.0;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::vector<AggregateRow> aggregates;
};

ConfusionCounts confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred);

// (sensitivity, specificity); requires both classes present in truth.
std::pair<double, double> epoch_metrics(const ConfusionCounts& c);

// An event counts as detected iff any of its epochs is predicted 1.
// event_ids uses -1 for "no event"; at least one event must be present.
double event_sensitivity(const std::vector<int>& event_ids, const std::vector<int>& y_pred);

// Threshold sweep over distinct score values, ties grouped; AUC by trapezoid
// (equals the Mann-Whitney statistic with ties counted 1/2).
RocCurve roc_auc(const std::vector<double>& scores, const std::vector<int>& y_true);

// Score the test matrix through the (optional) fitted transform, apply the
// threshold, and compute all four metrics plus the ROC curve.
struct FittedTransform {
  QuantileMap quantile;
  PeriodicEmbedder embedder;
};

struct EvalOutcome {
  EvalRow row;
  RocCurve roc;
};

EvalOutcome evaluate(const TrainedModel& model, const FittedTransform* transform,
                     const FeatureMatrix& test, double threshold, const std::string& patient_id,
                     const std::string& split_policy);

// Unweighted mean / population std over the given rows (all assumed to share
// model kind and embedding flag; that pair is copied from the first row).
AggregateRow aggregate(const std::vector<EvalRow>& rows);

}  // namespace seizembed
