#pragma once

// Report serialization: CSV rows, JSON document, feature-matrix CSV dump,
// and a standalone SVG plot of ROC curves.

#include <map>
#include <string>
#include <vector>

#include "seizembed/evaluation.hpp"
#include "seizembed/features.hpp"

namespace seizembed {

struct Provenance {
  std::string version;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string split_policy;
  int threads = 1;
  std::map<std::string, std::string> extra;
};

// FNV-1a over the canonical config text; provenance tag, not a crypto hash.
std::string config_hash(const std::string& canonical_text);

std::string eval_rows_csv(const std::vector<EvalRow>& rows);
std::string eval_aggregate_csv(const std::vector<AggregateRow>& aggregates);
std::string eval_report_json(const EvalReport& report, const Provenance& provenance);

// header = feature names + "label" + "event_id" (blank when none)
std::string features_csv(const FeatureMatrix& features);

std::string roc_csv(const RocCurve& curve);

// 0-1 axes with labels and a legend; one polyline per named curve.
std::string roc_svg(const std::vector<std::pair<std::string, RocCurve>>& curves,
                    const std::string& title);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace seizembed
