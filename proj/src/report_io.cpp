#include "seizembed/report_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "seizembed/model_io.hpp"
#include "seizembed/version.hpp"

namespace seizembed {

std::string config_hash(const std::string& canonical_text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical_text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string eval_rows_csv(const std::vector<EvalRow>& rows) {
  std::ostringstream out;
  out << "patient,model,embedded,epoch_sensitivity,specificity,event_sensitivity,auc,"
         "threshold,seed,split_policy\n";
  for (const auto& r : rows) {
    out << r.patient_id << ',' << to_string(r.model_kind) << ',' << (r.embedded ? "on" : "off")
        << ',' << format_double(r.epoch_sensitivity) << ',' << format_double(r.specificity) << ','
        << format_double(r.event_sensitivity) << ',' << format_double(r.auc) << ','
        << format_double(r.threshold) << ',' << r.seed << ',' << r.split_policy << '\n';
  }
  return out.str();
}

std::string eval_aggregate_csv(const std::vector<AggregateRow>& aggregates) {
  std::ostringstream out;
  out << "model,embedded,n_patients,"
         "mean_epoch_sensitivity,std_epoch_sensitivity,mean_specificity,std_specificity,"
         "mean_event_sensitivity,std_event_sensitivity,mean_auc,std_auc\n";
  for (const auto& a : aggregates) {
    out << to_string(a.model_kind) << ',' << (a.embedded ? "on" : "off") << ',' << a.n_patients
        << ',' << format_double(a.mean_epoch_sensitivity) << ','
        << format_double(a.std_epoch_sensitivity) << ',' << format_double(a.mean_specificity)
        << ',' << format_double(a.std_specificity) << ','
        << format_double(a.mean_event_sensitivity) << ','
        << format_double(a.std_event_sensitivity) << ',' << format_double(a.mean_auc) << ','
        << format_double(a.std_auc) << '\n';
  }
  return out.str();
}

std::string eval_report_json(const EvalReport& report, const Provenance& provenance) {
  nlohmann::ordered_json doc;
  doc["provenance"] = {{"version", provenance.version.empty() ? version() : provenance.version},
                       {"config_hash", provenance.config_hash},
                       {"seed", provenance.seed},
                       {"split_policy", provenance.split_policy},
                       {"threads", provenance.threads}};
  for (const auto& [k, v] : provenance.extra) doc["provenance"][k] = v;

  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    doc["rows"].push_back({{"patient", r.patient_id},
                           {"model", to_string(r.model_kind)},
                           {"embedded", r.embedded},
                           {"epoch_sensitivity", r.epoch_sensitivity},
                           {"specificity", r.specificity},
                           {"event_sensitivity", r.event_sensitivity},
                           {"auc", r.auc},
                           {"threshold", r.threshold},
                           {"seed", r.seed},
                           {"split_policy", r.split_policy}});
  }
  doc["aggregates"] = nlohmann::ordered_json::array();
  for (const auto& a : report.aggregates) {
    doc["aggregates"].push_back({{"model", to_string(a.model_kind)},
                                 {"embedded", a.embedded},
                                 {"n_patients", a.n_patients},
                                 {"mean_epoch_sensitivity", a.mean_epoch_sensitivity},
                                 {"std_epoch_sensitivity", a.std_epoch_sensitivity},
                                 {"mean_specificity", a.mean_specificity},
                                 {"std_specificity", a.std_specificity},
                                 {"mean_event_sensitivity", a.mean_event_sensitivity},
                                 {"std_event_sensitivity", a.std_event_sensitivity},
                                 {"mean_auc", a.mean_auc},
                                 {"std_auc", a.std_auc}});
  }
  return doc.dump(2) + "\n";
}

std::string features_csv(const FeatureMatrix& features) {
  std::ostringstream out;
  for (const auto& name : features.feature_names) out << name << ',';
  out << "label,event_id\n";
  for (Eigen::Index r = 0; r < features.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < features.values.cols(); ++c)
      out << format_double(features.values(r, c)) << ',';
    out << features.labels[static_cast<std::size_t>(r)] << ',';
    const int ev = features.event_ids[static_cast<std::size_t>(r)];
    if (ev >= 0) out << ev;
    out << '\n';
  }
  return out.str();
}

std::string roc_csv(const RocCurve& curve) {
  std::ostringstream out;
  out << "fpr,tpr,threshold\n";
  for (const auto& p : curve.points)
    out << format_double(p.fpr) << ',' << format_double(p.tpr) << ','
        << format_double(p.threshold) << '\n';
  return out.str();
}

std::string roc_svg(const std::vector<std::pair<std::string, RocCurve>>& curves,
                    const std::string& title) {
  constexpr int kW = 640, kH = 520, kMargin = 60;
  const int plot_w = kW - 2 * kMargin, plot_h = kH - 2 * kMargin;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

  auto px = [&](double fpr) { return kMargin + fpr * plot_w; };
  auto py = [&](double tpr) { return kH - kMargin - tpr * plot_h; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << kW / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << title
    << "</text>\n";

  // axes with 0.2 gridlines
  for (int i = 0; i <= 5; ++i) {
    const double v = i / 5.0;
    s << "<line x1=\"" << px(v) << "\" y1=\"" << py(0) << "\" x2=\"" << px(v) << "\" y2=\""
      << py(1) << "\" stroke=\"#dddddd\"/>\n";
    s << "<line x1=\"" << px(0) << "\" y1=\"" << py(v) << "\" x2=\"" << px(1) << "\" y2=\""
      << py(v) << "\" stroke=\"#dddddd\"/>\n";
    s << "<text x=\"" << px(v) << "\" y=\"" << py(0) + 20
      << "\" text-anchor=\"middle\" font-size=\"11\">" << i * 0.2 << "</text>\n";
    s << "<text x=\"" << px(0) - 10 << "\" y=\"" << py(v) + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << i * 0.2 << "</text>\n";
  }
  s << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\"" << py(0)
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\"" << py(1)
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\"" << py(1)
    << "\" stroke=\"#aaaaaa\" stroke-dasharray=\"4,4\"/>\n";
  s << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
    << "\" text-anchor=\"middle\" font-size=\"13\">False positive rate</text>\n";
  s << "<text x=\"18\" y=\"" << kH / 2
    << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " << kH / 2
    << ")\">True positive rate</text>\n";

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kColors[c % (sizeof(kColors) / sizeof(kColors[0]))];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    for (const auto& p : curves[c].second.points) s << px(p.fpr) << ',' << py(p.tpr) << ' ';
    s << "\"/>\n";
    const double ly = kMargin + 16.0 * static_cast<double>(c) + 8.0;
    s << "<line x1=\"" << px(0.62) << "\" y1=\"" << ly << "\" x2=\"" << px(0.62) + 24 << "\" y2=\""
      << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";

    char auc_buf[32];
    std::snprintf(auc_buf, sizeof(auc_buf), "%.4f", curves[c].second.auc);
    s << "<text x=\"" << px(0.62) + 30 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
      << curves[c].first << " (AUC " << auc_buf << ")</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace seizembed
