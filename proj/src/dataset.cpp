#include "seizembed/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>

#include "seizembed/model_io.hpp"
#include "seizembed/report_io.hpp"
#include "seizembed/rng.hpp"

namespace fs = std::filesystem;

namespace seizembed {

void SynthDatasetConfig::validate() const {
  if (n_patients < 1) throw std::invalid_argument("synth dataset: need at least one patient");
  if (records_per_patient < 1)
    throw std::invalid_argument("synth dataset: need at least one record per patient");
  if (min_events < 1 || max_events < min_events)
    throw std::invalid_argument("synth dataset: bad event count range");
  if (event_duration_s <= 2.0)
    throw std::invalid_argument("synth dataset: event_duration_s too short");
  const double per_event = record_duration_s / static_cast<double>(max_events + 1);
  if (per_event < event_duration_s + 8.0)
    throw std::invalid_argument("synth dataset: record too short for the requested events");
  SynthConfig probe;
  probe.n_channels = n_channels;
  probe.sample_rate_hz = sample_rate_hz;
  probe.duration_s = record_duration_s;
  probe.background_amplitude_uv = background_amplitude_uv;
  probe.validate();
}

namespace {

std::string zero_pad(int v, int width) {
  std::string s = std::to_string(v);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

std::vector<std::pair<double, double>> place_events(const SynthDatasetConfig& cfg, Rng& rng) {
  const int n_events =
      cfg.min_events + static_cast<int>(rng.below(static_cast<std::size_t>(cfg.max_events - cfg.min_events + 1)));
  std::vector<std::pair<double, double>> events;
  const double slot = cfg.record_duration_s / static_cast<double>(n_events + 1);
  for (int e = 0; e < n_events; ++e) {
    // center each event in its slot with quarter-second jitter; some starts
    // land on integer seconds (no excluded epochs), some do not
    const double jitter = 0.25 * static_cast<double>(rng.below(17)) - 2.0;
    double start = slot * static_cast<double>(e + 1) - cfg.event_duration_s / 2.0 + jitter;
    start = std::max(2.0, std::min(start, cfg.record_duration_s - cfg.event_duration_s - 2.0));
    start = std::round(start * 4.0) / 4.0;
    events.emplace_back(start, start + cfg.event_duration_s);
  }
  return events;
}

}  // namespace

std::vector<DatasetPatient> write_synth_dataset(const SynthDatasetConfig& config,
                                                const std::string& out_dir) {
  config.validate();
  fs::create_directories(out_dir);

  std::vector<DatasetPatient> patients;
  for (int p = 0; p < config.n_patients; ++p) {
    DatasetPatient patient;
    patient.patient_id = "p" + zero_pad(p + 1, 2);
    const fs::path pdir = fs::path(out_dir) / patient.patient_id;
    fs::create_directories(pdir);

    std::ostringstream summary;
    summary << "Data Sampling Rate: " << config.sample_rate_hz << " Hz\n\n";

    for (int r = 0; r < config.records_per_patient; ++r) {
      const std::string record_id = patient.patient_id + "_r" + zero_pad(r + 1, 2);
      Rng placement(mix_seed(config.seed, record_id + "/events"));

      SynthConfig synth;
      synth.n_channels = config.n_channels;
      synth.sample_rate_hz = config.sample_rate_hz;
      synth.duration_s = config.record_duration_s;
      synth.seizure_intervals = place_events(config, placement);
      synth.seizure_mode = config.mode;
      synth.background_amplitude_uv = config.background_amplitude_uv;
      synth.seed = mix_seed(config.seed, record_id + "/signal");

      auto [recording, annotation] = synth_recording(synth, record_id);
      const fs::path edf_path = pdir / (record_id + ".edf");
      write_edf_file(recording, edf_path.string());

      summary << "File Name: " << record_id << ".edf\n";
      summary << "Number of Seizures in File: " << annotation.intervals.size() << "\n";
      for (std::size_t e = 0; e < annotation.intervals.size(); ++e) {
        summary << "Seizure " << (e + 1)
                << " Start Time: " << format_double(annotation.intervals[e].first) << " seconds\n";
        summary << "Seizure " << (e + 1)
                << " End Time: " << format_double(annotation.intervals[e].second) << " seconds\n";
      }
      summary << "\n";

      patient.records.push_back({record_id, edf_path.string(), std::move(annotation)});
    }

    write_text_file((pdir / (patient.patient_id + "-summary.txt")).string(), summary.str());
    patients.push_back(std::move(patient));
  }
  return patients;
}

std::vector<DatasetPatient> load_dataset(const std::string& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("dataset: not a directory: " + dir);

  std::vector<std::string> patient_ids;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_directory()) patient_ids.push_back(entry.path().filename().string());
  std::sort(patient_ids.begin(), patient_ids.end());
  if (patient_ids.empty()) throw std::runtime_error("dataset: no patient directories in " + dir);

  std::vector<DatasetPatient> patients;
  for (const auto& pid : patient_ids) {
    const fs::path pdir = fs::path(dir) / pid;
    fs::path summary_path = pdir / (pid + "-summary.txt");
    if (!fs::exists(summary_path)) summary_path = fs::path(dir) / (pid + "-summary.txt");

    std::map<std::string, SeizureAnnotation> annotations;
    if (fs::exists(summary_path)) {
      for (auto& ann : read_chb_summary_file(summary_path.string()))
        annotations[ann.record_id] = std::move(ann);
    }

    DatasetPatient patient;
    patient.patient_id = pid;
    for (const auto& entry : fs::directory_iterator(pdir)) {
      if (!entry.is_regular_file() || entry.path().extension() != ".edf") continue;
      const std::string record_id = entry.path().stem().string();
      SeizureAnnotation ann;
      ann.record_id = record_id;
      if (auto it = annotations.find(record_id); it != annotations.end()) ann = it->second;
      patient.records.push_back({record_id, entry.path().string(), std::move(ann)});
    }
    if (patient.records.empty()) continue;
    std::sort(patient.records.begin(), patient.records.end(),
              [](const DatasetRecord& a, const DatasetRecord& b) { return a.record_id < b.record_id; });
    patients.push_back(std::move(patient));
  }
  if (patients.empty()) throw std::runtime_error("dataset: no patients with EDF records in " + dir);
  return patients;
}

std::vector<std::string> common_channels(const std::vector<EegRecording>& recordings) {
  if (recordings.empty()) return {};
  std::vector<std::string> common = recordings.front().channel_names;
  for (std::size_t r = 1; r < recordings.size(); ++r) {
    const auto& names = recordings[r].channel_names;
    std::vector<std::string> next;
    for (const auto& c : common)
      if (std::find(names.begin(), names.end(), c) != names.end()) next.push_back(c);
    common = std::move(next);
  }
  return common;
}

}  // namespace seizembed
