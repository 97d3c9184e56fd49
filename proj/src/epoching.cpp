#include "seizembed/epoching.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace seizembed {

long EpochSet::count_label(int label) const {
  long n = 0;
  for (const auto& e : epochs) n += (e.label == label) ? 1 : 0;
  return n;
}

long EpochSet::count_events() const {
  std::set<std::pair<std::string, int>> events;
  for (const auto& e : epochs)
    if (e.event_id >= 0) events.emplace(e.record_id, e.event_id);
  return static_cast<long>(events.size());
}

std::string SplitPolicy::describe() const {
  std::ostringstream ss;
  if (kind == SplitKind::by_record_list) {
    ss << "by_record_list(train=";
    for (std::size_t i = 0; i < train_records.size(); ++i) ss << (i ? "+" : "") << train_records[i];
    ss << ";test=";
    for (std::size_t i = 0; i < test_records.size(); ++i) ss << (i ? "+" : "") << test_records[i];
    ss << ")";
  } else {
    ss << "chronological_fraction(" << fraction << ")";
  }
  return ss.str();
}

void SplitPolicy::validate() const {
  if (kind == SplitKind::chronological_fraction) {
    if (!(fraction > 0.0 && fraction < 1.0))
      throw std::invalid_argument("split: fraction must be strictly between 0 and 1");
  } else {
    for (const auto& r : train_records)
      if (std::find(test_records.begin(), test_records.end(), r) != test_records.end())
        throw std::invalid_argument("split: record '" + r + "' listed for both train and test");
  }
}

EpochSet extract_epochs(const EegRecording& recording, const SeizureAnnotation& annotation) {
  recording.validate();
  annotation.validate(recording.duration_s());
  if (recording.record_id != annotation.record_id)
    throw std::invalid_argument("extract_epochs: record_id mismatch ('" + recording.record_id +
                                "' vs '" + annotation.record_id + "')");
  const double fs = recording.sample_rate_hz;
  const long spe = std::lround(fs);
  if (std::abs(fs - static_cast<double>(spe)) > 1e-9 || spe <= 0)
    throw std::invalid_argument("extract_epochs: samples per 1 s epoch is not an integer");

  const long n_windows = static_cast<long>(recording.n_samples()) / spe;  // trailing partial dropped
  EpochSet out;
  out.sample_rate_hz = fs;
  out.channel_names = recording.channel_names;
  out.epochs.reserve(static_cast<std::size_t>(n_windows));

  for (long w = 0; w < n_windows; ++w) {
    const double t0 = static_cast<double>(w);
    const double t1 = t0 + 1.0;
    int label = 0, event_id = -1;
    bool excluded = false;
    for (std::size_t k = 0; k < annotation.intervals.size(); ++k) {
      const auto& [s, e] = annotation.intervals[k];
      if (s <= t0 && t1 <= e) {
        label = 1;
        event_id = static_cast<int>(k);
      } else if (!(t0 >= e || t1 <= s)) {
        excluded = true;  // window straddles a seizure boundary
      }
    }
    if (excluded) {
      ++out.n_excluded;
      continue;
    }
    Epoch ep;
    ep.start_s = t0;
    ep.label = label;
    ep.event_id = event_id;
    ep.record_id = recording.record_id;
    ep.samples = recording.samples.middleCols(w * spe, spe);
    out.epochs.push_back(std::move(ep));
  }
  return out;
}

SplitAssignment compute_split_assignment(const std::vector<RecordEventInfo>& records,
                                         const SplitPolicy& policy) {
  policy.validate();
  SplitAssignment out;
  out.record_side.assign(records.size(), -1);

  if (policy.kind == SplitKind::by_record_list) {
    auto side_of = [&](const std::string& id) {
      if (std::find(policy.train_records.begin(), policy.train_records.end(), id) !=
          policy.train_records.end())
        return 0;
      if (std::find(policy.test_records.begin(), policy.test_records.end(), id) !=
          policy.test_records.end())
        return 1;
      return -1;  // unlisted records are left out of both sides
    };
    std::set<std::string> present;
    for (std::size_t i = 0; i < records.size(); ++i) {
      out.record_side[i] = side_of(records[i].record_id);
      present.insert(records[i].record_id);
    }
    for (const auto& lists : {policy.train_records, policy.test_records})
      for (const auto& id : lists)
        if (!present.count(id)) throw std::invalid_argument("split: unknown record '" + id + "'");
    return out;
  }

  long total_events = 0;
  for (const auto& r : records) total_events += r.n_events;
  if (total_events == 0) throw std::invalid_argument("split: no seizure events to split on");
  const long m = static_cast<long>(std::ceil(policy.fraction * static_cast<double>(total_events)));
  if (m >= total_events)
    throw std::invalid_argument("split: chronological fraction leaves no seizure events in test");

  // Record containing the first held-out event (global index m). Records up to
  // and including it contribute their non-seizure epochs to train; later
  // records go to test wholesale.
  long cum = 0;
  std::size_t boundary = 0;
  int boundary_event = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (m < cum + records[i].n_events) {
      boundary = i;
      boundary_event = static_cast<int>(m - cum);
      break;
    }
    cum += records[i].n_events;
  }
  for (std::size_t i = 0; i < records.size(); ++i)
    out.record_side[i] = i < boundary ? 0 : (i == boundary ? 2 : 1);
  out.boundary_record = static_cast<int>(boundary);
  out.boundary_event = boundary_event;
  return out;
}

namespace {

void append_epochs(EpochSet& dst, const std::vector<const Epoch*>& epochs) {
  for (const Epoch* e : epochs) dst.epochs.push_back(*e);
}

}  // namespace

SplitResult split(const std::vector<EpochSet>& epoch_sets, const SplitPolicy& policy) {
  if (epoch_sets.empty()) throw std::invalid_argument("split: no input epoch sets");
  policy.validate();

  const double fs = epoch_sets.front().sample_rate_hz;
  const auto& channels = epoch_sets.front().channel_names;
  for (const auto& s : epoch_sets) {
    if (s.sample_rate_hz != fs) throw std::invalid_argument("split: mixed sampling rates");
    if (s.channel_names != channels) throw std::invalid_argument("split: mixed channel sets");
  }

  // group epochs by record, ordered by record_id
  std::map<std::string, std::vector<const Epoch*>> by_record;
  std::map<std::string, long> excluded_by_record;
  long orphan_exclusions = 0;
  for (const auto& s : epoch_sets) {
    for (const auto& e : s.epochs) by_record[e.record_id].push_back(&e);
    if (!s.epochs.empty())
      excluded_by_record[s.epochs.front().record_id] += s.n_excluded;
    else
      orphan_exclusions += s.n_excluded;
  }
  for (auto& [id, eps] : by_record)
    std::sort(eps.begin(), eps.end(),
              [](const Epoch* a, const Epoch* b) { return a->start_s < b->start_s; });

  std::vector<RecordEventInfo> infos;
  for (const auto& [id, eps] : by_record) {
    RecordEventInfo info;
    info.record_id = id;
    std::set<int> events;
    for (const Epoch* e : eps)
      if (e->event_id >= 0) events.insert(e->event_id);
    info.n_events = static_cast<int>(events.size());
    infos.push_back(std::move(info));
  }

  const SplitAssignment assign = compute_split_assignment(infos, policy);

  SplitResult out;
  for (EpochSet* side : {&out.train, &out.test}) {
    side->sample_rate_hz = fs;
    side->channel_names = channels;
  }
  out.train.n_excluded += orphan_exclusions;

  std::size_t idx = 0;
  for (const auto& [id, eps] : by_record) {
    const int side = assign.record_side[idx];
    std::vector<const Epoch*> to_train, to_test;
    if (side == 0) {
      to_train = eps;
    } else if (side == 1) {
      to_test = eps;
    } else if (side == 2) {
      // boundary record: non-seizure epochs stay in train; seizure events from
      // boundary_event on are held out
      for (const Epoch* e : eps) {
        if (e->event_id >= 0 && e->event_id >= assign.boundary_event)
          to_test.push_back(e);
        else
          to_train.push_back(e);
      }
    }
    if (side == 0 || side == 2) out.train.n_excluded += excluded_by_record[id];
    if (side == 1) out.test.n_excluded += excluded_by_record[id];
    append_epochs(out.train, to_train);
    append_epochs(out.test, to_test);
    ++idx;
  }

  // renumber (record, event) pairs to globally unique ids per side
  for (EpochSet* side : {&out.train, &out.test}) {
    std::map<std::pair<std::string, int>, int> remap;
    for (auto& e : side->epochs) {
      if (e.event_id < 0) continue;
      auto key = std::make_pair(e.record_id, e.event_id);
      auto [it, fresh] = remap.emplace(key, static_cast<int>(remap.size()));
      e.event_id = it->second;
      (void)fresh;
    }
  }

  if (out.train.count_label(1) == 0)
    throw std::invalid_argument("split: no seizure epochs in train");
  if (out.test.count_label(1) == 0)
    throw std::invalid_argument("split: no seizure epochs in test");
  return out;
}

}  // namespace seizembed
