#pragma once

// 1-second epoch segmentation with the mixed-epoch exclusion rule, and
// train/test splitting over sets of records.

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "seizembed/signal.hpp"

namespace seizembed {

// One labeled window. event_id is the index of the seizure interval that
// contains the window (-1 when label == 0).
struct Epoch {
  double start_s = 0.0;
  Eigen::MatrixXd samples;  // channels x samples_per_epoch
  int label = 0;
  int event_id = -1;
  std::string record_id;
};

struct EpochSet {
  std::vector<Epoch> epochs;           // ordered by (record_id, start_s)
  long n_excluded = 0;                 // windows straddling a seizure boundary
  double sample_rate_hz = 0.0;
  std::vector<std::string> channel_names;

  std::size_t size() const { return epochs.size(); }
  long count_label(int label) const;
  long count_events() const;  // distinct (record_id, event_id) pairs
};

enum class SplitKind { by_record_list, chronological_fraction };

struct SplitPolicy {
  SplitKind kind = SplitKind::by_record_list;
  std::vector<std::string> train_records;
  std::vector<std::string> test_records;
  double fraction = 0.5;      // chronological_fraction only, in (0, 1)
  std::uint64_t seed = 0;     // unused by the deterministic kinds; kept for report provenance

  std::string describe() const;
  void validate() const;
};

// Label every window [t, t+1) at integer t. Fully inside an interval -> 1,
// fully outside all intervals -> 0, touching a boundary -> excluded and
// counted. A trailing partial window is dropped.
EpochSet extract_epochs(const EegRecording& recording, const SeizureAnnotation& annotation);

struct SplitResult {
  EpochSet train;
  EpochSet test;
};

// Assign whole records (by_record_list) or split at the record containing the
// first held-out seizure event (chronological_fraction). Event ids in the
// outputs are renumbered to be globally unique within each side. Throws if a
// side ends up without seizure epochs.
SplitResult split(const std::vector<EpochSet>& epoch_sets, const SplitPolicy& policy);

// Shared assignment core, exposed so feature-level streaming in the pipeline
// uses the identical rule. Keys are record ids ordered as encountered; for
// chronological_fraction, events must be described per record.
struct RecordEventInfo {
  std::string record_id;
  int n_events = 0;
};
// Returns, per record, either 0 (train), 1 (test); chronological_fraction may
// also split one record: pair (record index, -1) never occurs — the record
// containing the first test event is returned in boundary_record with the
// count of its leading events that stay in train.
struct SplitAssignment {
  std::vector<int> record_side;  // 0 train, 1 test, aligned with input order
  int boundary_record = -1;      // record whose non-seizure epochs go to train
                                 // while its events from boundary_event on go to test
  int boundary_event = 0;        // first event index (within that record) on the test side
};
SplitAssignment compute_split_assignment(const std::vector<RecordEventInfo>& records,
                                         const SplitPolicy& policy);

}  // namespace seizembed
