#ifndef OASM_OCCURRENCE_FILTER_HPP
#define OASM_OCCURRENCE_FILTER_HPP

#include <functional>
#include <string>
#include <vector>

#include "oasm/levdist.hpp"
#include "oasm/types.hpp"

namespace oasm {

/// One row of the tracking store: position, length and validation counter of
/// the occurrence held at a priority level.
struct MemRow {
  StreamIndex pos = 0;
  int len = 0;
  int counter = 0;
  bool tracked = false;
};

/// Snapshot taken at the moment a flush fires, before the store is reset.
struct FlushRecord {
  StreamIndex step = 0;               // start index whose step triggered the flush
  std::vector<MemRow> rows;           // indexed by priority 0..K
  std::vector<Occurrence> emitted;    // champion first, then validated lower priorities
};

/// Streaming shadow-hit filter.
///
/// Consumes, start index by start index, the candidate distances produced for
/// the 2K+1 window lengths and maintains one tracked occurrence per priority
/// level (priority = distance, lower is better):
///  - the first hit while idle is tracked unconditionally;
///  - a hit strictly better than the current champion is tracked at its own
///    level and becomes the champion;
///  - a hit with the same priority as a tracked row competes with it: the one
///    whose last symbol arrives earlier wins, the shorter on a tie, and a
///    winning newcomer replaces the row and restarts its counter;
///  - anything else is discarded.
/// Counters advance by one per start index (not on the step that created the
/// row). When the champion's counter reaches its length the store flushes:
/// the champion is emitted, and each lower-priority row survives only if
/// counter(k) - len(last emitted) > len(k).
class OccurrenceFilter {
public:
  OccurrenceFilter(int pattern_length, int threshold, std::string pattern_id = "p0");

  /// Runs one step. `d.values[j]` is the distance for length
  /// d.first_length + j, or nullopt past the stream end. Emitted occurrences
  /// are appended to `out`.
  void step(StreamIndex start, const levdist::WindowDistances& d,
            std::vector<Occurrence>& out);

  /// Stream end with a champion still pending: emit it as if complete and run
  /// the cascade with the current counters. No-op when idle. `step` is the
  /// last processed start index, recorded in the flush snapshot.
  void force_flush(StreamIndex step, std::vector<Occurrence>& out);

  bool tracking() const { return tracking_; }
  int champion_priority() const { return idx_; }  // == K when idle
  std::vector<MemRow> mem_snapshot() const;

  void set_flush_observer(std::function<void(const FlushRecord&)> cb) {
    observer_ = std::move(cb);
  }

private:
  struct Row {
    StreamIndex pos = 0;
    int len = 0;
    int counter = 0;
    StreamIndex created = 0;
    bool tracked = false;
  };

  void track(int priority, StreamIndex start, int length);
  void flush(StreamIndex step, std::vector<Occurrence>& out);

  int lp_;
  int k_;
  std::string pattern_id_;
  std::vector<Row> mem_;
  int idx_;               // champion priority; K when idle
  bool tracking_ = false;
  std::function<void(const FlushRecord&)> observer_;
};

}  // namespace oasm

#endif
