#ifndef OASM_ENGINE_HPP
#define OASM_ENGINE_HPP

#include <string>
#include <vector>

#include "oasm/occurrence_filter.hpp"
#include "oasm/types.hpp"

namespace oasm {

/// Streaming search engine.
///
/// Buffers a lookahead window of l_p+K symbols; once the window for the next
/// start index is complete, evaluates the 2K+1 windowed distances and runs
/// one filter step. Each start position fills one fresh DP matrix, so the
/// cost is O(l_p * (l_p + K)) per consumed symbol. Memory use is bounded by
/// the window plus the tracking store plus a short history ring (sized by
/// worst_case_delay) kept so that emitted occurrences can still be decoded
/// to text.
///
/// One instance is single-writer: push/finalize must be externally
/// serialized. Distinct instances are independent.
class Engine {
public:
  explicit Engine(Pattern pattern, std::string pattern_id = "p0");

  /// Feeds one symbol; returns the occurrences flushed by the step this
  /// symbol completed (usually none), champion first.
  std::vector<Occurrence> push(Symbol s);

  /// Declares end of stream: evaluates the remaining start positions with
  /// truncated windows and completes any pending flush. The engine becomes
  /// inert; a second call throws state_error.
  std::vector<Occurrence> finalize();

  bool finalized() const { return finalized_; }
  const Pattern& pattern() const { return pattern_; }
  const std::string& pattern_id() const { return pattern_id_; }
  StreamIndex symbols_consumed() const { return consumed_; }

  /// Copies symbols [start, start+length) out of the history ring.
  /// Throws internal_error if that range was already evicted (cannot happen
  /// for just-emitted occurrences).
  std::vector<Symbol> recent(StreamIndex start, int length) const;

  std::vector<MemRow> mem_snapshot() const { return filter_.mem_snapshot(); }
  void set_flush_observer(std::function<void(const FlushRecord&)> cb) {
    filter_.set_flush_observer(std::move(cb));
  }

  /// Approximate bytes of resident engine state; constant for a given
  /// pattern, independent of how many symbols were consumed.
  std::size_t state_bytes() const;

private:
  void run_step(StreamIndex start, std::vector<Occurrence>& out);

  Pattern pattern_;
  std::string pattern_id_;
  int window_len_;              // l_p + K
  OccurrenceFilter filter_;
  std::vector<Symbol> ring_;    // history, capacity >= delay bound + window
  StreamIndex ring_base_ = 0;   // absolute index of ring_[head_]
  std::size_t head_ = 0;
  std::size_t ring_size_ = 0;
  StreamIndex consumed_ = 0;
  StreamIndex next_start_ = 0;
  std::vector<Symbol> scratch_;
  levdist::DpWorkspace dp_;
  levdist::WindowDistances distances_;
  bool finalized_ = false;
};

}  // namespace oasm

#endif
