#include "oasm/occurrence_filter.hpp"

#include <cstdlib>

#include "oasm/errors.hpp"

namespace oasm {

OccurrenceFilter::OccurrenceFilter(int pattern_length, int threshold,
                                   std::string pattern_id)
    : lp_(pattern_length), k_(threshold), pattern_id_(std::move(pattern_id)) {
  if (pattern_length < 1 || threshold < 0 || threshold >= pattern_length)
    throw input_error("filter requires 0 <= K < pattern length");
  mem_.assign(static_cast<std::size_t>(k_) + 1, Row{});
  idx_ = k_;
}

void OccurrenceFilter::track(int priority, StreamIndex start, int length) {
  Row& row = mem_[static_cast<std::size_t>(priority)];
  row.pos = start;
  row.len = length;
  row.counter = 1;
  row.created = start;
  row.tracked = true;
  if (!tracking_ || priority < idx_) idx_ = priority;
  tracking_ = true;
}

void OccurrenceFilter::step(StreamIndex start, const levdist::WindowDistances& d,
                            std::vector<Occurrence>& out) {
  for (std::size_t j = 0; j < d.values.size(); ++j) {
    if (!d.values[j]) continue;
    const int k = *d.values[j];
    if (k > k_) continue;
    const int l = d.length_at(j);
    if (k < std::abs(l - lp_))
      throw internal_error("candidate distance below length-difference bound");
    if (!tracking_) {
      track(k, start, l);
      continue;
    }
    if (k < idx_) {
      if (mem_[static_cast<std::size_t>(k)].tracked)
        throw internal_error("tracked row above the champion priority");
      track(k, start, l);
      continue;
    }
    Row& incumbent = mem_[static_cast<std::size_t>(k)];
    if (!incumbent.tracked) continue;  // worse than the champion, no rival to beat
    const StreamIndex cand_end = start + static_cast<StreamIndex>(l) - 1;
    const StreamIndex inc_end =
        incumbent.pos + static_cast<StreamIndex>(incumbent.len) - 1;
    if (cand_end < inc_end || (cand_end == inc_end && l < incumbent.len))
      track(k, start, l);
  }

  if (!tracking_) return;
  for (Row& row : mem_) {
    if (row.tracked && row.created < start) ++row.counter;
  }
  Row& champ = mem_[static_cast<std::size_t>(idx_)];
  if (champ.counter > champ.len)
    throw internal_error("champion counter ran past its length");
  if (champ.counter == champ.len) flush(start, out);
}

void OccurrenceFilter::flush(StreamIndex step, std::vector<Occurrence>& out) {
  FlushRecord record;
  const bool observed = static_cast<bool>(observer_);
  if (observed) {
    record.step = step;
    record.rows = mem_snapshot();
  }

  const Row& champ = mem_[static_cast<std::size_t>(idx_)];
  out.push_back(Occurrence{champ.pos, champ.len, idx_, pattern_id_});
  if (observed) record.emitted.push_back(out.back());
  int last_len = champ.len;
  for (int k = idx_ + 1; k <= k_; ++k) {
    const Row& row = mem_[static_cast<std::size_t>(k)];
    if (!row.tracked) continue;
    if (row.counter - last_len > row.len) {
      out.push_back(Occurrence{row.pos, row.len, k, pattern_id_});
      if (observed) record.emitted.push_back(out.back());
      last_len = row.len;
    }
  }

  for (Row& row : mem_) row = Row{};
  idx_ = k_;
  tracking_ = false;
  if (observed) observer_(record);
}

void OccurrenceFilter::force_flush(StreamIndex step, std::vector<Occurrence>& out) {
  if (!tracking_) return;
  flush(step, out);
}

std::vector<MemRow> OccurrenceFilter::mem_snapshot() const {
  std::vector<MemRow> rows;
  rows.reserve(mem_.size());
  for (const Row& r : mem_) rows.push_back(MemRow{r.pos, r.len, r.counter, r.tracked});
  return rows;
}

}  // namespace oasm
