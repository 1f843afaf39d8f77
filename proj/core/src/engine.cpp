#include "oasm/engine.hpp"

#include <algorithm>
#include <cassert>

#include "oasm/errors.hpp"
#include "oasm/levdist.hpp"

namespace oasm {

Engine::Engine(Pattern pattern, std::string pattern_id)
    : pattern_(std::move(pattern)),
      pattern_id_(std::move(pattern_id)),
      window_len_(pattern_.length() + pattern_.threshold()),
      filter_(pattern_.length(), pattern_.threshold(), pattern_id_) {
  const std::uint64_t history =
      worst_case_delay(pattern_.length(), pattern_.threshold()) +
      static_cast<std::uint64_t>(window_len_);
  ring_.resize(static_cast<std::size_t>(history));
  scratch_.reserve(static_cast<std::size_t>(window_len_));
}

std::vector<Occurrence> Engine::push(Symbol s) {
  if (finalized_) throw state_error("push after finalize");
  if (!pattern_.alphabet().contains_code(s))
    throw input_error("stream symbol code " + std::to_string(s) + " not in alphabet");

  if (ring_size_ == ring_.size()) {
    head_ = (head_ + 1) % ring_.size();
    ++ring_base_;
    --ring_size_;
  }
  ring_[(head_ + ring_size_) % ring_.size()] = s;
  ++ring_size_;
  ++consumed_;

  std::vector<Occurrence> out;
  if (consumed_ - next_start_ >= static_cast<StreamIndex>(window_len_)) {
    run_step(next_start_, out);
    ++next_start_;
  }
  return out;
}

std::vector<Occurrence> Engine::finalize() {
  if (finalized_) throw state_error("finalize called twice");
  std::vector<Occurrence> out;
  while (next_start_ < consumed_) {
    run_step(next_start_, out);
    ++next_start_;
  }
  // a pending champion always completes by the last start position, so this
  // is a no-op; kept for direct filter feeds
  filter_.force_flush(consumed_ == 0 ? 0 : consumed_ - 1, out);
  finalized_ = true;
  return out;
}

void Engine::run_step(StreamIndex start, std::vector<Occurrence>& out) {
  const StreamIndex avail = consumed_ - start;
  const auto len = static_cast<std::size_t>(
      std::min<StreamIndex>(avail, static_cast<StreamIndex>(window_len_)));
  assert(len >= 1);
  scratch_.clear();
  for (std::size_t i = 0; i < len; ++i) {
    const StreamIndex abs = start + i;
    assert(abs >= ring_base_);
    scratch_.push_back(ring_[(head_ + (abs - ring_base_)) % ring_.size()]);
  }
  // symbols were validated on push, so the unchecked path is safe here
  levdist::window_distances_into(pattern_, scratch_, start, dp_, distances_);

#ifndef NDEBUG
  const std::size_t before = out.size();
#endif
  filter_.step(start, distances_, out);
#ifndef NDEBUG
  // re-verify every emitted occurrence against a direct distance computation
  for (std::size_t i = before; i < out.size(); ++i) {
    const auto text = recent(out[i].start, out[i].length);
    assert(levdist::wagner_fischer(pattern_, text) == out[i].distance);
  }
#endif
}

std::vector<Symbol> Engine::recent(StreamIndex start, int length) const {
  if (start < ring_base_ ||
      start + static_cast<StreamIndex>(length) > ring_base_ + ring_size_)
    throw internal_error("requested symbols already evicted from history");
  std::vector<Symbol> out;
  out.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    const StreamIndex abs = start + static_cast<StreamIndex>(i);
    out.push_back(ring_[(head_ + (abs - ring_base_)) % ring_.size()]);
  }
  return out;
}

std::size_t Engine::state_bytes() const {
  return ring_.capacity() * sizeof(Symbol) + scratch_.capacity() * sizeof(Symbol) +
         (static_cast<std::size_t>(pattern_.threshold()) + 1) * sizeof(MemRow) +
         pattern_.symbols().capacity() * sizeof(Symbol) + sizeof(*this);
}

}  // namespace oasm
