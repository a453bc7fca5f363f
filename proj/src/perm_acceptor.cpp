#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "qcheck/errors.hpp"
#include "qcheck/membership.hpp"

namespace qcheck {

std::string to_string(Mode mode) { return mode == Mode::qc ? "qc" : "qsc"; }

PermAcceptor::PermAcceptor(std::span<const Event> segment, AcceptorKind kind,
                           std::size_t width_limit)
    : kind_(kind), events_(segment.begin(), segment.end()) {
  const std::size_t k = events_.size();

  for (const auto& e : events_) {
    if (e.action.is_delta()) throw std::invalid_argument("segment contains a delta marker");
    auto [it, inserted] = symbol_index_.emplace(e.action, static_cast<int>(symbols_.size()));
    if (inserted) {
      symbols_.push_back(e.action);
      by_symbol_.emplace_back();
    }
    symbol_.push_back(it->second);
    by_symbol_[it->second].push_back(symbol_.size() - 1);
  }

  std::map<ProcessId, std::size_t> slots;
  for (const auto& e : events_) slots.emplace(e.action.process, 0);
  std::size_t next_slot = 0;
  for (auto& [p, slot] : slots) slot = next_slot++;
  slot_events_.resize(slots.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t slot = slots.at(events_[i].action.process);
    slot_.push_back(slot);
    position_.push_back(slot_events_[slot].size());
    slot_events_[slot].push_back(i);
  }

  if (kind_ == AcceptorKind::qsc_counter) {
    state_count_ = 1;
    for (const auto& evs : slot_events_) {
      radix_.push_back(state_count_);
      const std::uint64_t width = evs.size() + 1;
      if (state_count_ > std::numeric_limits<std::uint64_t>::max() / 2 / width) {
        throw SegmentTooLarge("counter acceptor state space exceeds 2^63 for a segment of " +
                              std::to_string(k) + " events");
      }
      state_count_ *= width;
    }
    final_ = 0;
    for (std::size_t slot = 0; slot < slot_events_.size(); ++slot) {
      final_ += radix_[slot] * slot_events_[slot].size();
    }
    return;
  }

  if (k > width_limit || k > 63) {
    throw SegmentTooLarge("segment of " + std::to_string(k) + " events exceeds the width limit of " +
                          std::to_string(std::min<std::size_t>(width_limit, 63)));
  }
  state_count_ = std::uint64_t{1} << k;
  final_ = state_count_ - 1;
  if (kind_ == AcceptorKind::qsc_subset) {
    predecessors_.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t slot = slot_[i];
      for (std::size_t pos = 0; pos < position_[i]; ++pos) {
        predecessors_[i] |= std::uint64_t{1} << slot_events_[slot][pos];
      }
    }
  }
}

bool PermAcceptor::consumed(State s, std::size_t index) const {
  if (kind_ == AcceptorKind::qsc_counter) {
    std::size_t slot = slot_[index];
    std::uint64_t counter = (s / radix_[slot]) % (slot_events_[slot].size() + 1);
    return counter > position_[index];
  }
  return (s >> index) & 1U;
}

std::optional<PermAcceptor::State> PermAcceptor::step(State s, std::size_t index) const {
  if (index >= events_.size()) return std::nullopt;
  switch (kind_) {
    case AcceptorKind::qc_subset:
      if (consumed(s, index)) return std::nullopt;
      return s | (std::uint64_t{1} << index);
    case AcceptorKind::qsc_subset:
      if (consumed(s, index) || (s & predecessors_[index]) != predecessors_[index]) {
        return std::nullopt;
      }
      return s | (std::uint64_t{1} << index);
    case AcceptorKind::qsc_counter: {
      std::size_t slot = slot_[index];
      std::uint64_t counter = (s / radix_[slot]) % (slot_events_[slot].size() + 1);
      if (counter != position_[index]) return std::nullopt;
      return s + radix_[slot];
    }
  }
  return std::nullopt;
}

bool PermAcceptor::accepts(std::span<const Event> word) const {
  State s = initial();
  for (const auto& e : word) {
    auto it = std::find(events_.begin(), events_.end(), e);
    if (it == events_.end()) return false;
    auto next = step(s, static_cast<std::size_t>(it - events_.begin()));
    if (!next) return false;
    s = *next;
  }
  return is_final(s);
}

int PermAcceptor::symbol_of(const Action& action) const {
  auto it = symbol_index_.find(action);
  return it == symbol_index_.end() ? -1 : it->second;
}

std::optional<std::size_t> PermAcceptor::match(State s, int symbol) const {
  if (symbol < 0 || static_cast<std::size_t>(symbol) >= by_symbol_.size()) return std::nullopt;
  const auto& candidates = by_symbol_[symbol];
  if (kind_ == AcceptorKind::qc_subset) {
    for (std::size_t i : candidates) {
      if (!consumed(s, i)) return i;
    }
    return std::nullopt;
  }
  // Every occurrence of a symbol lives on one process; only that process's
  // next unconsumed event can move.
  const auto& evs = slot_events_[slot_[candidates.front()]];
  for (std::size_t i : evs) {
    if (consumed(s, i)) continue;
    if (symbol_[i] == symbol) return i;
    return std::nullopt;
  }
  return std::nullopt;
}

PermAcceptor build_perm_acceptor(const Segment& segment, Mode mode,
                                 std::optional<std::size_t> proc_bound, std::size_t width_limit) {
  if (mode == Mode::qc) return PermAcceptor(segment.events, AcceptorKind::qc_subset, width_limit);
  if (proc_bound && processes(segment.events).size() <= *proc_bound) {
    return PermAcceptor(segment.events, AcceptorKind::qsc_counter, width_limit);
  }
  return PermAcceptor(segment.events, AcceptorKind::qsc_subset, width_limit);
}

}  // namespace qcheck
