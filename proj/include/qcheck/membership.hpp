#ifndef QCHECK_MEMBERSHIP_HPP
#define QCHECK_MEMBERSHIP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qcheck/automaton.hpp"
#include "qcheck/history.hpp"

namespace qcheck {

/// QC reorders freely inside a segment; QSC keeps per-process order.
enum class Mode { qc, qsc };

std::string to_string(Mode mode);

enum class AcceptorKind {
  qc_subset,    // states: consumed subsets
  qsc_subset,   // subsets, with per-process predecessors required
  qsc_counter,  // per-process position counters
};

inline constexpr std::size_t default_width_limit = 24;

/// Finite automaton accepting the equivalence class of one segment: all
/// permutations (qc_subset) or all process-order-preserving permutations
/// (qsc_subset, qsc_counter). States are encoded as 64-bit integers; the
/// automaton is never materialized.
class PermAcceptor {
 public:
  using State = std::uint64_t;

  PermAcceptor(std::span<const Event> segment, AcceptorKind kind,
               std::size_t width_limit = default_width_limit);

  AcceptorKind kind() const noexcept { return kind_; }
  const Run& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }

  State initial() const noexcept { return 0; }
  bool is_final(State s) const noexcept { return s == final_; }

  /// Consume events()[index]; nullopt when the acceptor has no such move.
  std::optional<State> step(State s, std::size_t index) const;

  /// Nominal state count: 2^k for subset kinds, prod_p (|pi_p| + 1) for
  /// the counter kind.
  std::uint64_t state_count() const noexcept { return state_count_; }

  /// Whether `word` (events compared with occurrence indices) is accepted.
  bool accepts(std::span<const Event> word) const;

  /// Local symbol of an action in this segment, or -1.
  int symbol_of(const Action& action) const;

  /// Canonical enabled event carrying `symbol`: the lowest unconsumed
  /// occurrence for QC, the next event of its process for QSC.
  std::optional<std::size_t> match(State s, int symbol) const;

 private:
  bool consumed(State s, std::size_t index) const;

  AcceptorKind kind_;
  Run events_;
  std::vector<int> symbol_;                       // per event
  std::vector<Action> symbols_;                   // local symbol table
  std::unordered_map<Action, int, ActionHash> symbol_index_;
  std::vector<std::vector<std::size_t>> by_symbol_;  // symbol -> event indices
  std::vector<std::uint64_t> predecessors_;       // qsc_subset: earlier same-process mask
  // counter kind
  std::vector<std::size_t> slot_;                 // per event: process slot
  std::vector<std::size_t> position_;             // per event: index within its process
  std::vector<std::vector<std::size_t>> slot_events_;
  std::vector<std::uint64_t> radix_;              // per slot: place value
  State final_ = 0;
  std::uint64_t state_count_ = 0;
};

/// Picks the acceptor representation: counters for QSC when the segment has
/// at most `proc_bound` processes, subsets otherwise. Throws SegmentTooLarge.
PermAcceptor build_perm_acceptor(const Segment& segment, Mode mode,
                                 std::optional<std::size_t> proc_bound = std::nullopt,
                                 std::size_t width_limit = default_width_limit);

enum class Result { pass, fail };

struct Stats {
  std::size_t explored_states = 0;  // product states visited
  std::size_t pairs = 0;            // correctness pair states stored
  std::size_t segments = 0;         // segments examined
  std::optional<std::size_t> bound;
  bool truncated = false;  // some segment was cut off at the bound
};

/// Outcome of a check. For membership the witness is an accepted spec run
/// equivalent to the input; for correctness it is a counterexample run whose
/// last checked segment is `unmatched_segment`.
struct Verdict {
  Result result = Result::fail;
  std::optional<Run> witness;
  std::vector<std::size_t> quiescent_points;  // segment boundaries of the witness
  std::optional<Run> unmatched_segment;
  Stats stats;
  std::vector<std::string> warnings;

  bool passed() const noexcept { return result == Result::pass; }
};

struct MembershipOptions {
  Mode mode = Mode::qc;
  std::optional<std::size_t> bound;       // max events per segment
  std::optional<std::size_t> proc_bound;  // enables the counter acceptor
  std::size_t width_limit = default_width_limit;
};

/// Decides whether a legal quiescent run is allowed by `spec` under the
/// chosen mode. Delta markers in the input are stripped and the run is
/// re-segmented; a mismatch between markers and quiescent points is reported
/// as a warning. Throws NotLegal, NotQuiescent, BoundExceeded, SegmentTooLarge.
Verdict check_membership(const Automaton& spec, std::span<const Event> run,
                         const MembershipOptions& options = {});

/// Reference implementation: walks every segment-wise permutation (filtered
/// by per-process order for QSC) through subset simulation of the spec.
/// Throws TooLarge when the run has more than `max_events` events.
Verdict check_membership_brute(const Automaton& spec, std::span<const Event> run, Mode mode,
                               std::size_t max_events = 8);

}  // namespace qcheck

#endif  // QCHECK_MEMBERSHIP_HPP
