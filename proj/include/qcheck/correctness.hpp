#ifndef QCHECK_CORRECTNESS_HPP
#define QCHECK_CORRECTNESS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qcheck/automaton.hpp"
#include "qcheck/membership.hpp"
#include "qcheck/quiescence.hpp"

namespace qcheck {

/// What to do with a path that is still non-quiescent and extensible when it
/// reaches the bound: raise BoundExceeded, or drop it and record truncation.
enum class BoundPolicy { reject, truncate };

/// An end-to-end quiescent path label and the quiescent state it ends in
/// (an id of the delta automaton's base).
struct SegmentPath {
  Run events;
  StateId target;

  bool operator==(const SegmentPath&) const = default;
};

/// Every end-to-end quiescent path of at most `bound` events leaving the
/// quiescent state `q`, in depth-first declaration order. For an impl-kind
/// automaton `q` is an original state and the path starts after its delta
/// step. Paths that die before quiescence are dropped.
///
/// Throws BoundExceeded (reject policy) or sets *truncated (truncate policy)
/// when a non-quiescent path of length `bound` can still be extended.
std::vector<SegmentPath> enumerate_segments(const DeltaAutomaton& qd, StateId q, std::size_t bound,
                                            BoundPolicy policy = BoundPolicy::reject,
                                            bool* truncated = nullptr);

/// All spec states reachable from a state in `from` along a path whose label
/// is equivalent to `segment` under `mode`. Sorted, without duplicates.
/// Throws SegmentTooLarge as check_membership does.
std::vector<StateId> spec_successors(const Automaton& spec, std::span<const StateId> from,
                                     std::span<const Event> segment, Mode mode,
                                     std::optional<std::size_t> proc_bound = std::nullopt,
                                     std::size_t width_limit = default_width_limit,
                                     std::size_t* explored = nullptr);

inline constexpr std::size_t default_pair_limit = 1'000'000;

struct CorrectnessOptions {
  Mode mode = Mode::qc;
  std::size_t bound = 8;
  BoundPolicy policy = BoundPolicy::reject;
  std::size_t pair_limit = default_pair_limit;
  std::optional<std::size_t> proc_bound;
  std::size_t width_limit = default_width_limit;
  unsigned workers = 1;  // >1 expands each breadth-first level in parallel
  bool warn_dead = false;  // report implementation states that cannot reach a final state
};

/// Bounded correctness: is every run of `impl` whose segments have at most
/// `bound` events allowed by `spec` under the mode?
///
/// Explores (implementation quiescent state, set of spec states) pairs
/// breadth-first from (initial, {initial}). A FAIL verdict carries a
/// complete implementation run, its segment boundaries, and the segment
/// after which no equivalent spec path remains.
///
/// Throws the labeling errors of either automaton, BoundExceeded,
/// SegmentTooLarge, and ResourceLimit when more than `pair_limit` pairs are
/// stored.
Verdict check_correctness(const Automaton& spec, const Automaton& impl,
                          const CorrectnessOptions& options = {});

}  // namespace qcheck

#endif  // QCHECK_CORRECTNESS_HPP
