#ifndef QCHECK_QUIESCENCE_HPP
#define QCHECK_QUIESCENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "qcheck/automaton.hpp"

namespace qcheck {

/// Sorted set of processes with an open invocation.
using PendingSet = std::vector<ProcessId>;

std::string to_string(const PendingSet& pending);

/// Per-state pending-process sets; unreachable states carry no label.
struct QuiescenceLabeling {
  std::vector<std::optional<PendingSet>> pending;

  bool reachable(StateId s) const { return pending.at(s).has_value(); }
  bool is_quiescent(StateId s) const { return reachable(s) && pending[s]->empty(); }
  std::vector<bool> quiescent_mask() const;
};

struct LabelOptions {
  /// Raise FinalNotQuiescent when a reachable final state has pending calls.
  bool check_finals = true;
};

/// Propagates pending sets from the initial state (invoke adds the event's
/// process, response removes it; delta leaves it unchanged).
///
/// Throws IllegalAutomaton when an invoke occurs for a pending process or a
/// response for one that is not pending (or whose open call is a different
/// operation), and AmbiguousQuiescence when two paths disagree on a state.
QuiescenceLabeling label_quiescence(const Automaton& a, const LabelOptions& options = {});

/// Reachable states from which no final state can be reached. Diagnostic only.
std::vector<StateId> dead_states(const Automaton& a);

enum class DeltaKind { spec, impl };

/// An automaton over events plus delta, with quiescence bookkeeping.
///
/// For the impl kind, states 0..n-1 are the original states (same ids) and
/// each quiescent original state q owns a fresh copy q_delta reached by the
/// only delta transition leaving q.
struct DeltaAutomaton {
  Automaton base;
  DeltaKind kind = DeltaKind::spec;
  std::vector<bool> quiescent;                       // indexed by base state
  std::vector<std::optional<StateId>> delta_target;  // impl: q -> q_delta
  std::vector<StateId> origin;                       // base state -> original state
};

/// Adds a delta self-loop at every quiescent state; nothing else changes.
DeltaAutomaton build_spec_delta(const Automaton& spec);

/// Reroutes the transitions leaving each quiescent state q through a fresh
/// q_delta reached by (q, delta, q_delta); finals move to the copies.
DeltaAutomaton build_impl_delta(const Automaton& impl);

}  // namespace qcheck

#endif  // QCHECK_QUIESCENCE_HPP
