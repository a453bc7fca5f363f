#ifndef QCHECK_HISTORY_HPP
#define QCHECK_HISTORY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "qcheck/event.hpp"

namespace qcheck {

/// A finite sequence of events; may contain delta markers.
using Run = std::vector<Event>;

/// An end-to-end quiescent slice of a run: quiescent, with no nonempty
/// proper prefix quiescent.
struct Segment {
  std::size_t offset = 0;  // position of the first event in the source run
  Run events;

  bool operator==(const Segment&) const = default;
};

/// Builds a run from actions, numbering repeated identical actions
/// left to right.
Run make_run(std::span<const Action> actions);
void assign_occurrences(Run& run);

bool is_legal(std::span<const Event> run);
bool is_quiescent(std::span<const Event> run);

/// Prefix lengths i (0..n) at which run[0, i) is quiescent. Delta markers are
/// skipped; positions count non-delta events.
std::vector<std::size_t> quiescent_points(std::span<const Event> run);

/// Unique decomposition of a legal quiescent run into end-to-end quiescent
/// segments. Throws NotLegal / NotQuiescent.
std::vector<Segment> segment(std::span<const Event> run);

Run project_process(std::span<const Event> run, ProcessId p);
Run project_process_delta(std::span<const Event> run, ProcessId p);
Run strip_delta(std::span<const Event> run);

/// Sorted, deduplicated processes of the non-delta events.
std::vector<ProcessId> processes(std::span<const Event> run);

/// The quiescent sequential consistency equivalence: delta-preserving
/// projections agree on every process occurring in either run. Occurrence
/// indices are ignored.
bool equiv_qsc(std::span<const Event> lhs, std::span<const Event> rhs);

std::vector<Action> actions_of(std::span<const Event> run);

}  // namespace qcheck

#endif  // QCHECK_HISTORY_HPP
