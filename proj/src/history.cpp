#include "qcheck/history.hpp"

#include <algorithm>
#include <map>

#include "qcheck/errors.hpp"

namespace qcheck {

namespace {

// Pending invocations under leftmost claiming; each entry is an op name.
class PendingTracker {
 public:
  void consume(const Action& a) {
    if (a.is_delta()) return;
    auto& pending = by_process_[a.process];
    if (a.is_invoke()) {
      pending.push_back(a.op);
      ++count_;
      return;
    }
    auto it = std::find(pending.begin(), pending.end(), a.op);
    if (it != pending.end()) {
      pending.erase(it);
      --count_;
    }
  }

  bool quiescent() const noexcept { return count_ == 0; }

 private:
  std::map<ProcessId, std::vector<std::string>> by_process_;
  std::size_t count_ = 0;
};

Run filter(std::span<const Event> run, auto keep) {
  Run out;
  for (const auto& e : run) {
    if (keep(e.action)) out.push_back(e);
  }
  return out;
}

}  // namespace

Run make_run(std::span<const Action> actions) {
  Run run;
  run.reserve(actions.size());
  for (const auto& a : actions) run.push_back(Event{a, 0});
  assign_occurrences(run);
  return run;
}

void assign_occurrences(Run& run) {
  std::map<Action, std::uint32_t> seen;
  for (auto& e : run) e.occ = seen[e.action]++;
}

bool is_legal(std::span<const Event> run) {
  // Last action of each process; absent means nothing seen yet.
  std::map<ProcessId, const Action*> last;
  for (const auto& e : run) {
    const Action& a = e.action;
    if (a.is_delta()) continue;
    auto it = last.find(a.process);
    if (a.is_invoke()) {
      if (it != last.end() && it->second->is_invoke()) return false;
    } else {
      if (it == last.end() || !matches(*it->second, a)) return false;
    }
    last[a.process] = &a;
  }
  return true;
}

bool is_quiescent(std::span<const Event> run) {
  PendingTracker tracker;
  for (const auto& e : run) tracker.consume(e.action);
  return tracker.quiescent();
}

std::vector<std::size_t> quiescent_points(std::span<const Event> run) {
  std::vector<std::size_t> points{0};
  PendingTracker tracker;
  std::size_t n = 0;
  for (const auto& e : run) {
    if (e.action.is_delta()) continue;
    tracker.consume(e.action);
    ++n;
    if (tracker.quiescent()) points.push_back(n);
  }
  return points;
}

std::vector<Segment> segment(std::span<const Event> run) {
  if (!is_legal(run)) throw NotLegal("run is not legal");
  if (!is_quiescent(run)) throw NotQuiescent("run has a pending invocation");

  std::vector<Segment> segments;
  PendingTracker tracker;
  Segment current;
  std::size_t pos = 0;
  for (const auto& e : run) {
    if (e.action.is_delta()) continue;
    if (current.events.empty()) current.offset = pos;
    current.events.push_back(e);
    tracker.consume(e.action);
    ++pos;
    if (tracker.quiescent()) {
      segments.push_back(std::move(current));
      current = Segment{};
    }
  }
  return segments;
}

Run project_process(std::span<const Event> run, ProcessId p) {
  return filter(run, [p](const Action& a) { return !a.is_delta() && a.process == p; });
}

Run project_process_delta(std::span<const Event> run, ProcessId p) {
  return filter(run, [p](const Action& a) { return a.is_delta() || a.process == p; });
}

Run strip_delta(std::span<const Event> run) {
  return filter(run, [](const Action& a) { return !a.is_delta(); });
}

std::vector<ProcessId> processes(std::span<const Event> run) {
  std::vector<ProcessId> out;
  for (const auto& e : run) {
    if (!e.action.is_delta()) out.push_back(e.action.process);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Action> actions_of(std::span<const Event> run) {
  std::vector<Action> out;
  out.reserve(run.size());
  for (const auto& e : run) out.push_back(e.action);
  return out;
}

bool equiv_qsc(std::span<const Event> lhs, std::span<const Event> rhs) {
  auto procs = processes(lhs);
  for (ProcessId p : processes(rhs)) procs.push_back(p);
  std::sort(procs.begin(), procs.end());
  procs.erase(std::unique(procs.begin(), procs.end()), procs.end());
  for (ProcessId p : procs) {
    if (actions_of(project_process_delta(lhs, p)) != actions_of(project_process_delta(rhs, p))) {
      return false;
    }
  }
  return true;
}

}  // namespace qcheck
