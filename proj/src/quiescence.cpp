#include "qcheck/quiescence.hpp"

#include <deque>
#include <map>

#include "qcheck/errors.hpp"

namespace qcheck {

namespace {

// Open calls at a state: process -> operation name.
using OpenCalls = std::map<ProcessId, std::string>;

std::string describe(const OpenCalls& calls) {
  std::string out = "{";
  bool first = true;
  for (const auto& [p, op] : calls) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(p) + ":" + op;
  }
  return out + "}";
}

OpenCalls step(const Automaton& a, const OpenCalls& calls, const Automaton::Transition& t) {
  const Action& act = t.label;
  if (act.is_delta()) return calls;
  OpenCalls next = calls;
  auto it = next.find(act.process);
  if (act.is_invoke()) {
    if (it != next.end()) {
      throw IllegalAutomaton("transition " + a.name(t.source) + " --" + to_string(act) + "--> " +
                             a.name(t.target) + " invokes on process " +
                             std::to_string(act.process) + " which is already pending");
    }
    next.emplace(act.process, act.op);
  } else {
    if (it == next.end() || it->second != act.op) {
      throw IllegalAutomaton("transition " + a.name(t.source) + " --" + to_string(act) + "--> " +
                             a.name(t.target) + " responds without a matching open invocation");
    }
    next.erase(it);
  }
  return next;
}

}  // namespace

std::string to_string(const PendingSet& pending) {
  std::string out = "{";
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(pending[i]);
  }
  return out + "}";
}

std::vector<bool> QuiescenceLabeling::quiescent_mask() const {
  std::vector<bool> out(pending.size());
  for (StateId s = 0; s < pending.size(); ++s) out[s] = is_quiescent(s);
  return out;
}

QuiescenceLabeling label_quiescence(const Automaton& a, const LabelOptions& options) {
  QuiescenceLabeling labeling;
  labeling.pending.resize(a.num_states());
  if (a.num_states() == 0) return labeling;

  std::vector<std::optional<OpenCalls>> open(a.num_states());
  std::deque<StateId> work{a.initial()};
  open[a.initial()] = OpenCalls{};
  while (!work.empty()) {
    StateId s = work.front();
    work.pop_front();
    for (std::size_t ti : a.outgoing(s)) {
      const auto& t = a.transition(ti);
      OpenCalls next = step(a, *open[s], t);
      auto& slot = open[t.target];
      if (!slot) {
        slot = std::move(next);
        work.push_back(t.target);
      } else if (*slot != next) {
        throw AmbiguousQuiescence(a.name(t.target), describe(*slot), describe(next));
      }
    }
  }

  for (StateId s = 0; s < a.num_states(); ++s) {
    if (!open[s]) continue;
    PendingSet pending;
    for (const auto& [p, op] : *open[s]) pending.push_back(p);
    labeling.pending[s] = std::move(pending);
    if (options.check_finals && a.is_final(s) && !labeling.pending[s]->empty()) {
      throw FinalNotQuiescent(a.name(s));
    }
  }
  return labeling;
}

std::vector<StateId> dead_states(const Automaton& a) {
  auto reach = reachable_states(a);
  auto coreach = coaccessible_states(a);
  std::vector<StateId> out;
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (reach[s] && !coreach[s]) out.push_back(s);
  }
  return out;
}

DeltaAutomaton build_spec_delta(const Automaton& spec) {
  auto labeling = label_quiescence(spec);
  DeltaAutomaton out;
  out.kind = DeltaKind::spec;
  out.base = spec;
  out.quiescent = labeling.quiescent_mask();
  out.delta_target.assign(spec.num_states(), std::nullopt);
  out.origin.resize(spec.num_states());
  for (StateId s = 0; s < spec.num_states(); ++s) {
    out.origin[s] = s;
    if (out.quiescent[s]) out.base.add_transition(s, Action::delta(), s);
  }
  return out;
}

DeltaAutomaton build_impl_delta(const Automaton& impl) {
  auto labeling = label_quiescence(impl);
  const auto n = static_cast<StateId>(impl.num_states());

  DeltaAutomaton out;
  out.kind = DeltaKind::impl;
  Automaton& base = out.base;
  for (StateId s = 0; s < n; ++s) base.add_state(impl.name(s));
  if (n == 0) return out;
  base.set_initial(impl.initial());

  out.delta_target.assign(n, std::nullopt);
  out.origin.resize(n);
  for (StateId s = 0; s < n; ++s) {
    out.origin[s] = s;
    if (!labeling.is_quiescent(s)) continue;
    std::string copy = impl.name(s) + "~d";
    while (impl.find_state(copy) || base.find_state(copy)) copy += "'";
    StateId d = base.add_state(copy);
    out.delta_target[s] = d;
    out.origin.push_back(s);
  }
  out.delta_target.resize(base.num_states(), std::nullopt);

  for (StateId s = 0; s < n; ++s) {
    if (out.delta_target[s]) base.add_transition(s, Action::delta(), *out.delta_target[s]);
  }
  for (const auto& t : impl.transitions()) {
    StateId from = out.delta_target[t.source] ? *out.delta_target[t.source] : t.source;
    base.add_transition(from, t.label, t.target);
  }
  for (StateId s = 0; s < n; ++s) {
    if (!impl.is_final(s)) continue;
    // label_quiescence already rejected non-quiescent reachable finals;
    // unreachable finals stay final without a copy.
    if (out.delta_target[s]) {
      base.set_final(*out.delta_target[s]);
    } else if (!labeling.reachable(s)) {
      base.set_final(s);
    }
  }

  out.quiescent.assign(base.num_states(), false);
  for (StateId s = 0; s < n; ++s) {
    if (out.delta_target[s]) {
      out.quiescent[s] = true;
      out.quiescent[*out.delta_target[s]] = true;
    }
  }
  return out;
}

}  // namespace qcheck
