#ifndef QCHECK_AUTOMATON_HPP
#define QCHECK_AUTOMATON_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qcheck/event.hpp"
#include "qcheck/history.hpp"

namespace qcheck {

using StateId = std::uint32_t;

/// Nondeterministic finite automaton with named states. Transitions keep
/// their declaration order; every search in this library visits outgoing
/// transitions in that order.
template <class Label>
class BasicAutomaton {
 public:
  struct Transition {
    StateId source;
    Label label;
    StateId target;

    bool operator==(const Transition&) const = default;
  };

  StateId add_state(std::string name) {
    if (index_.count(name) != 0) {
      throw std::invalid_argument("duplicate state '" + name + "'");
    }
    auto id = static_cast<StateId>(names_.size());
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    final_.push_back(false);
    outgoing_.emplace_back();
    return id;
  }

  std::optional<StateId> find_state(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  void set_initial(StateId s) {
    check(s);
    initial_ = s;
  }

  void set_final(StateId s, bool is_final = true) {
    check(s);
    final_[s] = is_final;
  }

  void add_transition(StateId source, Label label, StateId target) {
    check(source);
    check(target);
    outgoing_[source].push_back(transitions_.size());
    transitions_.push_back(Transition{source, std::move(label), target});
  }

  std::size_t num_states() const noexcept { return names_.size(); }
  std::size_t num_transitions() const noexcept { return transitions_.size(); }
  const std::string& name(StateId s) const { return names_.at(s); }
  StateId initial() const noexcept { return initial_; }
  bool is_final(StateId s) const { return final_.at(s); }

  std::vector<StateId> finals() const {
    std::vector<StateId> out;
    for (StateId s = 0; s < num_states(); ++s) {
      if (final_[s]) out.push_back(s);
    }
    return out;
  }

  std::span<const Transition> transitions() const noexcept { return transitions_; }
  const Transition& transition(std::size_t index) const { return transitions_.at(index); }

  /// Indices into transitions() of the edges leaving `s`, in declaration order.
  std::span<const std::size_t> outgoing(StateId s) const { return outgoing_.at(s); }

  bool operator==(const BasicAutomaton& other) const {
    return names_ == other.names_ && initial_ == other.initial_ && final_ == other.final_ &&
           transitions_ == other.transitions_;
  }

 private:
  void check(StateId s) const {
    if (s >= names_.size()) throw std::out_of_range("state id out of range");
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> index_;
  StateId initial_ = 0;
  std::vector<bool> final_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::size_t>> outgoing_;
};

/// Automaton over events (specifications and implementations).
using Automaton = BasicAutomaton<Action>;
/// Automaton over plain symbols (Parikh-image inputs).
using WordAutomaton = BasicAutomaton<std::string>;

template <class Label>
std::vector<bool> reachable_states(const BasicAutomaton<Label>& a) {
  std::vector<bool> seen(a.num_states(), false);
  if (a.num_states() == 0) return seen;
  std::vector<StateId> stack{a.initial()};
  seen[a.initial()] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (std::size_t t : a.outgoing(s)) {
      StateId n = a.transition(t).target;
      if (!seen[n]) {
        seen[n] = true;
        stack.push_back(n);
      }
    }
  }
  return seen;
}

/// States from which some final state is reachable.
template <class Label>
std::vector<bool> coaccessible_states(const BasicAutomaton<Label>& a) {
  std::vector<std::vector<StateId>> reverse(a.num_states());
  for (const auto& t : a.transitions()) reverse[t.target].push_back(t.source);
  std::vector<bool> seen(a.num_states(), false);
  std::vector<StateId> stack = a.finals();
  for (StateId s : stack) seen[s] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : reverse[s]) {
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  return seen;
}

/// True iff no cycle is reachable from the initial state.
template <class Label>
bool is_acyclic(const BasicAutomaton<Label>& a) {
  if (a.num_states() == 0) return true;
  enum Color : std::uint8_t { white, grey, black };
  std::vector<Color> color(a.num_states(), white);
  // Explicit stack of (state, next outgoing position).
  std::vector<std::pair<StateId, std::size_t>> stack{{a.initial(), 0}};
  color[a.initial()] = grey;
  while (!stack.empty()) {
    auto& [s, pos] = stack.back();
    auto out = a.outgoing(s);
    if (pos == out.size()) {
      color[s] = black;
      stack.pop_back();
      continue;
    }
    StateId n = a.transition(out[pos++]).target;
    if (color[n] == grey) return false;
    if (color[n] == white) {
      color[n] = grey;
      stack.emplace_back(n, 0);
    }
  }
  return true;
}

/// Subset simulation; returns the states reachable from `from` by `word`.
template <class Label, class Symbol, class Eq>
std::vector<StateId> simulate(const BasicAutomaton<Label>& a, std::vector<StateId> from,
                              std::span<const Symbol> word, Eq equal) {
  std::vector<bool> mark(a.num_states(), false);
  for (const auto& sym : word) {
    std::vector<StateId> next;
    for (StateId s : from) {
      for (std::size_t t : a.outgoing(s)) {
        const auto& tr = a.transition(t);
        if (!mark[tr.target] && equal(tr.label, sym)) {
          mark[tr.target] = true;
          next.push_back(tr.target);
        }
      }
    }
    for (StateId s : next) mark[s] = false;
    std::sort(next.begin(), next.end());
    from = std::move(next);
    if (from.empty()) break;
  }
  return from;
}

/// Membership of a run in L(a); occurrence indices are ignored.
inline bool accepts(const Automaton& a, std::span<const Event> run) {
  if (a.num_states() == 0) return false;
  auto end = simulate(a, {a.initial()}, run,
                      [](const Action& l, const Event& e) { return l == e.action; });
  return std::any_of(end.begin(), end.end(), [&](StateId s) { return a.is_final(s); });
}

inline bool accepts(const WordAutomaton& a, std::span<const std::string> word) {
  if (a.num_states() == 0) return false;
  auto end = simulate(a, {a.initial()}, word,
                      [](const std::string& l, const std::string& s) { return l == s; });
  return std::any_of(end.begin(), end.end(), [&](StateId s) { return a.is_final(s); });
}

/// Distinct transition labels in declaration order of first use.
template <class Label>
std::vector<Label> alphabet(const BasicAutomaton<Label>& a) {
  std::vector<Label> out;
  for (const auto& t : a.transitions()) {
    if (std::find(out.begin(), out.end(), t.label) == out.end()) out.push_back(t.label);
  }
  return out;
}

}  // namespace qcheck

#endif  // QCHECK_AUTOMATON_HPP
