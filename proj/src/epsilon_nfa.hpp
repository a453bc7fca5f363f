#ifndef QCHECK_SRC_EPSILON_NFA_HPP
#define QCHECK_SRC_EPSILON_NFA_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcheck/automaton.hpp"

namespace qcheck::detail {

// Builder for automata with silent steps; eliminate() removes them.
class EpsilonNfa {
 public:
  StateId add_state(std::string name) {
    names_.push_back(std::move(name));
    final_.push_back(false);
    edges_.emplace_back();
    return static_cast<StateId>(names_.size() - 1);
  }
  void set_initial(StateId s) { initial_ = s; }
  void set_final(StateId s) { final_[s] = true; }
  void add(StateId from, std::optional<Action> label, StateId to) {
    edges_[from].emplace_back(std::move(label), to);
  }
  void add_epsilon(StateId from, StateId to) { add(from, std::nullopt, to); }
  std::size_t size() const { return names_.size(); }

  // Keeps the initial state and targets of labeled edges that remain
  // reachable; s --a--> u whenever u follows an a-edge leaving the silent
  // closure of s. Closure members are visited depth-first in edge order.
  Automaton eliminate() const {
    const std::size_t n = names_.size();
    std::vector<bool> keep(n, false);
    if (n == 0) return {};
    keep[initial_] = true;
    for (const auto& out : edges_) {
      for (const auto& [label, to] : out) {
        if (label) keep[to] = true;
      }
    }

    std::vector<std::vector<std::pair<Action, StateId>>> moves(n);
    std::vector<bool> accepting(n, false);
    std::vector<int> mark(n, -1);
    for (StateId s = 0; s < n; ++s) {
      if (!keep[s]) continue;
      std::vector<StateId> stack{s};
      mark[s] = static_cast<int>(s);
      while (!stack.empty()) {
        StateId c = stack.back();
        stack.pop_back();
        if (final_[c]) accepting[s] = true;
        for (const auto& [label, to] : edges_[c]) {
          if (label) {
            std::pair<Action, StateId> m{*label, to};
            if (std::find(moves[s].begin(), moves[s].end(), m) == moves[s].end()) moves[s].push_back(m);
          }
        }
        for (auto it = edges_[c].rbegin(); it != edges_[c].rend(); ++it) {
          if (!it->first && mark[it->second] != static_cast<int>(s)) {
            mark[it->second] = static_cast<int>(s);
            stack.push_back(it->second);
          }
        }
      }
    }

    // Reachable kept states, numbered in original id order.
    std::vector<bool> reach(n, false);
    std::vector<StateId> stack{initial_};
    reach[initial_] = true;
    while (!stack.empty()) {
      StateId s = stack.back();
      stack.pop_back();
      for (const auto& [label, to] : moves[s]) {
        if (!reach[to]) {
          reach[to] = true;
          stack.push_back(to);
        }
      }
    }
    Automaton out;
    std::vector<StateId> id(n, 0);
    for (StateId s = 0; s < n; ++s) {
      if (reach[s]) id[s] = out.add_state(names_[s]);
    }
    out.set_initial(id[initial_]);
    for (StateId s = 0; s < n; ++s) {
      if (!reach[s]) continue;
      if (accepting[s]) out.set_final(id[s]);
      for (const auto& [label, to] : moves[s]) out.add_transition(id[s], label, id[to]);
    }
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::vector<bool> final_;
  std::vector<std::vector<std::pair<std::optional<Action>, StateId>>> edges_;
  StateId initial_ = 0;
};

}  // namespace qcheck::detail

#endif  // QCHECK_SRC_EPSILON_NFA_HPP
