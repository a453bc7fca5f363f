#ifndef QCHECK_TESTS_ORACLE_HPP
#define QCHECK_TESTS_ORACLE_HPP

// Naive reference computations and random instance builders shared by the
// unit tests and the acceptance driver. Nothing here calls into the checking
// algorithms under test.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qcheck/automaton.hpp"
#include "qcheck/event.hpp"
#include "qcheck/generators.hpp"
#include "qcheck/history.hpp"

namespace oracle {

using qcheck::Action;
using qcheck::Automaton;
using qcheck::Event;
using qcheck::ProcessId;
using qcheck::Run;
using qcheck::StateId;

inline Action inv(ProcessId p, std::string op, std::optional<std::string> v = {}) {
  return Action::invoke(p, std::move(op), std::move(v));
}
inline Action res(ProcessId p, std::string op, std::optional<std::string> v = {}) {
  return Action::response(p, std::move(op), std::move(v));
}

inline std::vector<Action> labels(const Run& run) {
  std::vector<Action> out;
  for (const auto& e : run) out.push_back(e.action);
  return out;
}

// Per-process subsequences, keyed by process.
inline std::map<ProcessId, std::vector<Action>> projections(const std::vector<Action>& w) {
  std::map<ProcessId, std::vector<Action>> out;
  for (const auto& a : w) out[a.process].push_back(a);
  return out;
}

inline bool same_multiset(std::vector<Action> a, std::vector<Action> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// w is an arbitrary reordering of u.
inline bool is_permutation_of(const std::vector<Action>& w, const std::vector<Action>& u) {
  return same_multiset(w, u);
}

// w reorders u keeping every process's own order.
inline bool is_process_order_permutation_of(const std::vector<Action>& w, const std::vector<Action>& u) {
  return same_multiset(w, u) && projections(w) == projections(u);
}

// Every distinct reordering of u.
inline std::set<std::vector<Action>> permutations(std::vector<Action> u) {
  std::set<std::vector<Action>> out;
  std::sort(u.begin(), u.end());
  do {
    out.insert(u);
  } while (std::next_permutation(u.begin(), u.end()));
  return out;
}

// Pending-process bookkeeping straight from the definitions.
inline bool legal(const std::vector<Action>& w) {
  std::map<ProcessId, std::optional<std::string>> open;
  for (const auto& a : w) {
    auto& o = open[a.process];
    if (a.is_invoke()) {
      if (o) return false;
      o = a.op;
    } else if (a.is_response()) {
      if (!o || *o != a.op) return false;
      o.reset();
    }
  }
  return true;
}

inline bool quiescent(const std::vector<Action>& w) {
  std::map<ProcessId, int> open;
  for (const auto& a : w) {
    if (a.is_invoke()) ++open[a.process];
    if (a.is_response()) --open[a.process];
  }
  return std::all_of(open.begin(), open.end(), [](const auto& kv) { return kv.second == 0; });
}

// Split points of a legal run: 0, then every index after which nothing is
// pending.
inline std::vector<std::size_t> cuts(const std::vector<Action>& w) {
  std::vector<std::size_t> out{0};
  int open = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    open += w[i].is_invoke() ? 1 : (w[i].is_response() ? -1 : 0);
    if (open == 0) out.push_back(i + 1);
  }
  return out;
}

// Set of states reachable by reading w from any state of `from`.
inline std::set<StateId> read(const Automaton& a, std::set<StateId> from, const std::vector<Action>& w) {
  for (const auto& x : w) {
    std::set<StateId> next;
    for (StateId s : from) {
      for (const auto& t : a.transitions()) {
        if (t.source == s && t.label == x) next.insert(t.target);
      }
    }
    from = std::move(next);
  }
  return from;
}

// Membership by enumerating every reordering of every segment and tracking
// the reachable spec states. With `any_state` the run only has to be
// readable, not accepted.
inline bool allowed(const Automaton& spec, const std::vector<Action>& w, bool sequential,
                    bool any_state = false) {
  auto cut = cuts(w);
  std::set<StateId> current{spec.initial()};
  for (std::size_t k = 0; k + 1 < cut.size(); ++k) {
    std::vector<Action> seg(w.begin() + static_cast<long>(cut[k]), w.begin() + static_cast<long>(cut[k + 1]));
    std::set<StateId> next;
    for (const auto& p : permutations(seg)) {
      if (sequential && projections(p) != projections(seg)) continue;
      auto r = read(spec, current, p);
      next.insert(r.begin(), r.end());
    }
    current = std::move(next);
    if (current.empty()) return false;
  }
  if (any_state) return true;
  return std::any_of(current.begin(), current.end(), [&](StateId s) { return spec.is_final(s); });
}

// Every path label of an acyclic automaton that ends in a state satisfying
// `keep`, as (label, end state).
template <class Keep>
std::vector<std::pair<std::vector<Action>, StateId>> paths(const Automaton& a, Keep keep) {
  std::vector<std::pair<std::vector<Action>, StateId>> out;
  std::vector<Action> word;
  auto dfs = [&](auto&& self, StateId s) -> void {
    if (keep(s)) out.emplace_back(word, s);
    for (const auto& t : a.transitions()) {
      if (t.source != s) continue;
      word.push_back(t.label);
      self(self, t.target);
      word.pop_back();
    }
  };
  dfs(dfs, a.initial());
  return out;
}

// Parikh image of a finite word language, by listing accepted words.
inline std::set<std::map<std::string, int>> parikh_image(const qcheck::WordAutomaton& a) {
  std::set<std::map<std::string, int>> out;
  std::map<std::string, int> v;
  auto dfs = [&](auto&& self, StateId s) -> void {
    if (a.is_final(s)) {
      std::map<std::string, int> clean;
      for (auto& [k, n] : v) {
        if (n != 0) clean[k] = n;
      }
      out.insert(clean);
    }
    for (const auto& t : a.transitions()) {
      if (t.source != s) continue;
      ++v[t.label];
      self(self, t.target);
      --v[t.label];
    }
  };
  dfs(dfs, a.initial());
  return out;
}

inline bool parikh_included(const qcheck::WordAutomaton& a, const qcheck::WordAutomaton& b) {
  auto ia = parikh_image(a);
  auto ib = parikh_image(b);
  return std::includes(ib.begin(), ib.end(), ia.begin(), ia.end());
}

inline bool one_in_three(const qcheck::SatInstance& inst) {
  for (unsigned long mask = 0; mask < (1ul << inst.num_vars); ++mask) {
    bool ok = true;
    for (const auto& c : inst.clauses) {
      int count = 0;
      for (int lit : c) {
        bool value = (mask >> (std::abs(lit) - 1)) & 1;
        count += (lit > 0) == value;
      }
      ok = ok && count == 1;
    }
    if (ok) return true;
  }
  return false;
}

// ---- random instances ----------------------------------------------------

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Legal quiescent run with `pairs` call pairs over processes 1..procs and
// the given operations; responses close calls in random order.
inline std::vector<Action> random_run(Rng& rng, std::size_t pairs, ProcessId procs,
                                      const std::vector<std::string>& ops) {
  std::vector<Action> w;
  std::map<ProcessId, std::string> open;
  std::size_t started = 0;
  while (started < pairs || !open.empty()) {
    std::vector<ProcessId> idle;
    for (ProcessId p = 1; p <= procs; ++p) {
      if (!open.count(p)) idle.push_back(p);
    }
    bool can_start = started < pairs && !idle.empty();
    if (can_start && (open.empty() || pick(rng, 2) == 0)) {
      ProcessId p = idle[pick(rng, idle.size())];
      std::string op = ops[pick(rng, ops.size())];
      w.push_back(inv(p, op));
      open[p] = op;
      ++started;
    } else {
      auto it = std::next(open.begin(), static_cast<long>(pick(rng, open.size())));
      w.push_back(res(it->first, it->second));
      open.erase(it);
    }
  }
  return w;
}

// Automaton with `states` states and random transitions over `alphabet`.
inline Automaton random_automaton(Rng& rng, std::size_t states, const std::vector<Action>& alphabet,
                                  std::size_t transitions) {
  Automaton a;
  for (std::size_t i = 0; i < states; ++i) a.add_state("s" + std::to_string(i));
  a.set_initial(0);
  for (std::size_t i = 0; i < states; ++i) {
    if (pick(rng, 2) == 0) a.set_final(static_cast<StateId>(i));
  }
  std::set<std::tuple<StateId, Action, StateId>> seen;
  for (std::size_t i = 0; i < transitions; ++i) {
    auto s = static_cast<StateId>(pick(rng, states));
    auto t = static_cast<StateId>(pick(rng, states));
    const Action& x = alphabet[pick(rng, alphabet.size())];
    if (seen.insert({s, x, t}).second) a.add_transition(s, x, t);
  }
  return a;
}

// Acyclic word automaton: edges only go from lower to higher state index.
inline qcheck::WordAutomaton random_acyclic_words(Rng& rng, std::size_t states,
                                                  const std::vector<std::string>& alphabet) {
  qcheck::WordAutomaton a;
  for (std::size_t i = 0; i < states; ++i) a.add_state("w" + std::to_string(i));
  a.set_initial(0);
  for (std::size_t i = 0; i < states; ++i) {
    if (pick(rng, 3) == 0 || i + 1 == states) a.set_final(static_cast<StateId>(i));
    for (std::size_t j = i + 1; j < states; ++j) {
      if (pick(rng, 2) == 0) a.add_transition(static_cast<StateId>(i), alphabet[pick(rng, alphabet.size())],
                                              static_cast<StateId>(j));
    }
  }
  return a;
}

// Sequential spec: quiescent hub states joined by complete call pairs, with
// each call's midpoint a separate state. At most `max_states` states.
inline Automaton random_sequential_spec(Rng& rng, std::size_t max_states) {
  Automaton a;
  std::size_t hubs = 1 + pick(rng, std::max<std::size_t>(1, max_states / 2));
  for (std::size_t i = 0; i < hubs; ++i) a.add_state("h" + std::to_string(i));
  a.set_initial(0);
  for (std::size_t i = 0; i < hubs; ++i) {
    if (i == 0 || pick(rng, 2) == 0) a.set_final(static_cast<StateId>(i));
  }
  const std::vector<std::string> ops{"a", "b"};
  while (a.num_states() < max_states) {
    auto from = static_cast<StateId>(pick(rng, hubs));
    auto to = static_cast<StateId>(pick(rng, hubs));
    auto p = static_cast<ProcessId>(1 + pick(rng, 2));
    std::string op = ops[pick(rng, ops.size())];
    StateId mid = a.add_state("m" + std::to_string(a.num_states()));
    a.add_transition(from, inv(p, op), mid);
    a.add_transition(mid, res(p, op), to);
    if (pick(rng, 3) == 0) break;
  }
  return a;
}

inline qcheck::SatInstance random_sat(Rng& rng, std::size_t max_vars, std::size_t max_clauses) {
  qcheck::SatInstance inst;
  inst.num_vars = 1 + pick(rng, max_vars);
  std::size_t n = pick(rng, max_clauses + 1);
  for (std::size_t j = 0; j < n; ++j) {
    std::array<int, 3> c{};
    for (int& lit : c) {
      lit = static_cast<int>(1 + pick(rng, inst.num_vars));
      if (pick(rng, 2) == 0) lit = -lit;
    }
    inst.clauses.push_back(c);
  }
  return inst;
}

}  // namespace oracle

#endif  // QCHECK_TESTS_ORACLE_HPP
