#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "qcheck/errors.hpp"
#include "qcheck/generators.hpp"
#include "qcheck/io.hpp"
#include "qcheck/quiescence.hpp"

using namespace qcheck;
using oracle::inv;
using oracle::res;

namespace {

Automaton chain(const Run& run) {
  Automaton a;
  for (std::size_t i = 0; i <= run.size(); ++i) a.add_state("c" + std::to_string(i));
  a.set_initial(0);
  a.set_final(static_cast<StateId>(run.size()));
  for (std::size_t i = 0; i < run.size(); ++i) {
    a.add_transition(static_cast<StateId>(i), run[i].action, static_cast<StateId>(i + 1));
  }
  return a;
}

// Accepted words of length at most n.
std::set<std::vector<Action>> words_upto(const Automaton& a, std::size_t n) {
  std::set<std::vector<Action>> out;
  std::vector<Action> w;
  auto dfs = [&](auto&& self, StateId s) -> void {
    if (a.is_final(s)) out.insert(w);
    if (w.size() == n) return;
    for (std::size_t t : a.outgoing(s)) {
      w.push_back(a.transition(t).label);
      self(self, a.transition(t).target);
      w.pop_back();
    }
  };
  dfs(dfs, a.initial());
  return out;
}

std::vector<Action> with_deltas(const Run& run, const std::vector<std::size_t>& at) {
  std::vector<Action> out;
  for (std::size_t i = 0; i <= run.size(); ++i) {
    if (std::find(at.begin(), at.end(), i) != at.end()) out.push_back(Action::delta());
    if (i < run.size()) out.push_back(run[i].action);
  }
  return out;
}

const char* kSmall = R"(# two calls on one process
states: q0 q1 q2
initial: q0
final: q0 q2
trans: q0 inv:1:enq:a q1
trans: q1 res:1:enq q2
)";

}  // namespace

TEST_CASE("automaton text round-trips") {
  Automaton a = parse_automaton(kSmall);
  CHECK(a.num_states() == 3);
  CHECK(a.num_transitions() == 2);
  CHECK(a.is_final(0));
  CHECK(parse_automaton(format_automaton(a)) == a);

  QueueOptions o{2, 2, {"a", "b"}};
  Automaton spec = queue_spec(o);
  CHECK(parse_automaton(format_automaton(spec)) == spec);
}

TEST_CASE("automaton parse errors") {
  CHECK_THROWS_AS(parse_automaton("states: a\ninitial: b\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("states: a a\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("states: a\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("states: a\ninitial: a\ntrans: a delta a\n"), ParseError);
  CHECK_NOTHROW(parse_automaton("states: a\ninitial: a\ntrans: a delta a\n", true));
  try {
    parse_automaton("states: a\ninitial: a\nfinal: a\ntrans: a inv:1:x zz\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 18);
  }
}

TEST_CASE("word automata") {
  WordAutomaton w = parse_word_automaton("states: a b\ninitial: a\nfinal: b\ntrans: a x b\n");
  CHECK(accepts(w, std::vector<std::string>{"x"}));
  CHECK_FALSE(accepts(w, std::vector<std::string>{}));
  CHECK(parse_word_automaton(format_word_automaton(w)) == w);
  CHECK_THROWS_AS(parse_word_automaton("states: a\ninitial: a\ntrans: a inv:1:x a\n"), ParseError);
}

TEST_CASE("sequential queue spec is quiescent exactly after responses") {
  QueueOptions o{2, 2, {"a", "b"}};
  Automaton spec = queue_spec(o);
  auto lab = label_quiescence(spec);
  std::set<StateId> after_response{spec.initial()};
  std::set<StateId> after_invoke;
  for (const auto& t : spec.transitions()) {
    (t.label.is_response() ? after_response : after_invoke).insert(t.target);
  }
  for (StateId s = 0; s < spec.num_states(); ++s) {
    CHECK(lab.is_quiescent(s) == (after_response.count(s) == 1));
    CHECK(lab.is_quiescent(s) != (after_invoke.count(s) == 1));
  }
}

TEST_CASE("conflicting pending sets are ambiguous") {
  Automaton a;
  StateId p = a.add_state("p");
  StateId q = a.add_state("q");
  StateId m = a.add_state("m");
  a.set_initial(p);
  a.add_transition(p, inv(1, "op"), q);
  a.add_transition(p, inv(1, "op"), m);
  a.add_transition(m, res(1, "op"), q);
  CHECK_THROWS_AS(label_quiescence(a), AmbiguousQuiescence);
}

TEST_CASE("illegal transitions and pending finals") {
  Automaton twice;
  twice.add_state("a");
  twice.add_state("b");
  twice.add_state("c");
  twice.set_initial(0);
  twice.add_transition(0, inv(1, "x"), 1);
  twice.add_transition(1, inv(1, "x"), 2);
  CHECK_THROWS_AS(label_quiescence(twice), IllegalAutomaton);

  Automaton pending;
  pending.add_state("a");
  pending.add_state("b");
  pending.set_initial(0);
  pending.set_final(1);
  pending.add_transition(0, inv(1, "x"), 1);
  CHECK_THROWS_AS(label_quiescence(pending), FinalNotQuiescent);
  CHECK_NOTHROW(label_quiescence(pending, LabelOptions{false}));

  Automaton wrong_op = parse_automaton("states: a b c\ninitial: a\ntrans: a inv:1:x b\ntrans: b res:1:y c\n");
  CHECK_THROWS_AS(label_quiescence(wrong_op), IllegalAutomaton);
}

TEST_CASE("unreachable states carry no label; dead states are listed") {
  Automaton a = parse_automaton(
      "states: a b c d\ninitial: a\nfinal: a\ntrans: a inv:1:x b\ntrans: b res:1:x c\n");
  auto lab = label_quiescence(a);
  CHECK_FALSE(lab.reachable(3));
  CHECK(lab.is_quiescent(2));
  CHECK(*lab.pending[1] == PendingSet{1});
  CHECK(dead_states(a) == std::vector<StateId>{1, 2});
}

TEST_CASE("queue implementation labeling matches path enumeration") {
  QueueOptions o{2, 2, {"a", "b"}};
  Automaton impl = queue_impl(o);
  auto lab = label_quiescence(impl);

  // Breadth-first from the initial state, keeping the first pending map seen.
  std::vector<std::optional<std::map<ProcessId, int>>> seen(impl.num_states());
  std::vector<std::size_t> depth(impl.num_states(), 0);
  std::vector<StateId> frontier{impl.initial()};
  seen[impl.initial()] = std::map<ProcessId, int>{};
  while (!frontier.empty()) {
    std::vector<StateId> next;
    for (StateId s : frontier) {
      if (depth[s] == 16) continue;
      for (std::size_t t : impl.outgoing(s)) {
        const auto& tr = impl.transition(t);
        auto m = *seen[s];
        m[tr.label.process] += tr.label.is_invoke() ? 1 : -1;
        if (m[tr.label.process] == 0) m.erase(tr.label.process);
        if (!seen[tr.target]) {
          seen[tr.target] = m;
          depth[tr.target] = depth[s] + 1;
          next.push_back(tr.target);
        } else {
          CHECK(*seen[tr.target] == m);
        }
      }
    }
    frontier = std::move(next);
  }
  for (StateId s = 0; s < impl.num_states(); ++s) {
    REQUIRE(seen[s].has_value());
    PendingSet expected;
    for (auto& [p, n] : *seen[s]) expected.push_back(p);
    CHECK(*lab.pending[s] == expected);

    // Zero open calls: every thread is idle or finished in the state name.
    std::string name = impl.name(s);
    std::istringstream threads(name.substr(name.rfind('|') + 1));
    bool idle = true;
    for (std::string t; std::getline(threads, t, ',');) idle = idle && (t == "I" || t == "EF" || t == "DF");
    CHECK(lab.is_quiescent(s) == idle);
  }
}

TEST_CASE("spec delta automaton adds optional markers") {
  Automaton eps;
  eps.add_state("only");
  eps.set_initial(0);
  eps.set_final(0);
  auto d = build_spec_delta(eps);
  auto words = words_upto(d.base, 4);
  CHECK(words.size() == 5);
  for (const auto& w : words) {
    for (const auto& x : w) CHECK(x.is_delta());
  }

  Automaton call = parse_automaton("states: a b c\ninitial: a\nfinal: c\ntrans: a inv:1:x b\ntrans: b res:1:x c\n");
  auto cd = build_spec_delta(call);
  std::set<std::vector<Action>> expected;
  for (std::size_t i = 0; i <= 4; ++i) {
    for (std::size_t j = 0; i + j <= 4; ++j) {
      std::vector<Action> w(i, Action::delta());
      w.push_back(inv(1, "x"));
      w.push_back(res(1, "x"));
      w.insert(w.end(), j, Action::delta());
      expected.insert(w);
    }
  }
  CHECK(words_upto(cd.base, 6) == expected);

  QueueOptions o{3, 3, {"a", "b", "c"}};
  auto qd = build_spec_delta(queue_spec(o));
  auto accepts_actions = [&](const std::vector<Action>& w) { return accepts(qd.base, make_run(w)); };
  Run h2 = queue_h2();
  CHECK(accepts_actions(with_deltas(h2, {0, 2, 4, 6, 8, 10, 12})));
  CHECK(accepts_actions(with_deltas(h2, {0, 4, 6, 8, 12})));
  CHECK(accepts_actions(with_deltas(h2, {0, 12})));
}

TEST_CASE("impl delta automaton forces markers at quiescent points") {
  Run h1 = queue_h1();
  auto d1 = build_impl_delta(chain(h1));
  auto w1 = words_upto(d1.base, 20);
  REQUIRE(w1.size() == 1);
  CHECK(*w1.begin() == with_deltas(h1, {0, 12}));

  Run h2 = queue_h2();
  auto d2 = build_impl_delta(chain(h2));
  auto w2 = words_upto(d2.base, 24);
  REQUIRE(w2.size() == 1);
  CHECK(*w2.begin() == with_deltas(h2, {0, 2, 4, 6, 8, 10, 12}));

  Automaton eps;
  eps.add_state("only");
  eps.set_initial(0);
  eps.set_final(0);
  auto de = build_impl_delta(eps);
  CHECK(words_upto(de.base, 4) == std::set<std::vector<Action>>{{Action::delta()}});
  CHECK(de.delta_target[0].has_value());
  CHECK(de.origin[*de.delta_target[0]] == 0);
}
