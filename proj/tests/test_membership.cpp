#include <doctest.h>

#include "oracle.hpp"
#include "qcheck/errors.hpp"
#include "qcheck/generators.hpp"
#include "qcheck/io.hpp"
#include "qcheck/membership.hpp"

using namespace qcheck;
using oracle::inv;
using oracle::res;

namespace {

Automaton chain_of(const std::vector<Action>& w) {
  Automaton a;
  for (std::size_t i = 0; i <= w.size(); ++i) a.add_state("c" + std::to_string(i));
  a.set_initial(0);
  a.set_final(static_cast<StateId>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) a.add_transition(static_cast<StateId>(i), w[i], static_cast<StateId>(i + 1));
  return a;
}

// Accepted words among all words of |seg| letters over the segment's events.
std::set<std::vector<Action>> accepted_words(const PermAcceptor& acc) {
  std::set<std::vector<Action>> out;
  const Run& seg = acc.events();
  std::vector<std::size_t> pick(seg.size(), 0);
  while (true) {
    Run word;
    for (auto i : pick) word.push_back(seg[i]);
    if (acc.accepts(word)) out.insert(oracle::labels(word));
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == seg.size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

MembershipOptions in(Mode m) {
  MembershipOptions o;
  o.mode = m;
  return o;
}

}  // namespace

TEST_CASE("QC acceptor on two independent events") {
  Run seg = make_run(std::vector<Action>{inv(1, "a"), inv(2, "b")});
  PermAcceptor acc(seg, AcceptorKind::qc_subset);
  CHECK(acc.state_count() == 4);
  CHECK(accepted_words(acc) == oracle::permutations(oracle::labels(seg)));
  CHECK(accepted_words(acc).size() == 2);
}

TEST_CASE("one-event segment accepts only itself") {
  Run seg = make_run(std::vector<Action>{inv(1, "a")});
  for (auto kind : {AcceptorKind::qc_subset, AcceptorKind::qsc_subset, AcceptorKind::qsc_counter}) {
    PermAcceptor acc(seg, kind);
    CHECK(acc.accepts(seg));
    CHECK_FALSE(acc.accepts(Run{}));
  }
}

TEST_CASE("QSC acceptors keep per-process order") {
  Run seg = make_run(std::vector<Action>{inv(1, "a"), res(1, "a"), inv(2, "b"), res(2, "b")});
  std::set<std::vector<Action>> expected;
  for (const auto& p : oracle::permutations(oracle::labels(seg))) {
    if (oracle::is_process_order_permutation_of(p, oracle::labels(seg))) expected.insert(p);
  }
  CHECK(expected.size() == 6);
  CHECK(accepted_words(PermAcceptor(seg, AcceptorKind::qsc_subset)) == expected);
  CHECK(accepted_words(PermAcceptor(seg, AcceptorKind::qsc_counter)) == expected);
  CHECK(accepted_words(PermAcceptor(seg, AcceptorKind::qc_subset)).size() == 24);
}

TEST_CASE("acceptor construction limits") {
  std::vector<Action> w;
  for (int i = 0; i < 13; ++i) {
    w.push_back(inv(static_cast<ProcessId>(i + 1), "a"));
    w.push_back(res(static_cast<ProcessId>(i + 1), "a"));
  }
  Segment seg{0, make_run(w)};
  CHECK_THROWS_AS(build_perm_acceptor(seg, Mode::qc), SegmentTooLarge);
  CHECK(build_perm_acceptor(seg, Mode::qc, std::nullopt, 26).kind() == AcceptorKind::qc_subset);
  CHECK(build_perm_acceptor(seg, Mode::qsc, 13).kind() == AcceptorKind::qsc_counter);
  CHECK_THROWS_AS(build_perm_acceptor(seg, Mode::qsc, 12), SegmentTooLarge);
}

TEST_CASE("h1 is quiescent consistent with the sequential queue") {
  QueueOptions o{3, 3, {"a", "b", "c"}};
  Automaton spec = queue_spec(o);
  Run h1 = queue_h1();
  Verdict v = check_membership(spec, h1);
  REQUIRE(v.passed());
  REQUIRE(v.witness);
  CHECK(accepts(spec, *v.witness));
  CHECK(oracle::is_permutation_of(oracle::labels(*v.witness), oracle::labels(h1)));
  CHECK(v.quiescent_points == std::vector<std::size_t>{0, 12});
  CHECK(accepts(spec, queue_h2()));
  CHECK(oracle::is_permutation_of(oracle::labels(queue_h2()), oracle::labels(h1)));

  // Process order is preserved too: each process runs a single call.
  CHECK(check_membership(spec, h1, in(Mode::qsc)).passed());
}

TEST_CASE("runs of the spec are their own witness") {
  QueueOptions o{2, 2, {"a", "b"}};
  Automaton spec = queue_spec(o);
  Run r = make_run(std::vector<Action>{inv(1, "enq", "a"), res(1, "enq"), inv(2, "deq"), res(2, "deq", "a")});
  REQUIRE(accepts(spec, r));
  for (Mode m : {Mode::qc, Mode::qsc}) {
    Verdict v = check_membership(spec, r, in(m));
    CHECK(v.passed());
    CHECK(*v.witness == r);
  }
  Verdict e = check_membership(spec, Run{});
  CHECK(e.passed());
  CHECK(e.witness->empty());
}

TEST_CASE("reordering one process's calls separates the modes") {
  // e on process 2 brackets two calls of process 1; the spec runs them in
  // the opposite order after e has returned.
  auto e = [](bool r) { return r ? res(2, "e") : inv(2, "e"); };
  std::vector<Action> spec_word{e(false), e(true), inv(1, "e1"), res(1, "e1"), inv(1, "e2"), res(1, "e2")};
  std::vector<Action> run{e(false), inv(1, "e2"), res(1, "e2"), inv(1, "e1"), res(1, "e1"), e(true)};
  Automaton spec = chain_of(spec_word);
  CHECK(check_membership(spec, make_run(run), in(Mode::qc)).passed());
  CHECK_FALSE(check_membership(spec, make_run(run), in(Mode::qsc)).passed());
}

TEST_CASE("membership input errors") {
  Automaton spec = queue_spec(QueueOptions{1, 1, {"a"}});
  CHECK_THROWS_AS(check_membership(spec, make_run(std::vector<Action>{res(1, "a")})), NotLegal);
  CHECK_THROWS_AS(check_membership(spec, make_run(std::vector<Action>{inv(1, "a")})), NotQuiescent);
  MembershipOptions bounded;
  bounded.bound = 10;
  try {
    check_membership(queue_spec(QueueOptions{3, 3, {"a", "b", "c"}}), queue_h1(), bounded);
    FAIL("expected BoundExceeded");
  } catch (const BoundExceeded& e) {
    CHECK(e.segment_index() == 0);
    CHECK(e.length() == 12);
  }
}

TEST_CASE("delta markers in the input are stripped") {
  Automaton spec = queue_spec(QueueOptions{1, 1, {"a"}});
  Run marked = parse_history("delta inv:1:enq:a res:1:enq delta inv:2:deq res:2:deq:a delta", true);
  Verdict v = check_membership(spec, marked);
  CHECK(v.passed());
  CHECK(v.warnings.empty());
  Run misplaced = parse_history("inv:1:enq:a res:1:enq inv:2:deq res:2:deq:a delta", true);
  CHECK_FALSE(check_membership(spec, misplaced).warnings.empty());
}

TEST_CASE("brute force reference agrees on h1 with a raised limit") {
  Automaton spec = queue_spec(QueueOptions{3, 3, {"a", "b", "c"}});
  CHECK_THROWS_AS(check_membership_brute(spec, queue_h1(), Mode::qc), TooLarge);
  Verdict v = check_membership_brute(spec, queue_h1(), Mode::qc, 12);
  CHECK(v.passed());
  CHECK(accepts(spec, *v.witness));
}

TEST_CASE("membership agrees with the permutation oracle on random cases") {
  oracle::Rng rng(2024);
  std::vector<Action> alphabet{inv(1, "a"), res(1, "a"), inv(2, "a"), res(2, "a"), inv(1, "b"), res(1, "b")};
  int passes = 0;
  for (int i = 0; i < 300; ++i) {
    auto w = oracle::random_run(rng, 1 + oracle::pick(rng, 3), 2, {"a", "b"});
    Automaton spec = oracle::random_automaton(rng, 1 + oracle::pick(rng, 5), alphabet, 12);
    for (Mode m : {Mode::qc, Mode::qsc}) {
      Verdict v = check_membership(spec, make_run(w), in(m));
      bool expected = oracle::allowed(spec, w, m == Mode::qsc);
      CHECK(v.passed() == expected);
      CHECK(check_membership_brute(spec, make_run(w), m).passed() == expected);
      if (v.passed()) {
        ++passes;
        CHECK(accepts(spec, *v.witness));
        auto cut = oracle::cuts(w);
        CHECK(v.quiescent_points == cut);
        auto got = oracle::labels(*v.witness);
        for (std::size_t k = 0; k + 1 < cut.size(); ++k) {
          std::vector<Action> lhs(got.begin() + static_cast<long>(cut[k]), got.begin() + static_cast<long>(cut[k + 1]));
          std::vector<Action> rhs(w.begin() + static_cast<long>(cut[k]), w.begin() + static_cast<long>(cut[k + 1]));
          CHECK((m == Mode::qc ? oracle::is_permutation_of(lhs, rhs) : oracle::is_process_order_permutation_of(lhs, rhs)));
        }
      }
    }
  }
  CHECK(passes > 0);
}
