#include <doctest.h>

#include "oracle.hpp"
#include "qcheck/errors.hpp"
#include "qcheck/generators.hpp"
#include "qcheck/history.hpp"
#include "qcheck/io.hpp"

using namespace qcheck;

namespace {

Run run_of(std::string_view text) { return parse_history(text, true); }

}  // namespace

TEST_CASE("event tokens parse and print back") {
  for (std::string tok : {"inv:1:enq:a", "res:1:enq", "inv:12:deq", "res:3:deq:b_2"}) {
    CHECK(to_string(parse_action(tok, false)) == tok);
  }
  CHECK(parse_action("delta", true).is_delta());
  CHECK_THROWS_AS(parse_action("delta", false), ParseError);
  CHECK_THROWS_AS(parse_action("call:1:a", false), ParseError);
  CHECK_THROWS_AS(parse_action("inv:x:a", false), ParseError);
  CHECK_THROWS_AS(parse_action("inv:1", false), ParseError);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_history("inv:1:a\n  res:1:a inv:q:b\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() >= 11);
  }
}

TEST_CASE("occurrence indices number repeated actions") {
  Run r = run_of("inv:1:a res:1:a inv:1:a res:1:a");
  CHECK(r[0].occ == 0);
  CHECK(r[2].occ == 1);
  CHECK(r[3].occ == 1);
}

TEST_CASE("legality") {
  CHECK(is_legal(queue_h1()));
  CHECK(is_legal(Run{}));
  CHECK_FALSE(is_legal(run_of("res:2:deq:x")));
  CHECK_FALSE(is_legal(run_of("inv:1:a inv:1:b")));
  CHECK_FALSE(is_legal(run_of("inv:1:a res:1:b")));
  CHECK(is_legal(run_of("inv:1:a inv:2:b res:1:a")));
}

TEST_CASE("quiescence") {
  Run h1 = queue_h1();
  CHECK(is_quiescent(h1));
  CHECK(is_quiescent(Run{}));
  Run longer = h1;
  for (const auto& e : run_of("inv:1:enq:x inv:3:deq res:1:enq")) longer.push_back(e);
  assign_occurrences(longer);
  CHECK_FALSE(is_quiescent(longer));
}

TEST_CASE("segments") {
  auto h1 = segment(queue_h1());
  REQUIRE(h1.size() == 1);
  CHECK(h1[0].events.size() == 12);

  auto h2 = segment(queue_h2());
  REQUIRE(h2.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(h2[i].offset == 2 * i);
    CHECK(h2[i].events.size() == 2);
  }
  CHECK(segment(Run{}).empty());
  CHECK_THROWS_AS(segment(run_of("inv:1:a")), NotQuiescent);
  CHECK_THROWS_AS(segment(run_of("res:1:a")), NotLegal);
}

TEST_CASE("quiescent points agree with the pending-count oracle") {
  oracle::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    auto w = oracle::random_run(rng, 1 + oracle::pick(rng, 5), 3, {"a", "b"});
    CHECK(quiescent_points(make_run(w)) == oracle::cuts(w));
  }
}

TEST_CASE("projections") {
  CHECK(project_process(queue_h1(), 1) == run_of("inv:1:deq res:1:deq:c"));
  Run marked = run_of("delta");
  for (const auto& e : queue_h1()) marked.push_back(e);
  marked.push_back(Event{Action::delta(), 1});
  CHECK(strip_delta(marked) == queue_h1());
  Run only_delta = project_process_delta(marked, 7);
  REQUIRE(only_delta.size() == 2);
  CHECK(only_delta[0].action.is_delta());
  CHECK(processes(queue_h1()) == std::vector<ProcessId>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("process-order equivalence") {
  CHECK(equiv_qsc(queue_h1(), queue_h2()));
  CHECK_FALSE(equiv_qsc(run_of("inv:1:a res:1:a inv:1:b res:1:b"), run_of("inv:1:b res:1:b inv:1:a res:1:a")));
  oracle::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    auto w = make_run(oracle::random_run(rng, 3, 2, {"a", "b"}));
    CHECK(equiv_qsc(w, w));
  }
}

TEST_CASE("history format round-trips") {
  Run h1 = queue_h1();
  std::vector<std::size_t> qp{0, 12};
  std::string text = format_history(h1, &qp);
  CHECK(text.find("# quiescent points: 0 12") != std::string::npos);
  CHECK(parse_history(text) == h1);
}
