#include "qcheck/membership.hpp"

#include <algorithm>
#include <unordered_set>

#include "qcheck/errors.hpp"

namespace qcheck {

namespace {

struct Node {
  std::size_t segment;
  PermAcceptor::State acc;
  StateId spec;

  bool operator==(const Node&) const = default;
};

struct NodeHash {
  std::size_t operator()(const Node& n) const noexcept {
    std::size_t h = std::hash<std::uint64_t>{}(n.acc);
    h ^= std::hash<std::size_t>{}(n.segment) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<StateId>{}(n.spec) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Strips delta markers and warns when they disagree with the computed
// quiescent points.
Run normalize(std::span<const Event> run, std::vector<std::string>& warnings) {
  bool has_delta = std::any_of(run.begin(), run.end(), [](const Event& e) { return e.action.is_delta(); });
  Run stripped = strip_delta(run);
  assign_occurrences(stripped);
  if (!has_delta) return stripped;

  std::vector<std::size_t> marked;
  std::size_t seen = 0;
  for (const auto& e : run) {
    if (e.action.is_delta()) {
      if (marked.empty() || marked.back() != seen) marked.push_back(seen);
    } else {
      ++seen;
    }
  }
  if (is_legal(stripped) && is_quiescent(stripped) && marked != quiescent_points(stripped)) {
    warnings.push_back("delta markers do not coincide with the quiescent points of the run");
  }
  return stripped;
}

std::vector<std::size_t> boundaries(const std::vector<Segment>& segments, std::size_t total) {
  std::vector<std::size_t> out{0};
  for (const auto& s : segments) out.push_back(s.offset + s.events.size());
  if (segments.empty() && total != 0) out.push_back(total);
  return out;
}

}  // namespace

Verdict check_membership(const Automaton& spec, std::span<const Event> run,
                         const MembershipOptions& options) {
  Verdict verdict;
  Run input = normalize(run, verdict.warnings);
  auto segments = segment(input);
  verdict.stats.segments = segments.size();
  verdict.stats.bound = options.bound;

  if (options.bound) {
    for (std::size_t i = 0; i < segments.size(); ++i) {
      std::size_t len = segments[i].events.size();
      if (len > *options.bound) {
        throw BoundExceeded(i, len,
                            "segment " + std::to_string(i) + " has " + std::to_string(len) +
                                " events, more than the bound " + std::to_string(*options.bound));
      }
    }
  }

  std::vector<PermAcceptor> acceptors;
  acceptors.reserve(segments.size());
  for (const auto& s : segments) {
    acceptors.push_back(build_perm_acceptor(s, options.mode, options.proc_bound, options.width_limit));
  }
  if (spec.num_states() == 0) return verdict;

  // Per segment: spec transition -> local symbol (-1 when absent).
  std::vector<std::vector<int>> symbols(segments.size());
  for (std::size_t k = 0; k < segments.size(); ++k) {
    symbols[k].reserve(spec.num_transitions());
    for (const auto& t : spec.transitions()) {
      symbols[k].push_back(t.label.is_delta() ? -1 : acceptors[k].symbol_of(t.label));
    }
  }

  // Depth-first search in declaration order. The product is acyclic (every
  // labeled step consumes an event), so the first accepting path found is
  // the lexicographically least one.
  struct Frame {
    Node node;
    std::size_t next = 0;
    std::optional<std::size_t> via;  // event index consumed to enter this node
  };
  std::unordered_set<Node, NodeHash> visited;
  std::vector<Frame> stack;
  Node root{0, 0, spec.initial()};
  visited.insert(root);
  stack.push_back({root, 0, std::nullopt});

  while (!stack.empty()) {
    Frame& top = stack.back();
    Node n = top.node;
    if (n.segment == segments.size()) {
      if (spec.is_final(n.spec)) break;
      stack.pop_back();
      continue;
    }
    const PermAcceptor& acc = acceptors[n.segment];
    if (acc.is_final(n.acc)) {
      if (top.next++ != 0) {
        stack.pop_back();
        continue;
      }
      Node succ{n.segment + 1, 0, n.spec};
      if (visited.insert(succ).second) stack.push_back({succ, 0, std::nullopt});
      continue;
    }
    auto out = spec.outgoing(n.spec);
    bool pushed = false;
    while (!pushed && top.next < out.size()) {
      std::size_t ti = out[top.next++];
      int sym = symbols[n.segment][ti];
      if (sym < 0) continue;
      auto idx = acc.match(n.acc, sym);
      if (!idx) continue;
      Node succ{n.segment, *acc.step(n.acc, *idx), spec.transition(ti).target};
      if (visited.insert(succ).second) {
        stack.push_back({succ, 0, idx});
        pushed = true;
      }
    }
    if (!pushed) stack.pop_back();
  }
  verdict.stats.explored_states = visited.size();

  if (stack.empty()) return verdict;
  Run witness;
  for (const auto& f : stack) {
    if (f.via) witness.push_back(acceptors[f.node.segment].events()[*f.via]);
  }
  assign_occurrences(witness);
  verdict.result = Result::pass;
  verdict.witness = std::move(witness);
  verdict.quiescent_points = boundaries(segments, input.size());
  return verdict;
}

Verdict check_membership_brute(const Automaton& spec, std::span<const Event> run, Mode mode,
                               std::size_t max_events) {
  Verdict verdict;
  Run input = normalize(run, verdict.warnings);
  if (input.size() > max_events) {
    throw TooLarge("brute-force membership limited to " + std::to_string(max_events) +
                   " events, run has " + std::to_string(input.size()));
  }
  auto segments = segment(input);
  verdict.stats.segments = segments.size();
  if (spec.num_states() == 0) return verdict;

  auto same = [](const Action& l, const Event& e) { return l == e.action; };
  Run chosen;

  // Tries every permutation of segment k (and all later segments) from the
  // given spec state set.
  auto search = [&](auto& self, std::size_t k, std::vector<bool>& used, std::size_t placed,
                    const std::vector<StateId>& states) -> bool {
    ++verdict.stats.explored_states;
    if (states.empty()) return false;
    if (k == segments.size()) {
      return std::any_of(states.begin(), states.end(), [&](StateId s) { return spec.is_final(s); });
    }
    const Run& seg = segments[k].events;
    if (placed == seg.size()) {
      std::vector<bool> fresh(k + 1 < segments.size() ? segments[k + 1].events.size() : 0, false);
      return self(self, k + 1, fresh, 0, states);
    }
    for (std::size_t i = 0; i < seg.size(); ++i) {
      if (used[i]) continue;
      if (mode == Mode::qsc) {
        bool blocked = false;
        for (std::size_t j = 0; j < i; ++j) {
          if (!used[j] && seg[j].action.process == seg[i].action.process) blocked = true;
        }
        if (blocked) continue;
      }
      auto next = simulate(spec, states, std::span<const Event>(&seg[i], 1), same);
      used[i] = true;
      chosen.push_back(seg[i]);
      if (self(self, k, used, placed + 1, next)) return true;
      chosen.pop_back();
      used[i] = false;
    }
    return false;
  };

  std::vector<bool> used(segments.empty() ? 0 : segments[0].events.size(), false);
  if (search(search, 0, used, 0, {spec.initial()})) {
    assign_occurrences(chosen);
    verdict.result = Result::pass;
    verdict.witness = std::move(chosen);
    verdict.quiescent_points = boundaries(segments, input.size());
  }
  return verdict;
}

}  // namespace qcheck
