#include "qcheck/correctness.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "qcheck/errors.hpp"

namespace qcheck {

namespace {

using Signature = std::vector<int>;

template <class T>
struct VectorHash {
  std::size_t operator()(const std::vector<T>& v) const noexcept {
    std::size_t h = v.size();
    for (const auto& x : v) h ^= std::hash<T>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct KeyHash {
  std::size_t operator()(const std::pair<std::vector<StateId>, Signature>& k) const noexcept {
    return VectorHash<StateId>{}(k.first) * 31 + VectorHash<int>{}(k.second);
  }
  std::size_t operator()(const std::pair<StateId, Signature>& k) const noexcept {
    return VectorHash<int>{}(k.second) * 31 + k.first;
  }
  std::size_t operator()(const std::pair<StateId, std::vector<StateId>>& k) const noexcept {
    return VectorHash<StateId>{}(k.second) * 31 + k.first;
  }
};

// Dense ids for the implementation's actions; read-only once built.
class Interner {
 public:
  explicit Interner(const Automaton& a) {
    for (const auto& t : a.transitions()) {
      if (t.label.is_delta()) continue;
      if (ids_.emplace(t.label, static_cast<int>(process_.size())).second) {
        process_.push_back(t.label.process);
      }
    }
  }
  int id(const Action& a) const { return ids_.at(a); }
  ProcessId process(int id) const { return process_[id]; }

 private:
  std::unordered_map<Action, int, ActionHash> ids_;
  std::vector<ProcessId> process_;
};

// Equal for two segments iff they are equivalent under the mode: the sorted
// multiset of actions (QC), or the actions stably sorted by process (QSC).
void extend_signature(Signature& sig, int id, Mode mode, const Interner& interner) {
  auto key = [&](int x) -> std::int64_t {
    return mode == Mode::qc ? x : static_cast<std::int64_t>(interner.process(x));
  };
  auto pos = std::upper_bound(sig.begin(), sig.end(), id,
                              [&](int a, int b) { return key(a) < key(b); });
  sig.insert(pos, id);
}

StateId segment_start(const DeltaAutomaton& qd, StateId q) {
  if (q >= qd.quiescent.size() || !qd.quiescent[q]) {
    throw std::invalid_argument("segment enumeration must start at a quiescent state");
  }
  if (qd.kind == DeltaKind::spec) return q;
  if (!qd.delta_target.at(q)) throw std::invalid_argument("state has no delta successor");
  return *qd.delta_target[q];
}

bool extensible(const DeltaAutomaton& qd, StateId s) {
  for (std::size_t ti : qd.base.outgoing(s)) {
    if (!qd.base.transition(ti).label.is_delta()) return true;
  }
  return false;
}

std::string describe(const Run& run) {
  std::string out;
  for (const auto& e : run) {
    if (!out.empty()) out += ' ';
    out += to_string(e);
  }
  return out;
}

// Depth-first walk over the non-delta paths from `q` that stop at the first
// quiescent state. With an interner, prefixes that reach a state with an
// already seen signature are pruned, so each (class, end state) is emitted
// once, for its first path in declaration order.
void walk(const DeltaAutomaton& qd, StateId q, std::size_t bound, BoundPolicy policy,
          bool& truncated, const Interner* interner, Mode mode,
          const std::function<void(const Run&, StateId, const Signature&)>& emit) {
  const Automaton& a = qd.base;
  std::unordered_set<std::pair<StateId, Signature>, KeyHash> seen;
  Run path;
  Signature sig;

  std::function<void(StateId)> rec = [&](StateId s) {
    for (std::size_t ti : a.outgoing(s)) {
      const auto& t = a.transition(ti);
      if (t.label.is_delta()) continue;
      Signature saved;
      if (interner) {
        saved = sig;
        extend_signature(sig, interner->id(t.label), mode, *interner);
        if (!seen.emplace(t.target, sig).second) {
          sig = std::move(saved);
          continue;
        }
      }
      path.push_back(Event{t.label, 0});
      if (qd.quiescent[t.target]) {
        Run out = path;
        assign_occurrences(out);
        emit(out, t.target, sig);
      } else if (path.size() >= bound) {
        if (extensible(qd, t.target)) {
          if (policy == BoundPolicy::reject) {
            throw BoundExceeded(0, path.size() + 1,
                                "a non-quiescent path from state '" + a.name(q) + "' reaches the bound " +
                                    std::to_string(bound) + " and can be extended: " +
                                    describe(path));
          }
          truncated = true;
        }
      } else {
        rec(t.target);
      }
      path.pop_back();
      if (interner) sig = std::move(saved);
    }
  };
  rec(segment_start(qd, q));
}

struct SegmentClass {
  Run events;
  StateId target;
  Signature signature;
};

struct ClassList {
  std::vector<SegmentClass> classes;
  bool truncated = false;
};

// Shortest path label from `from` to a final state of `a`.
Run completion(const Automaton& a, StateId from) {
  std::vector<std::optional<std::size_t>> via(a.num_states());
  std::vector<bool> seen(a.num_states(), false);
  std::deque<StateId> work{from};
  seen[from] = true;
  std::optional<StateId> end;
  while (!work.empty()) {
    StateId s = work.front();
    work.pop_front();
    if (a.is_final(s)) {
      end = s;
      break;
    }
    for (std::size_t ti : a.outgoing(s)) {
      StateId n = a.transition(ti).target;
      if (!seen[n]) {
        seen[n] = true;
        via[n] = ti;
        work.push_back(n);
      }
    }
  }
  Run out;
  for (StateId s = *end; s != from;) {
    const auto& t = a.transition(*via[s]);
    out.push_back(Event{t.label, 0});
    s = t.source;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<SegmentPath> enumerate_segments(const DeltaAutomaton& qd, StateId q, std::size_t bound,
                                            BoundPolicy policy, bool* truncated) {
  std::vector<SegmentPath> out;
  bool cut = false;
  walk(qd, q, bound, policy, cut, nullptr, Mode::qc,
       [&](const Run& run, StateId target, const Signature&) { out.push_back({run, target}); });
  if (truncated) *truncated = *truncated || cut;
  return out;
}

std::vector<StateId> spec_successors(const Automaton& spec, std::span<const StateId> from,
                                     std::span<const Event> segment, Mode mode,
                                     std::optional<std::size_t> proc_bound,
                                     std::size_t width_limit, std::size_t* explored) {
  Segment seg{0, Run(segment.begin(), segment.end())};
  assign_occurrences(seg.events);
  PermAcceptor acc = build_perm_acceptor(seg, mode, proc_bound, width_limit);

  std::vector<int> symbols;
  symbols.reserve(spec.num_transitions());
  for (const auto& t : spec.transitions()) {
    symbols.push_back(t.label.is_delta() ? -1 : acc.symbol_of(t.label));
  }

  using Node = std::pair<PermAcceptor::State, StateId>;
  struct NodeHash {
    std::size_t operator()(const Node& n) const noexcept {
      return std::hash<std::uint64_t>{}(n.first) * 31 + n.second;
    }
  };
  std::unordered_set<Node, NodeHash> visited;
  std::vector<Node> stack;
  for (StateId s : from) {
    if (visited.emplace(acc.initial(), s).second) stack.emplace_back(acc.initial(), s);
  }
  std::vector<StateId> out;
  while (!stack.empty()) {
    auto [a, s] = stack.back();
    stack.pop_back();
    if (acc.is_final(a)) {
      out.push_back(s);
      continue;
    }
    for (std::size_t ti : spec.outgoing(s)) {
      int sym = symbols[ti];
      if (sym < 0) continue;
      auto idx = acc.match(a, sym);
      if (!idx) continue;
      Node next{*acc.step(a, *idx), spec.transition(ti).target};
      if (visited.insert(next).second) stack.push_back(next);
    }
  }
  if (explored) *explored += visited.size();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Verdict check_correctness(const Automaton& spec, const Automaton& impl,
                          const CorrectnessOptions& options) {
  if (options.bound == 0) throw std::invalid_argument("bound must be at least 1");
  Verdict verdict;
  verdict.stats.bound = options.bound;

  auto spec_labels = label_quiescence(spec);
  DeltaAutomaton qd = build_impl_delta(impl);
  if (options.warn_dead) {
    for (StateId s : dead_states(impl)) {
      verdict.warnings.push_back("implementation state '" + impl.name(s) +
                                 "' cannot reach a final state");
    }
  }
  if (impl.num_states() == 0) {
    verdict.result = Result::pass;
    return verdict;
  }

  const auto spec_quiescent = spec_labels.quiescent_mask();
  const auto coaccessible = coaccessible_states(impl);
  const Interner interner(impl);
  auto has_final = [&](const std::vector<StateId>& set) {
    return std::any_of(set.begin(), set.end(), [&](StateId s) { return spec.is_final(s); });
  };

  // Caches shared by the workers. Values are pure functions of their keys,
  // so whichever worker inserts first stores the same result.
  std::mutex mutex;
  std::unordered_map<StateId, std::shared_ptr<const ClassList>> class_cache;
  std::unordered_map<std::pair<std::vector<StateId>, Signature>, std::vector<StateId>, KeyHash>
      succ_cache;
  std::size_t explored = 0;
  std::size_t class_count = 0;

  auto classes_of = [&](StateId q) -> std::shared_ptr<const ClassList> {
    {
      std::lock_guard lock(mutex);
      auto it = class_cache.find(q);
      if (it != class_cache.end()) return it->second;
    }
    auto list = std::make_shared<ClassList>();
    // Over-long paths are always cut here; a FAIL found within the bound
    // stands, and the reject policy only turns a would-be PASS into an error.
    walk(qd, q, options.bound, BoundPolicy::truncate, list->truncated, &interner, options.mode,
         [&](const Run& run, StateId target, const Signature& sig) {
           list->classes.push_back({run, target, sig});
         });
    std::lock_guard lock(mutex);
    auto [it, inserted] = class_cache.emplace(q, std::move(list));
    if (inserted) class_count += it->second->classes.size();
    return it->second;
  };

  auto successors_of = [&](const std::vector<StateId>& from,
                           const SegmentClass& c) -> std::vector<StateId> {
    auto key = std::make_pair(from, c.signature);
    {
      std::lock_guard lock(mutex);
      auto it = succ_cache.find(key);
      if (it != succ_cache.end()) return it->second;
    }
    std::size_t local = 0;
    auto all = spec_successors(spec, from, c.events, options.mode, options.proc_bound,
                               options.width_limit, &local);
    std::vector<StateId> quiescent;
    for (StateId s : all) {
      if (spec_quiescent[s]) quiescent.push_back(s);
    }
    std::lock_guard lock(mutex);
    auto [it, inserted] = succ_cache.emplace(std::move(key), std::move(quiescent));
    if (inserted) explored += local;
    return it->second;
  };

  struct Pair {
    StateId q;
    std::vector<StateId> S;
    std::size_t parent;
    std::size_t via;  // class index in the parent's class list
  };
  std::vector<Pair> pairs;
  std::unordered_map<std::pair<StateId, std::vector<StateId>>, std::size_t, KeyHash> index;

  auto finish_stats = [&] {
    verdict.stats.pairs = pairs.size();
    verdict.stats.explored_states = explored;
    verdict.stats.segments = class_count;
  };

  // Builds the FAIL verdict for pair `p` followed by class `c` of p.q (if
  // any), completed to a final implementation state.
  auto fail = [&](std::size_t p, const SegmentClass* c) {
    std::vector<const SegmentClass*> chain;
    for (std::size_t i = p; i != 0; i = pairs[i].parent) {
      const Pair& parent = pairs[pairs[i].parent];
      chain.push_back(&class_cache.at(parent.q)->classes[pairs[i].via]);
    }
    std::reverse(chain.begin(), chain.end());
    Run witness;
    for (const auto* seg : chain) witness.insert(witness.end(), seg->events.begin(), seg->events.end());
    std::size_t seg_begin = witness.size();
    std::size_t seg_end = witness.size();
    StateId end = pairs[p].q;
    if (c) {
      witness.insert(witness.end(), c->events.begin(), c->events.end());
      seg_end = witness.size();
      end = c->target;
    } else if (!chain.empty()) {
      seg_begin -= chain.back()->events.size();
    }
    Run tail = completion(impl, end);
    witness.insert(witness.end(), tail.begin(), tail.end());
    assign_occurrences(witness);
    verdict.result = Result::fail;
    verdict.unmatched_segment = Run(witness.begin() + static_cast<std::ptrdiff_t>(seg_begin),
                                    witness.begin() + static_cast<std::ptrdiff_t>(seg_end));
    verdict.quiescent_points = quiescent_points(witness);
    verdict.witness = std::move(witness);
    finish_stats();
    return verdict;
  };

  std::vector<StateId> root_set;
  if (spec.num_states() != 0) root_set.push_back(spec.initial());
  pairs.push_back({impl.initial(), root_set, 0, 0});
  index.emplace(std::make_pair(impl.initial(), root_set), 0);
  if (impl.is_final(impl.initial()) && !has_final(root_set)) return fail(0, nullptr);

  struct Expansion {
    std::shared_ptr<const ClassList> classes;
    std::vector<std::vector<StateId>> successors;  // prefix of the class list
    std::exception_ptr error;                      // raised after `successors`
  };

  std::vector<std::size_t> level{0};
  while (!level.empty()) {
    std::vector<Expansion> expansions(level.size());
    auto expand = [&](std::size_t i) {
      Expansion& e = expansions[i];
      try {
        e.classes = classes_of(pairs[level[i]].q);
        for (const auto& c : e.classes->classes) {
          e.successors.push_back(successors_of(pairs[level[i]].S, c));
        }
      } catch (...) {
        e.error = std::current_exception();
      }
    };
    if (options.workers > 1 && level.size() > 1) {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> threads;
      unsigned n = std::min<std::size_t>(options.workers, level.size());
      for (unsigned w = 0; w < n; ++w) {
        threads.emplace_back([&] {
          for (std::size_t i; (i = next.fetch_add(1)) < level.size();) expand(i);
        });
      }
      for (auto& t : threads) t.join();
    } else {
      for (std::size_t i = 0; i < level.size(); ++i) expand(i);
    }

    // Merge in breadth-first order; errors surface where a sequential walk
    // would have raised them.
    std::vector<std::size_t> next_level;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const std::size_t p = level[i];
      const Expansion& e = expansions[i];
      if (e.classes && e.classes->truncated) verdict.stats.truncated = true;
      for (std::size_t ci = 0; ci < e.successors.size(); ++ci) {
        const SegmentClass& c = e.classes->classes[ci];
        const auto& succ = e.successors[ci];
        if (succ.empty()) {
          if (coaccessible[c.target]) return fail(p, &c);
          continue;
        }
        if (impl.is_final(c.target) && !has_final(succ)) return fail(p, &c);
        auto key = std::make_pair(c.target, succ);
        if (index.count(key) != 0) continue;
        if (pairs.size() >= options.pair_limit) {
          throw ResourceLimit("more than " + std::to_string(options.pair_limit) +
                              " state pairs explored");
        }
        index.emplace(std::move(key), pairs.size());
        next_level.push_back(pairs.size());
        pairs.push_back({c.target, succ, p, ci});
      }
      if (e.error) std::rethrow_exception(e.error);
    }
    level = std::move(next_level);
  }

  finish_stats();
  if (verdict.stats.truncated && options.policy == BoundPolicy::reject) {
    throw BoundExceeded(0, options.bound + 1,
                        "some implementation segment is longer than the bound " +
                            std::to_string(options.bound));
  }
  verdict.result = Result::pass;
  return verdict;
}

}  // namespace qcheck
