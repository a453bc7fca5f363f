#include "qcheck/generators.hpp"

#include <algorithm>
#include <deque>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "epsilon_nfa.hpp"
#include "qcheck/errors.hpp"

namespace qcheck {

namespace {

using detail::EpsilonNfa;

// Appends `suffix` characters until the name is unused.
std::string fresh_name(std::string name, const auto& taken) {
  while (taken(name)) name += "'";
  return name;
}

// Adds the path from -> ... -> to labeled `labels` through fresh
// intermediate states named prefix.1, prefix.2, ...; an empty label list
// becomes a silent step.
void add_path(EpsilonNfa& nfa, StateId from, const std::vector<Action>& labels, StateId to,
              const std::string& prefix) {
  if (labels.empty()) {
    nfa.add_epsilon(from, to);
    return;
  }
  StateId cur = from;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    StateId next = i + 1 == labels.size() ? to : nfa.add_state(prefix + "." + std::to_string(i + 1));
    nfa.add(cur, labels[i], next);
    cur = next;
  }
}

void add_path(Automaton& a, StateId from, const std::vector<Action>& labels, StateId to,
              const std::string& prefix) {
  StateId cur = from;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    StateId next = i + 1 == labels.size() ? to : a.add_state(prefix + "." + std::to_string(i + 1));
    a.add_transition(cur, labels[i], next);
    cur = next;
  }
}

std::vector<Action> call(ProcessId p, const std::string& op) {
  return {Action::invoke(p, op), Action::response(p, op)};
}

void append(std::vector<Action>& out, const std::vector<Action>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

}  // namespace

// ---- one-in-three SAT ------------------------------------------------------

void validate(const SatInstance& inst) {
  if (inst.num_vars == 0) throw InvalidInstance("a SAT instance needs at least one variable");
  for (std::size_t j = 0; j < inst.clauses.size(); ++j) {
    for (int lit : inst.clauses[j]) {
      std::size_t v = static_cast<std::size_t>(lit < 0 ? -static_cast<long long>(lit) : lit);
      if (lit == 0 || v > inst.num_vars) {
        throw InvalidInstance("clause " + std::to_string(j + 1) + " has literal " +
                              std::to_string(lit) + " outside 1.." + std::to_string(inst.num_vars));
      }
    }
  }
}

SatMembership gen_sat_membership(const SatInstance& inst) {
  validate(inst);
  const std::size_t k = inst.num_vars;
  const std::size_t n = inst.clauses.size();
  const auto last = static_cast<ProcessId>(n + 1);

  EpsilonNfa nfa;
  StateId s = nfa.add_state("s");
  std::vector<StateId> main;
  for (std::size_t i = 0; i <= k; ++i) main.push_back(nfa.add_state("s" + std::to_string(i)));
  StateId sf = nfa.add_state("sf");
  nfa.set_initial(s);
  nfa.set_final(sf);

  add_path(nfa, s, call(0, "e0"), main[0], "s.e0");
  for (std::size_t i = 1; i <= k; ++i) {
    for (bool value : {true, false}) {
      std::vector<Action> labels;
      for (std::size_t j = 0; j < n; ++j) {
        for (int lit : inst.clauses[j]) {
          bool matches_literal = value ? lit == static_cast<int>(i) : lit == -static_cast<int>(i);
          if (matches_literal) append(labels, call(static_cast<ProcessId>(j + 1), "e" + std::to_string(j + 1)));
        }
      }
      add_path(nfa, main[i - 1], labels, main[i], "r" + std::to_string(i) + (value ? "T" : "F"));
    }
  }
  add_path(nfa, main[k], call(last, "e"), sf, "s" + std::to_string(k) + ".e");

  SatMembership out;
  out.spec = nfa.eliminate();
  std::vector<Action> sigma{Action::invoke(0, "e0")};
  for (std::size_t j = 1; j <= n; ++j) append(sigma, call(static_cast<ProcessId>(j), "e" + std::to_string(j)));
  append(sigma, call(last, "e"));
  sigma.push_back(Action::response(0, "e0"));
  out.sigma = make_run(sigma);
  for (const auto& c : inst.clauses) {
    if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2]) out.duplicate_literals = true;
  }
  return out;
}

bool sat_brute_force(const SatInstance& inst) {
  validate(inst);
  const std::size_t k = inst.num_vars;
  if (k >= 63) throw TooLarge("brute force limited to 62 variables");
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    bool ok = true;
    for (const auto& c : inst.clauses) {
      int count = 0;
      for (int lit : c) {
        bool value = (bits >> (std::abs(lit) - 1)) & 1U;
        if (lit > 0 ? value : !value) ++count;
      }
      if (count != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

// ---- Parikh pair -----------------------------------------------------------

namespace {

void check_symbols(const WordAutomaton& a, const std::optional<std::vector<std::string>>& alphabet,
                   const char* which) {
  for (const auto& t : a.transitions()) {
    if (!is_identifier(t.label)) {
      throw AlphabetMismatch(std::string("symbol '") + t.label + "' of " + which +
                             " is not an identifier");
    }
    if (alphabet && std::find(alphabet->begin(), alphabet->end(), t.label) == alphabet->end()) {
      throw AlphabetMismatch(std::string("symbol '") + t.label + "' of " + which +
                             " is not in the declared alphabet");
    }
  }
}

// Copies the states of `w` into `out` and expands each symbol transition
// into a call pair through a fresh middle state.
std::vector<StateId> expand_symbols(const WordAutomaton& w, Automaton& out) {
  std::vector<StateId> id;
  for (StateId s = 0; s < w.num_states(); ++s) id.push_back(out.add_state(w.name(s)));
  auto taken = [&](const std::string& name) {
    return out.find_state(name).has_value() || w.find_state(name).has_value();
  };
  for (std::size_t ti = 0; ti < w.num_transitions(); ++ti) {
    const auto& t = w.transition(ti);
    StateId mid = out.add_state(fresh_name(w.name(t.source) + "." + t.label + "." + std::to_string(ti), taken));
    out.add_transition(id[t.source], Action::invoke(1, t.label), mid);
    out.add_transition(mid, Action::response(1, t.label), id[t.target]);
  }
  return id;
}

std::size_t longest_path(const WordAutomaton& a) {
  // Memoized depth over the acyclic reachable part.
  std::vector<std::optional<std::size_t>> depth(a.num_states());
  auto rec = [&](auto& self, StateId s) -> std::size_t {
    if (depth[s]) return *depth[s];
    std::size_t best = 0;
    for (std::size_t ti : a.outgoing(s)) best = std::max(best, 1 + self(self, a.transition(ti).target));
    depth[s] = best;
    return best;
  };
  return a.num_states() == 0 ? 0 : rec(rec, a.initial());
}

}  // namespace

ParikhPair gen_parikh_pair(const WordAutomaton& a, const WordAutomaton& b,
                           const std::optional<std::vector<std::string>>& alphabet) {
  check_symbols(a, alphabet, "the first automaton");
  check_symbols(b, alphabet, "the second automaton");
  const Action e = Action::invoke(0, "e");
  const Action e_ret = Action::response(0, "e");

  ParikhPair out;
  {
    Automaton& ap = out.impl;
    auto id = expand_symbols(a, ap);
    auto taken = [&](const std::string& name) { return ap.find_state(name).has_value(); };
    StateId init = ap.add_state(fresh_name("init", taken));
    StateId fin = ap.add_state(fresh_name("fin", taken));
    ap.set_initial(init);
    ap.set_final(fin);
    if (a.num_states() != 0) ap.add_transition(init, e, id[a.initial()]);
    for (StateId s : a.finals()) ap.add_transition(id[s], e_ret, fin);
  }
  {
    Automaton& bp = out.spec;
    auto id = expand_symbols(b, bp);
    auto taken = [&](const std::string& name) { return bp.find_state(name).has_value(); };
    StateId mid = bp.add_state(fresh_name("close", taken));
    StateId fin = bp.add_state(fresh_name("fin", taken));
    if (b.num_states() != 0) {
      bp.set_initial(id[b.initial()]);
    } else {
      // Empty language: an isolated initial state keeps B' empty.
      bp.set_initial(bp.add_state(fresh_name("init", taken)));
    }
    bp.set_final(fin);
    for (StateId s : b.finals()) bp.add_transition(id[s], e, mid);
    bp.add_transition(mid, e_ret, fin);
  }
  if (is_acyclic(a)) out.bound = 2 * longest_path(a) + 2;
  return out;
}

// ---- PCP -------------------------------------------------------------------

void validate(const PcpInstance& inst) {
  if (inst.pairs.empty()) throw InvalidInstance("a PCP instance needs at least one pair");
  for (char c : inst.alphabet) {
    if (!is_identifier(std::string_view(&c, 1))) {
      throw InvalidInstance(std::string("letter '") + c + "' is not an identifier character");
    }
  }
  for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
    const auto& [alpha, beta] = inst.pairs[i];
    if (alpha.empty() && beta.empty()) {
      throw InvalidInstance("pair " + std::to_string(i + 1) + " has two empty words");
    }
    for (char c : alpha + beta) {
      if (std::find(inst.alphabet.begin(), inst.alphabet.end(), c) == inst.alphabet.end()) {
        throw InvalidInstance(std::string("letter '") + c + "' of pair " + std::to_string(i + 1) +
                              " is not in the alphabet");
      }
    }
  }
}

Run pcp_to_events(std::string_view word, ProcessId p) {
  std::vector<Action> out;
  for (char c : word) append(out, call(p, std::string(1, c)));
  return make_run(out);
}

namespace {

std::vector<Action> letters(std::string_view word, ProcessId p) {
  std::vector<Action> out;
  for (char c : word) append(out, call(p, std::string(1, c)));
  return out;
}

}  // namespace

PcpAutomata gen_pcp_instance(const PcpInstance& inst) {
  validate(inst);
  const Action e = Action::invoke(0, "e");
  const Action e_ret = Action::response(0, "e");
  PcpAutomata out;

  Automaton& m = out.impl;
  StateId q0 = m.add_state("q0");
  StateId q = m.add_state("q");
  StateId qp = m.add_state("qp");
  StateId qf = m.add_state("qF");
  m.set_initial(q0);
  m.set_final(qf);
  m.add_transition(q0, e, q);
  for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
    auto labels = letters(inst.pairs[i].first, 1);
    append(labels, letters(inst.pairs[i].second, 2));
    add_path(m, q, labels, qp, "q.i" + std::to_string(i + 1));
    add_path(m, qp, labels, qp, "qp.i" + std::to_string(i + 1));
  }
  m.add_transition(qp, e_ret, qf);

  Automaton& s = out.spec;
  StateId s0 = s.add_state("s0");
  StateId s1 = s.add_state("s1");
  StateId s2 = s.add_state("s2");
  StateId s3 = s.add_state("s3");
  StateId close = s.add_state("sE");
  StateId sf = s.add_state("sF");
  s.set_initial(s0);
  s.set_final(sf);
  for (char a : inst.alphabet) {
    std::string l(1, a);
    auto same = letters(l, 1);
    append(same, letters(l, 2));
    add_path(s, s0, same, s0, "s0.same." + l);
  }
  for (char a : inst.alphabet) {
    for (char b : inst.alphabet) {
      if (a == b) continue;
      auto diff = letters(std::string(1, a), 1);
      append(diff, letters(std::string(1, b), 2));
      add_path(s, s0, diff, s1, "s0.diff." + std::string(1, a) + "." + std::string(1, b));
    }
  }
  for (char a : inst.alphabet) {
    std::string l(1, a);
    add_path(s, s1, letters(l, 1), s1, "s1.p1." + l);
    add_path(s, s1, letters(l, 2), s1, "s1.p2." + l);
  }
  for (char a : inst.alphabet) {
    std::string l(1, a);
    add_path(s, s0, letters(l, 1), s2, "s0.p1." + l);
    add_path(s, s2, letters(l, 1), s2, "s2.p1." + l);
  }
  for (char a : inst.alphabet) {
    std::string l(1, a);
    add_path(s, s0, letters(l, 2), s3, "s0.p2." + l);
    add_path(s, s3, letters(l, 2), s3, "s3.p2." + l);
  }
  for (StateId from : {s1, s2, s3}) s.add_transition(from, e, close);
  s.add_transition(close, e_ret, sf);
  return out;
}

bool pcp_equivalent(std::span<const Event> lhs, std::span<const Event> rhs) {
  if (lhs.size() != rhs.size()) return false;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const Action& a = lhs[i].action;
    const Action& b = rhs[i].action;
    if (a.kind != b.kind || a.op != b.op || a.value != b.value) return false;
  }
  return true;
}

bool pcp_projections_equivalent(std::span<const Event> run) {
  return pcp_equivalent(project_process(run, 1), project_process(run, 2));
}

std::optional<std::vector<std::size_t>> pcp_solve(const PcpInstance& inst, std::size_t max_indices) {
  validate(inst);
  // State: which side is ahead and by what suffix. The empty suffix after at
  // least one index is a solution.
  struct Node {
    bool alpha_ahead;
    std::string rest;
    std::vector<std::size_t> indices;
  };
  std::set<std::pair<bool, std::string>> seen;
  std::deque<Node> work{{true, "", {}}};
  while (!work.empty()) {
    Node n = std::move(work.front());
    work.pop_front();
    if (n.indices.size() == max_indices) continue;
    for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
      std::string top = n.alpha_ahead ? n.rest + inst.pairs[i].first : inst.pairs[i].first;
      std::string bottom = n.alpha_ahead ? inst.pairs[i].second : n.rest + inst.pairs[i].second;
      std::size_t common = std::min(top.size(), bottom.size());
      if (top.compare(0, common, bottom, 0, common) != 0) continue;
      Node next{top.size() >= bottom.size(), top.size() >= bottom.size() ? top.substr(common) : bottom.substr(common),
                n.indices};
      next.indices.push_back(i);
      if (next.rest.empty()) return next.indices;
      if (seen.emplace(next.alpha_ahead, next.rest).second) work.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

// ---- diffracting queue -----------------------------------------------------

namespace {

// A read of the balancer followed by a successful CAS is one atomic flip: a
// failed CAS only returns the thread to the read, so the retry loop adds no
// histories.
enum class Phase : std::uint8_t { idle, e1, e3, enq_done, d1, d3, deq_done, finished };

struct Proc {
  Phase phase = Phase::idle;
  std::uint8_t lb = 0;
  std::uint8_t value = 0;  // enqueued value, or the dequeued one
  bool enq = false;

  bool operator==(const Proc&) const = default;
};

struct Config {
  std::uint8_t eb = 0;
  std::uint8_t db = 0;
  std::array<std::vector<std::uint8_t>, 2> queue;
  std::vector<Proc> procs;

  bool operator==(const Config&) const = default;

  std::string key() const {
    std::string k{static_cast<char>(eb), static_cast<char>(db)};
    for (const auto& q : queue) {
      k.push_back(static_cast<char>(q.size()));
      for (auto v : q) k.push_back(static_cast<char>(v));
    }
    for (const auto& p : procs) {
      k.push_back(static_cast<char>(p.phase));
      k.push_back(static_cast<char>(p.lb));
      k.push_back(static_cast<char>(p.value));
      k.push_back(static_cast<char>(p.enq));
    }
    return k;
  }

  std::string name(const std::vector<std::string>& values) const {
    std::string out = std::to_string(eb) + std::to_string(db);
    for (const auto& q : queue) {
      out += "|";
      if (q.empty()) out += "-";
      for (std::size_t i = 0; i < q.size(); ++i) out += (i ? "." : "") + values[q[i]];
    }
    out += "|";
    for (std::size_t i = 0; i < procs.size(); ++i) {
      const Proc& p = procs[i];
      if (i) out += ",";
      std::string lb = "." + std::to_string(p.lb);
      switch (p.phase) {
        case Phase::idle: out += "I"; break;
        case Phase::e1: out += "E1"; break;
        case Phase::e3: out += "E3" + lb; break;
        case Phase::enq_done: out += "ER"; break;
        case Phase::d1: out += "D1"; break;
        case Phase::d3: out += "D3" + lb; break;
        case Phase::deq_done: out += "DR." + values[p.value]; break;
        case Phase::finished: out += p.enq ? "EF" : "DF"; break;
      }
    }
    return out;
  }

  bool quiescent() const {
    return std::all_of(procs.begin(), procs.end(), [](const Proc& p) {
      return p.phase == Phase::idle || p.phase == Phase::finished;
    });
  }
};

void check_queue_options(const QueueOptions& o) {
  if (o.max_enq < o.max_deq) {
    throw InvalidInstance("the queue generator needs max_enq >= max_deq");
  }
  if (o.values.size() < o.max_enq) {
    throw InvalidInstance("the queue generator needs at least max_enq values");
  }
  if (o.max_enq > 64 || o.max_deq > 64) throw InvalidInstance("at most 64 operations of each kind");
  for (const auto& v : o.values) {
    if (!is_identifier(v)) throw InvalidInstance("queue value '" + v + "' is not an identifier");
  }
}

}  // namespace

Automaton queue_impl(const QueueOptions& o) {
  check_queue_options(o);
  const std::size_t nprocs = o.max_enq + o.max_deq;

  EpsilonNfa nfa;
  std::unordered_map<std::string, StateId> index;
  std::vector<Config> configs;
  std::deque<StateId> work;

  auto intern = [&](Config c) -> StateId {
    std::string k = c.key();
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    if (configs.size() >= o.config_limit) {
      throw CapacityExceeded("queue configuration space exceeds " + std::to_string(o.config_limit) +
                             " states");
    }
    StateId id = nfa.add_state(c.name(o.values));
    if (c.quiescent()) nfa.set_final(id);
    index.emplace(std::move(k), id);
    configs.push_back(std::move(c));
    work.push_back(id);
    return id;
  };

  Config init;
  init.procs.resize(nprocs);
  nfa.set_initial(intern(init));

  while (!work.empty()) {
    StateId id = work.front();
    work.pop_front();
    const Config c = configs[id];

    std::size_t enqs = 0;
    std::size_t deqs = 0;
    std::optional<std::size_t> next_idle;
    for (std::size_t i = 0; i < nprocs; ++i) {
      const Proc& p = c.procs[i];
      if (p.phase == Phase::idle) {
        if (!next_idle) next_idle = i;
      } else {
        (p.enq ? enqs : deqs)++;
      }
    }
    if (next_idle) {
      const auto pid = static_cast<ProcessId>(*next_idle + 1);
      if (enqs < o.max_enq) {
        Config n = c;
        n.procs[*next_idle] = Proc{Phase::e1, 0, static_cast<std::uint8_t>(enqs), true};
        nfa.add(id, Action::invoke(pid, "enq", o.values[enqs]), intern(std::move(n)));
      }
      if (deqs < o.max_deq) {
        Config n = c;
        n.procs[*next_idle] = Proc{Phase::d1, 0, 0, false};
        nfa.add(id, Action::invoke(pid, "deq"), intern(std::move(n)));
      }
    }

    for (std::size_t i = 0; i < nprocs; ++i) {
      const Proc& p = c.procs[i];
      const auto pid = static_cast<ProcessId>(i + 1);
      Config n = c;
      Proc& np = n.procs[i];
      switch (p.phase) {
        case Phase::idle:
        case Phase::finished:
          continue;
        case Phase::e1:  // do lb := eb until CAS(eb, lb, 1 - lb)
          np.phase = Phase::e3;
          np.lb = c.eb;
          n.eb = static_cast<std::uint8_t>(1 - c.eb);
          break;
        case Phase::e3:  // Enq(queue[lb], el)
          n.queue[p.lb].push_back(p.value);
          np = Proc{Phase::enq_done, 0, 0, true};
          break;
        case Phase::enq_done:
          np = Proc{Phase::finished, 0, 0, true};
          nfa.add(id, Action::response(pid, "enq"), intern(std::move(n)));
          continue;
        case Phase::d1:  // do lb := db until CAS(db, lb, 1 - lb)
          np.phase = Phase::d3;
          np.lb = c.db;
          n.db = static_cast<std::uint8_t>(1 - c.db);
          break;
        case Phase::d3:  // Deq(queue[lb]), blocking while empty
          if (c.queue[p.lb].empty()) continue;
          np = Proc{Phase::deq_done, 0, c.queue[p.lb].front(), false};
          n.queue[p.lb].erase(n.queue[p.lb].begin());
          break;
        case Phase::deq_done:
          np = Proc{Phase::finished, 0, 0, false};
          nfa.add(id, Action::response(pid, "deq", o.values[p.value]), intern(std::move(n)));
          continue;
      }
      nfa.add_epsilon(id, intern(std::move(n)));
    }
  }
  return nfa.eliminate();
}

Automaton queue_spec(const QueueOptions& o) {
  check_queue_options(o);
  const std::size_t nprocs = o.max_enq + o.max_deq;
  const std::size_t nvalues = o.values.size();

  Automaton a;
  std::map<std::vector<std::size_t>, StateId> states;
  std::deque<std::vector<std::size_t>> work;
  auto name = [&](const std::vector<std::size_t>& q) {
    std::string out = "Q";
    for (auto v : q) out += "." + o.values[v];
    return out;
  };
  auto state = [&](const std::vector<std::size_t>& q) {
    auto it = states.find(q);
    if (it != states.end()) return it->second;
    StateId id = a.add_state(name(q));
    a.set_final(id);
    states.emplace(q, id);
    work.push_back(q);
    return id;
  };
  a.set_initial(state({}));

  while (!work.empty()) {
    auto q = work.front();
    work.pop_front();
    StateId from = states.at(q);
    for (std::size_t p = 1; p <= nprocs; ++p) {
      const auto pid = static_cast<ProcessId>(p);
      if (q.size() < o.max_enq) {
        for (std::size_t v = 0; v < nvalues; ++v) {
          auto next = q;
          next.push_back(v);
          StateId mid = a.add_state(name(q) + "~enq." + std::to_string(p) + "." + o.values[v]);
          a.add_transition(from, Action::invoke(pid, "enq", o.values[v]), mid);
          a.add_transition(mid, Action::response(pid, "enq"), state(next));
        }
      }
      if (!q.empty()) {
        auto next = q;
        next.erase(next.begin());
        StateId mid = a.add_state(name(q) + "~deq." + std::to_string(p));
        a.add_transition(from, Action::invoke(pid, "deq"), mid);
        a.add_transition(mid, Action::response(pid, "deq", o.values[q.front()]), state(next));
      }
    }
  }
  return a;
}

Run queue_h1(const std::vector<std::string>& v) {
  return make_run(std::vector<Action>{
      Action::invoke(1, "deq"), Action::invoke(2, "enq", v.at(0)), Action::response(2, "enq"),
      Action::invoke(3, "enq", v.at(1)), Action::response(3, "enq"), Action::invoke(4, "deq"),
      Action::response(4, "deq", v.at(1)), Action::invoke(5, "deq"), Action::response(5, "deq", v.at(0)),
      Action::invoke(6, "enq", v.at(2)), Action::response(6, "enq"), Action::response(1, "deq", v.at(2))});
}

Run queue_h2(const std::vector<std::string>& v) {
  return make_run(std::vector<Action>{
      Action::invoke(3, "enq", v.at(1)), Action::response(3, "enq"), Action::invoke(2, "enq", v.at(0)),
      Action::response(2, "enq"), Action::invoke(4, "deq"), Action::response(4, "deq", v.at(1)),
      Action::invoke(5, "deq"), Action::response(5, "deq", v.at(0)), Action::invoke(6, "enq", v.at(2)),
      Action::response(6, "enq"), Action::invoke(1, "deq"), Action::response(1, "deq", v.at(2))});
}

QueueCorpus gen_queue_corpus(const QueueOptions& o) {
  QueueCorpus out;
  out.impl = queue_impl(o);
  out.spec = queue_spec(o);

  std::mt19937_64 rng(o.seed);
  std::set<Run> seen;
  for (std::size_t i = 0; i < o.samples; ++i) {
    std::vector<Action> walk;
    StateId s = out.impl.initial();
    while (!out.impl.outgoing(s).empty()) {
      auto moves = out.impl.outgoing(s);
      std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
      const auto& t = out.impl.transition(moves[pick(rng)]);
      walk.push_back(t.label);
      s = t.target;
    }
    if (!out.impl.is_final(s)) continue;
    Run run = make_run(walk);
    if (seen.insert(run).second) out.runs.push_back(std::move(run));
  }
  if (o.max_enq >= 3 && o.max_deq >= 3) {
    Run h1 = queue_h1(o.values);
    if (seen.insert(h1).second) out.runs.push_back(std::move(h1));
  }
  return out;
}

}  // namespace qcheck
