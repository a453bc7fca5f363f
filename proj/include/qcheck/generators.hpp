#ifndef QCHECK_GENERATORS_HPP
#define QCHECK_GENERATORS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcheck/automaton.hpp"
#include "qcheck/history.hpp"

namespace qcheck {

// ---- one-in-three SAT -> QC membership -------------------------------------

/// Literal +i is v_i, -i is its negation (1 <= i <= num_vars).
struct SatInstance {
  std::size_t num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
};

/// Throws InvalidInstance when num_vars is 0 or a literal is out of range.
void validate(const SatInstance& inst);

struct SatMembership {
  Automaton spec;
  Run sigma;
  bool duplicate_literals = false;  // some clause repeats a literal
};

/// Spec with main states s, s0..sk, sf and one path per (variable, truth
/// value) carrying a call pair e_j for every occurrence of the literal in
/// clause j; sigma = e0 e1 e1' ... en en' e e' e0'. Clause j's calls run on
/// process j, e0 on process 0, e on process n+1. sigma is QC-allowed iff the
/// instance has a one-in-three solution.
SatMembership gen_sat_membership(const SatInstance& inst);

/// Exhaustive search over the 2^k assignments.
bool sat_brute_force(const SatInstance& inst);

// ---- Parikh inclusion -> QC correctness ------------------------------------

struct ParikhPair {
  Automaton impl;                    // A': e (a-path with x -> e_x e_x') e'
  Automaton spec;                    // B': (b-path with x -> e_x e_x') e e'
  std::optional<std::size_t> bound;  // 2 * longest path of a + 2, when a is acyclic
};

/// Symbol x becomes the call pair inv:1:x / res:1:x; the framing pair e is
/// on process 0. With `alphabet` given, every symbol of a and b must be in
/// it (AlphabetMismatch otherwise); symbols must be identifiers.
ParikhPair gen_parikh_pair(const WordAutomaton& a, const WordAutomaton& b,
                           const std::optional<std::vector<std::string>>& alphabet = std::nullopt);

// ---- PCP -> QSC correctness ------------------------------------------------

/// Letters are single identifier characters; words are strings over them.
struct PcpInstance {
  std::vector<char> alphabet;
  std::vector<std::pair<std::string, std::string>> pairs;
};

/// Throws InvalidInstance on an empty pair list, a pair of two empty words,
/// a letter outside the alphabet, or a non-identifier letter.
void validate(const PcpInstance& inst);

struct PcpAutomata {
  Automaton impl;  // M_PCP
  Automaton spec;  // S
};

/// The letter a of the p-th word becomes inv:p:a res:p:a (p = 1 for alpha,
/// 2 for beta); the framing pair e runs on process 0.
PcpAutomata gen_pcp_instance(const PcpInstance& inst);

/// to_events("ab", p) = inv:p:a res:p:a inv:p:b res:p:b
Run pcp_to_events(std::string_view word, ProcessId p);

/// Equality after erasing processes from event labels.
bool pcp_equivalent(std::span<const Event> lhs, std::span<const Event> rhs);

/// Whether the process-1 and process-2 projections of `run` are equivalent.
bool pcp_projections_equivalent(std::span<const Event> run);

/// Shortest solution (index sequence, 0-based) using at most `max_indices`
/// indices, by breadth-first search over the unmatched remainder.
std::optional<std::vector<std::size_t>> pcp_solve(const PcpInstance& inst, std::size_t max_indices);

// ---- diffracting queue -----------------------------------------------------

struct QueueOptions {
  std::size_t max_enq = 0;
  std::size_t max_deq = 0;
  std::vector<std::string> values;
  std::size_t samples = 32;         // random maximal histories to draw
  std::uint64_t seed = 1;
  std::size_t config_limit = 4'000'000;
};

struct QueueCorpus {
  Automaton impl;
  Automaton spec;
  std::vector<Run> runs;
};

/// Reachable-configuration automaton of the two-balancer queue. The i-th
/// invocation runs on process i and performs one enqueue (of
/// values[#earlier enqueues]) or one dequeue; dequeue blocks while its
/// queue is empty. Internal steps are eliminated. Throws CapacityExceeded
/// past `config_limit` configurations and InvalidInstance when
/// max_enq < max_deq or values are too few.
Automaton queue_impl(const QueueOptions& options);

/// Sequential blocking queue of capacity max_enq on processes
/// 1..max_enq+max_deq. Every call-free state is final.
Automaton queue_spec(const QueueOptions& options);

/// Implementation, spec, and a deduplicated list of seeded random maximal
/// histories, plus h1 when at least three enqueues and dequeues fit.
QueueCorpus gen_queue_corpus(const QueueOptions& options);

/// D1 E2(a) E2' E3(b) E3' D4 D4'(b) D5 D5'(a) E6(c) E6' D1'(c) with
/// a, b, c = values[0..2].
Run queue_h1(const std::vector<std::string>& values = {"a", "b", "c"});

/// E3(b) E3' E2(a) E2' D4 D4'(b) D5 D5'(a) E6(c) E6' D1 D1'(c).
Run queue_h2(const std::vector<std::string>& values = {"a", "b", "c"});

}  // namespace qcheck

#endif  // QCHECK_GENERATORS_HPP
