#include "qcheck/parikh.hpp"

#include <algorithm>
#include <vector>

#include "qcheck/errors.hpp"

namespace qcheck {

ParikhVector parikh_vector(std::span<const std::string> word) {
  ParikhVector v;
  for (const auto& s : word) ++v[s];
  return v;
}

std::set<ParikhVector> parikh_image_finite(const WordAutomaton& a) {
  if (!is_acyclic(a)) throw NotAcyclic("automaton has a cycle reachable from its initial state");
  std::set<ParikhVector> image;
  if (a.num_states() == 0) return image;

  // Distinct (state, vector) pairs; finite because the automaton is acyclic.
  std::set<std::pair<StateId, ParikhVector>> seen;
  std::vector<std::pair<StateId, ParikhVector>> stack{{a.initial(), {}}};
  seen.insert(stack.back());
  while (!stack.empty()) {
    auto [s, v] = std::move(stack.back());
    stack.pop_back();
    if (a.is_final(s)) image.insert(v);
    for (std::size_t ti : a.outgoing(s)) {
      const auto& t = a.transition(ti);
      ParikhVector next = v;
      ++next[t.label];
      if (seen.emplace(t.target, next).second) stack.emplace_back(t.target, std::move(next));
    }
  }
  return image;
}

bool parikh_inclusion_finite(const WordAutomaton& a, const WordAutomaton& b) {
  auto lhs = parikh_image_finite(a);
  auto rhs = parikh_image_finite(b);
  return std::includes(rhs.begin(), rhs.end(), lhs.begin(), lhs.end());
}

std::string to_string(const ParikhVector& v) {
  std::string out = "(";
  bool first = true;
  for (const auto& [sym, n] : v) {
    if (!first) out += ", ";
    first = false;
    out += sym + "=" + std::to_string(n);
  }
  return out + ")";
}

}  // namespace qcheck
