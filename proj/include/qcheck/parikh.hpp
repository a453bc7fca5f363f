#ifndef QCHECK_PARIKH_HPP
#define QCHECK_PARIKH_HPP

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>

#include "qcheck/automaton.hpp"

namespace qcheck {

/// Symbol -> occurrence count. Symbols with count zero are omitted, so two
/// words have equal vectors iff one is a permutation of the other.
using ParikhVector = std::map<std::string, std::size_t>;

ParikhVector parikh_vector(std::span<const std::string> word);

/// Parikh image of a finite language. Throws NotAcyclic when a cycle is
/// reachable from the initial state.
std::set<ParikhVector> parikh_image_finite(const WordAutomaton& a);

/// Whether every Parikh vector of L(a) is one of L(b). Both automata must be
/// acyclic (NotAcyclic otherwise).
bool parikh_inclusion_finite(const WordAutomaton& a, const WordAutomaton& b);

std::string to_string(const ParikhVector& v);

}  // namespace qcheck

#endif  // QCHECK_PARIKH_HPP
