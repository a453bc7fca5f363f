#ifndef QCHECK_IO_HPP
#define QCHECK_IO_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcheck/automaton.hpp"
#include "qcheck/generators.hpp"
#include "qcheck/history.hpp"

namespace qcheck {

// Automaton files are line based; `#` starts a comment:
//
//   states: s0 s1 s2
//   initial: s0
//   final: s0 s2
//   trans: s0 inv:1:enq:a s1
//
// State names are any tokens without whitespace or `#`. `delta` labels are
// accepted only with allow_delta. All parsers throw ParseError with 1-based
// line and column.

Automaton parse_automaton(std::string_view text, bool allow_delta = false);
std::string format_automaton(const Automaton& a);

/// Same layout with plain identifier symbols as labels.
WordAutomaton parse_word_automaton(std::string_view text);
std::string format_word_automaton(const WordAutomaton& a);

/// Whitespace-separated event tokens.
Run parse_history(std::string_view text, bool allow_delta = false);

/// One event per line; with quiescent points, a trailing comment line
/// `# quiescent points: 0 4 12`.
std::string format_history(std::span<const Event> run,
                           const std::vector<std::size_t>* quiescent_points = nullptr);

/// `vars: k`, then one clause per line as three signed integers.
SatInstance parse_sat(std::string_view text);
std::string format_sat(const SatInstance& inst);

/// `alphabet: a b ...`, then `pair: <alpha> <beta>` lines; `-` is the
/// empty word.
PcpInstance parse_pcp(std::string_view text);
std::string format_pcp(const PcpInstance& inst);

/// Throw IoError.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace qcheck

#endif  // QCHECK_IO_HPP
