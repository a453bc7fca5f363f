#include "qcheck/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qcheck/errors.hpp"

namespace qcheck {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

// Splits into lines of whitespace-separated tokens, dropping comments and
// blank lines.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) line.tokens.push_back({raw.substr(i, j - i), i + 1});
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::size_t last_line(std::string_view text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
}

template <class Label, class ParseLabel>
BasicAutomaton<Label> parse_generic(std::string_view text, ParseLabel parse_label) {
  BasicAutomaton<Label> a;
  bool has_initial = false;
  for (const Line& line : tokenize(text)) {
    const Token& key = line.tokens.front();
    auto state = [&](const Token& t) {
      auto s = a.find_state(t.text);
      if (!s) throw ParseError(line.number, t.column, "unknown state '" + std::string(t.text) + "'");
      return *s;
    };
    if (key.text == "states:") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        const Token& t = line.tokens[i];
        if (a.find_state(t.text)) {
          throw ParseError(line.number, t.column, "duplicate state '" + std::string(t.text) + "'");
        }
        a.add_state(std::string(t.text));
      }
    } else if (key.text == "initial:") {
      if (line.tokens.size() != 2) {
        throw ParseError(line.number, key.column, "'initial:' takes exactly one state");
      }
      if (has_initial) throw ParseError(line.number, key.column, "initial state declared twice");
      a.set_initial(state(line.tokens[1]));
      has_initial = true;
    } else if (key.text == "final:") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i) a.set_final(state(line.tokens[i]));
    } else if (key.text == "trans:") {
      if (line.tokens.size() != 4) {
        throw ParseError(line.number, key.column, "'trans:' takes a source, a label and a target");
      }
      StateId from = state(line.tokens[1]);
      Label label = parse_label(line.tokens[2], line.number);
      a.add_transition(from, std::move(label), state(line.tokens[3]));
    } else {
      throw ParseError(line.number, key.column,
                       "expected 'states:', 'initial:', 'final:' or 'trans:', found '" +
                           std::string(key.text) + "'");
    }
  }
  if (!has_initial && a.num_states() != 0) {
    throw ParseError(last_line(text), 1, "missing 'initial:' line");
  }
  return a;
}

template <class Label, class FormatLabel>
std::string format_generic(const BasicAutomaton<Label>& a, FormatLabel format_label) {
  std::string out = "states:";
  for (StateId s = 0; s < a.num_states(); ++s) out += " " + a.name(s);
  out += "\n";
  if (a.num_states() != 0) out += "initial: " + a.name(a.initial()) + "\n";
  out += "final:";
  for (StateId s : a.finals()) out += " " + a.name(s);
  out += "\n";
  for (const auto& t : a.transitions()) {
    out += "trans: " + a.name(t.source) + " " + format_label(t.label) + " " + a.name(t.target) + "\n";
  }
  return out;
}

int parse_int(const Token& t, std::size_t line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
    throw ParseError(line, t.column, "expected an integer, found '" + std::string(t.text) + "'");
  }
  return value;
}

}  // namespace

Automaton parse_automaton(std::string_view text, bool allow_delta) {
  return parse_generic<Action>(text, [&](const Token& t, std::size_t line) {
    return parse_action(t.text, allow_delta, line, t.column);
  });
}

std::string format_automaton(const Automaton& a) {
  return format_generic(a, [](const Action& act) { return to_string(act); });
}

WordAutomaton parse_word_automaton(std::string_view text) {
  return parse_generic<std::string>(text, [](const Token& t, std::size_t line) {
    if (!is_identifier(t.text)) {
      throw ParseError(line, t.column, "symbol '" + std::string(t.text) + "' is not an identifier");
    }
    return std::string(t.text);
  });
}

std::string format_word_automaton(const WordAutomaton& a) {
  return format_generic(a, [](const std::string& s) { return s; });
}

Run parse_history(std::string_view text, bool allow_delta) {
  std::vector<Action> actions;
  for (const Line& line : tokenize(text)) {
    for (const Token& t : line.tokens) actions.push_back(parse_action(t.text, allow_delta, line.number, t.column));
  }
  return make_run(actions);
}

std::string format_history(std::span<const Event> run, const std::vector<std::size_t>* quiescent_points) {
  std::string out;
  for (const auto& e : run) out += to_string(e) + "\n";
  if (quiescent_points) {
    out += "# quiescent points:";
    for (auto p : *quiescent_points) out += " " + std::to_string(p);
    out += "\n";
  }
  return out;
}

SatInstance parse_sat(std::string_view text) {
  SatInstance inst;
  auto lines = tokenize(text);
  if (lines.empty() || lines.front().tokens.front().text != "vars:" || lines.front().tokens.size() != 2) {
    std::size_t n = lines.empty() ? 1 : lines.front().number;
    throw ParseError(n, 1, "expected 'vars: <count>' as the first line");
  }
  int k = parse_int(lines.front().tokens[1], lines.front().number);
  if (k < 1) throw ParseError(lines.front().number, lines.front().tokens[1].column, "need at least one variable");
  inst.num_vars = static_cast<std::size_t>(k);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens.size() != 3) {
      throw ParseError(line.number, line.tokens.front().column, "a clause has exactly three literals");
    }
    std::array<int, 3> clause{};
    for (std::size_t j = 0; j < 3; ++j) {
      int lit = parse_int(line.tokens[j], line.number);
      if (lit == 0 || std::abs(lit) > k) {
        throw ParseError(line.number, line.tokens[j].column,
                         "literal " + std::to_string(lit) + " outside 1.." + std::to_string(k));
      }
      clause[j] = lit;
    }
    inst.clauses.push_back(clause);
  }
  return inst;
}

std::string format_sat(const SatInstance& inst) {
  std::string out = "vars: " + std::to_string(inst.num_vars) + "\n";
  for (const auto& c : inst.clauses) {
    out += std::to_string(c[0]) + " " + std::to_string(c[1]) + " " + std::to_string(c[2]) + "\n";
  }
  return out;
}

PcpInstance parse_pcp(std::string_view text) {
  PcpInstance inst;
  bool has_alphabet = false;
  for (const Line& line : tokenize(text)) {
    const Token& key = line.tokens.front();
    if (key.text == "alphabet:") {
      if (has_alphabet) throw ParseError(line.number, key.column, "alphabet declared twice");
      has_alphabet = true;
      for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        const Token& t = line.tokens[i];
        if (t.text.size() != 1 || !is_identifier(t.text)) {
          throw ParseError(line.number, t.column, "letters are single identifier characters");
        }
        inst.alphabet.push_back(t.text[0]);
      }
    } else if (key.text == "pair:") {
      if (!has_alphabet) throw ParseError(line.number, key.column, "'pair:' before 'alphabet:'");
      if (line.tokens.size() != 3) {
        throw ParseError(line.number, key.column, "'pair:' takes two words");
      }
      std::string words[2];
      for (std::size_t w = 0; w < 2; ++w) {
        const Token& t = line.tokens[w + 1];
        if (t.text == "-") continue;
        for (std::size_t c = 0; c < t.text.size(); ++c) {
          if (std::find(inst.alphabet.begin(), inst.alphabet.end(), t.text[c]) == inst.alphabet.end()) {
            throw ParseError(line.number, t.column + c,
                             std::string("letter '") + t.text[c] + "' is not in the alphabet");
          }
        }
        words[w] = std::string(t.text);
      }
      if (words[0].empty() && words[1].empty()) {
        throw ParseError(line.number, key.column, "a pair of two empty words");
      }
      inst.pairs.emplace_back(words[0], words[1]);
    } else {
      throw ParseError(line.number, key.column,
                       "expected 'alphabet:' or 'pair:', found '" + std::string(key.text) + "'");
    }
  }
  if (inst.pairs.empty()) throw ParseError(last_line(text), 1, "no 'pair:' lines");
  return inst;
}

std::string format_pcp(const PcpInstance& inst) {
  std::string out = "alphabet:";
  for (char c : inst.alphabet) out += std::string(" ") + c;
  out += "\n";
  for (const auto& [alpha, beta] : inst.pairs) {
    out += "pair: " + (alpha.empty() ? std::string("-") : alpha) + " " +
           (beta.empty() ? std::string("-") : beta) + "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace qcheck
