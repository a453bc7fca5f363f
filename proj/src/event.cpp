#include "qcheck/event.hpp"

#include <charconv>
#include <vector>

#include "qcheck/errors.hpp"

namespace qcheck {

bool matches(const Action& invoke, const Action& response) noexcept {
  return invoke.is_invoke() && response.is_response() && invoke.process == response.process &&
         invoke.op == response.op;
}

bool is_identifier(std::string_view text) noexcept {
  if (text.empty()) return false;
  for (char c : text) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_';
    if (!ok) return false;
  }
  return true;
}

Action parse_action(std::string_view token, bool allow_delta, std::size_t line,
                    std::size_t column) {
  if (token == "delta") {
    if (!allow_delta) throw ParseError(line, column, "'delta' is not allowed here");
    return Action::delta();
  }

  std::vector<std::string_view> parts;
  std::vector<std::size_t> offsets;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= token.size(); ++i) {
    if (i == token.size() || token[i] == ':') {
      parts.push_back(token.substr(start, i - start));
      offsets.push_back(start);
      start = i + 1;
    }
  }
  if (parts.size() < 3 || parts.size() > 4) {
    throw ParseError(line, column, "malformed event '" + std::string(token) + "'");
  }

  Action action;
  if (parts[0] == "inv") {
    action.kind = EventKind::invoke;
  } else if (parts[0] == "res") {
    action.kind = EventKind::response;
  } else {
    throw ParseError(line, column, "event kind must be 'inv' or 'res', got '" +
                                       std::string(parts[0]) + "'");
  }

  const auto proc = parts[1];
  auto [ptr, ec] = std::from_chars(proc.data(), proc.data() + proc.size(), action.process);
  if (proc.empty() || ec != std::errc{} || ptr != proc.data() + proc.size()) {
    throw ParseError(line, column + offsets[1],
                     "process must be a nonnegative integer, got '" + std::string(proc) + "'");
  }
  if (!is_identifier(parts[2])) {
    throw ParseError(line, column + offsets[2],
                     "operation must be an identifier, got '" + std::string(parts[2]) + "'");
  }
  action.op = std::string(parts[2]);
  if (parts.size() == 4) {
    if (!is_identifier(parts[3])) {
      throw ParseError(line, column + offsets[3],
                       "value must be an identifier, got '" + std::string(parts[3]) + "'");
    }
    action.value = std::string(parts[3]);
  }
  return action;
}

std::string to_string(const Action& action) {
  if (action.is_delta()) return "delta";
  std::string out = action.is_invoke() ? "inv:" : "res:";
  out += std::to_string(action.process);
  out += ':';
  out += action.op;
  if (action.value) {
    out += ':';
    out += *action.value;
  }
  return out;
}

std::size_t ActionHash::operator()(const Action& a) const noexcept {
  std::size_t h = std::hash<std::string>{}(a.op);
  h ^= (static_cast<std::size_t>(a.kind) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  h ^= (static_cast<std::size_t>(a.process) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  if (a.value) h ^= std::hash<std::string>{}(*a.value) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace qcheck
