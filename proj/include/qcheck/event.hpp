#ifndef QCHECK_EVENT_HPP
#define QCHECK_EVENT_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace qcheck {

using ProcessId = std::uint32_t;

enum class EventKind : std::uint8_t { invoke, response, delta };

/// An un-indexed event: the alphabet symbol automata transitions carry.
///
/// The quiescence marker is an Action of kind `delta`; its process and op
/// are ignored.
struct Action {
  EventKind kind = EventKind::invoke;
  ProcessId process = 0;
  std::string op;
  std::optional<std::string> value;

  static Action invoke(ProcessId p, std::string op, std::optional<std::string> value = {}) {
    return Action{EventKind::invoke, p, std::move(op), std::move(value)};
  }
  static Action response(ProcessId p, std::string op, std::optional<std::string> value = {}) {
    return Action{EventKind::response, p, std::move(op), std::move(value)};
  }
  static Action delta() { return Action{EventKind::delta, 0, {}, {}}; }

  bool is_delta() const noexcept { return kind == EventKind::delta; }
  bool is_invoke() const noexcept { return kind == EventKind::invoke; }
  bool is_response() const noexcept { return kind == EventKind::response; }

  auto operator<=>(const Action&) const = default;
  bool operator==(const Action&) const = default;
};

/// An action occurrence inside a run. `occ` counts earlier identical actions
/// in the same run, so (action, occ) is unique within a run.
struct Event {
  Action action;
  std::uint32_t occ = 0;

  auto operator<=>(const Event&) const = default;
  bool operator==(const Event&) const = default;
};

/// `invoke` matches `response` iff they agree on process and operation.
bool matches(const Action& invoke, const Action& response) noexcept;

bool is_identifier(std::string_view text) noexcept;

/// Token grammar: `inv:<proc>:<op>[:<value>]`, `res:<proc>:<op>[:<value>]`,
/// or the bare token `delta`. Throws ParseError with column offsets relative
/// to `column`.
Action parse_action(std::string_view token, bool allow_delta, std::size_t line = 1,
                    std::size_t column = 1);

std::string to_string(const Action& action);
inline std::string to_string(const Event& event) { return to_string(event.action); }

struct ActionHash {
  std::size_t operator()(const Action& a) const noexcept;
};

}  // namespace qcheck

#endif  // QCHECK_EVENT_HPP
