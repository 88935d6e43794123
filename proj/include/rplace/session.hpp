#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rplace/serialize.hpp"

namespace rplace {

/// Error with a machine-readable code ("unknown-name", "wrong-kind", ...).
struct CommandError : std::runtime_error {
  CommandError(std::string c, const std::string& msg) : std::runtime_error(msg), code(std::move(c)) {}
  std::string code;
};

struct SessionOptions {
  std::uint64_t seed = 1;
  std::size_t max_steps = kDefaultMaxSteps;
};

struct CommandResult {
  /// {command, inputs, result, certificates?} or {command, inputs, error}.
  Json json;
  std::string text;
  bool ok = true;
};

/// Named fields, elements, cuts, balls and places, and the command loop
/// over them. One command per line; '#' starts a comment.
class Session {
 public:
  explicit Session(SessionOptions opts = {});
  ~Session();
  Session(Session&&) noexcept;
  Session& operator=(Session&&) noexcept;

  /// Blank and comment-only lines give nullopt.
  std::optional<CommandResult> run(const std::string& line);

  /// Every command word, in the order of the dispatch table.
  static const std::vector<std::string>& commands();

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace rplace
