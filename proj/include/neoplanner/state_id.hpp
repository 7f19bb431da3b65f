#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace neoplanner {

// Opaque identifier of a latent state. Encoded ids are 64 lowercase hex
// characters (SHA-256 of the canonical state text); the two reserved ids use
// uppercase letters and can never collide with an encoded one.
class StateId {
 public:
  StateId() = default;

  static StateId root() { return StateId("ROOT"); }
  static StateId invalid() { return StateId("INVALID"); }

  // Accepts either a reserved name or a 64-char lowercase hex digest.
  static StateId parse(std::string_view text);

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }
  bool is_root() const noexcept { return value_ == "ROOT"; }
  bool is_invalid() const noexcept { return value_ == "INVALID"; }
  bool is_reserved() const noexcept { return is_root() || is_invalid(); }

  friend auto operator<=>(const StateId&, const StateId&) = default;

 private:
  explicit StateId(std::string v) : value_(std::move(v)) {}
  friend StateId encode_state(std::string_view, std::string_view);

  std::string value_;
};

// Collapses whitespace runs to one space, trims, and ASCII-lowercases.
std::string canonicalize_text(std::string_view text);

// Canonical form of an observation/inventory pair; observation first.
std::string canonical_state_text(std::string_view observation,
                                 std::string_view inventory);

// Digest of canonical_state_text(observation, inventory). Throws
// std::invalid_argument on an empty observation.
StateId encode_state(std::string_view observation, std::string_view inventory);

}  // namespace neoplanner

template <>
struct std::hash<neoplanner::StateId> {
  std::size_t operator()(const neoplanner::StateId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
