#include "neoplanner/state_id.hpp"

#include <openssl/evp.h>

#include <array>
#include <cctype>
#include <stdexcept>

namespace neoplanner {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

}  // namespace

StateId StateId::parse(std::string_view text) {
  if (text == "ROOT" || text == "INVALID") return StateId(std::string(text));
  if (text.size() != 64) {
    throw std::invalid_argument("malformed state id: " + std::string(text));
  }
  for (char c : text) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) {
      throw std::invalid_argument("malformed state id: " + std::string(text));
    }
  }
  return StateId(std::string(text));
}

std::string canonicalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string canonical_state_text(std::string_view observation,
                                 std::string_view inventory) {
  return "observation\x1f" + canonicalize_text(observation) + "\x1finventory\x1f" +
         canonicalize_text(inventory);
}

StateId encode_state(std::string_view observation, std::string_view inventory) {
  if (canonicalize_text(observation).empty()) {
    throw std::invalid_argument("encode_state: empty observation");
  }
  return StateId(sha256_hex(canonical_state_text(observation, inventory)));
}

}  // namespace neoplanner
