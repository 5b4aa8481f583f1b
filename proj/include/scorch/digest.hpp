#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace scorch {

// 64-bit FNV-1a over raw bytes. Content identifier for payloads in exports
// and caches; not a cryptographic hash.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Hex-encoded digest (16 lowercase hex chars).
std::string content_digest(std::string_view bytes);

}  // namespace scorch
