// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mmlab/rng.hpp"

namespace mmlab {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_label(std::string_view label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(master ^ mix64(hash_label(label)));
  std::uint64_t depth = 0;
  for (std::uint64_t idx : path) {
    h = mix64(h ^ mix64(idx + 0x632be59bd9b4e019ULL * ++depth));
  }
  return h;
}

}  // namespace mmlab
