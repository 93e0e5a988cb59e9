// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_RNG_HPP
#define MMLAB_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace mmlab {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// FNV-1a hash of a stream label.
std::uint64_t hash_label(std::string_view label) noexcept;

/// Counter-based substream seed. The result depends only on the master seed,
/// the label and the index path, never on the order in which substreams are
/// requested, so work can be scheduled on any number of threads.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::initializer_list<std::uint64_t> path = {}) noexcept;

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

}  // namespace mmlab

#endif  // MMLAB_RNG_HPP
