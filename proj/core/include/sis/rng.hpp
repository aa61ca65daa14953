#pragma once

#include <array>
#include <cstdint>

namespace sis::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11). Stateless: the output
/// is a pure function of (counter, key).
Counter philox4x32_10(Counter ctr, Key key) noexcept;

/// SplitMix64 finalizer. Used to derive per-path seeds from (base, index).
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for path `index` of an ensemble keyed by `base_seed`.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept;

/// Uniform in the open interval ]0,1[ from 32 random bits.
double u01_open(std::uint32_t bits) noexcept;

/// Standard normal variate addressed by (seed, stream, level, index).
/// Box-Muller on one Philox block: words 0 and 1 feed the radius, word 2
/// the angle. Each address maps to exactly one variate.
double gaussian_at(std::uint64_t seed, std::uint32_t stream, std::uint32_t level,
                   std::uint64_t index) noexcept;

}  // namespace sis::rng
