#pragma once

#include <cstdint>
#include <random>

namespace streambias {

/// Independent random substreams. Every consumer of randomness names a
/// domain, so equal (seed, index) pairs in different domains never share a
/// stream.
enum class RngDomain : std::uint32_t {
  Firehose = 1,
  Sampler = 2,
  Bootstrap = 3,
  Baseline = 4,
};

inline std::mt19937_64 make_engine(std::uint64_t seed, RngDomain domain, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(domain), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace streambias
