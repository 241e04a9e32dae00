#ifndef TWOSERVER_RANDOM_H_
#define TWOSERVER_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace twoserver {

// All sampling goes through std::mt19937_64. Independent streams (shards,
// checks) are seeded with splitmix64(root ^ golden * (stream + 1)).
using Rng = std::mt19937_64;

inline constexpr std::string_view kRngAlgorithm = "mt19937_64/splitmix64";

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

// Uniform variate on [0, 1) with 53 random bits; does not depend on the
// standard library's distribution implementations.
double uniform01(Rng& rng);

}  // namespace twoserver

#endif  // TWOSERVER_RANDOM_H_
