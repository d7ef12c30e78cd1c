#pragma once

#include <cstdint>
#include <random>

namespace evnav {

using Rng = std::mt19937_64;

// splitmix64 mixer, used to derive independent stream seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed splitter: seed(master, stream, index) = mix(master ^ mix(stream ^ mix(index))).
// Every random draw in a run flows from a seed derived this way, so a run is fully
// reproducible from (master seed, config).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index = 0) {
  return splitmix64(master ^ splitmix64(stream ^ splitmix64(index)));
}

// Stream ids for derive_seed.
namespace seed_stream {
constexpr std::uint64_t kEpisode = 1;     // per-episode environment seed
constexpr std::uint64_t kActorInit = 2;   //
constexpr std::uint64_t kCriticInit = 3;  //
constexpr std::uint64_t kOuNoise = 4;     //
constexpr std::uint64_t kReplay = 5;      // replay sampling
constexpr std::uint64_t kBc = 6;          // behavior-cloning shuffles
constexpr std::uint64_t kEval = 7;        // evaluation episodes
constexpr std::uint64_t kCollect = 8;     // expert-collection episodes
}  // namespace seed_stream

}  // namespace evnav
