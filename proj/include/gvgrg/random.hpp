#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace gvgrg {

/// Random stream used by generators, agents and the search. The engine keeps
/// its own smaller stream inside each GameState (see engine.hpp).
using Rng = std::mt19937_64;

// The std distributions are implementation-defined; these helpers only rely on
// generate_canonical so that seeded runs agree across standard libraries.

template <class Engine>
double uniform01(Engine& rng)
{
  double u = std::generate_canonical<double, 53>(rng);
  return u < 1.0 ? u : 0.0;
}

template <class Engine>
std::size_t uniform_index(Engine& rng, std::size_t n)
{
  assert(n > 0);
  auto i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

/// Uniform integer in the closed range [lo, hi].
template <class Engine>
int uniform_int(Engine& rng, int lo, int hi)
{
  assert(lo <= hi);
  return lo + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(hi - lo) + 1));
}

template <class Engine>
bool bernoulli(Engine& rng, double p)
{
  return uniform01(rng) < p;
}

template <class Engine, class T>
const T& pick(Engine& rng, const std::vector<T>& items)
{
  return items[uniform_index(rng, items.size())];
}

/// Derives an independent seed from a master seed and a tuple of stream ids.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0)
{
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

template <class Engine>
void shuffle(Engine& rng, auto& items)
{
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

} // namespace gvgrg
