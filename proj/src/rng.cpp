#include "netsir/rng.hpp"

#include <algorithm>

namespace netsir {

std::vector<std::uint32_t> Rng::sample_indices(std::uint32_t n, std::uint32_t k) {
  if (k > n) throw std::invalid_argument("sample_indices: k exceeds n");
  // Partial Fisher-Yates over an index pool; O(n) space, O(k) draws.
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::uint32_t> out(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint32_t j = i + static_cast<std::uint32_t>(uniform_below(n - i));
    std::swap(pool[i], pool[j]);
    out[i] = pool[i];
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  // One SplitMix64 step per mixed-in word; stable and documented.
  auto mix = [](std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    std::uint64_t z = h;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(0x6c62272e07bb0142ULL, master);
  h = mix(h, stream);
  h = mix(h, index);
  return h;
}

}  // namespace netsir
