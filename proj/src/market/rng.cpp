#include "fairalloc/market/rng.hpp"

namespace fairalloc::market {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view env_id,
                          std::string_view policy_id, std::uint64_t horizon, std::uint64_t trial) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ fnv1a(env_id));
  h = mix64(h ^ fnv1a(policy_id));
  h = mix64(h ^ horizon);
  h = mix64(h ^ trial);
  return h;
}

}  // namespace fairalloc::market
