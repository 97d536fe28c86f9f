#ifndef FAMCAT_RNG_HPP
#define FAMCAT_RNG_HPP

#include <cstdint>
#include <vector>

namespace famcat {

// splitmix64. Self-contained so that seeded transcripts are identical across
// standard libraries (std distributions are not pinned by the standard).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n > 0.
  int uniform(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  bool coin() { return (next() & 1u) != 0; }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[uniform(static_cast<int>(xs.size()))];
  }

  // Derives an independent stream; used to make sample i reproducible on its own.
  Rng fork(std::uint64_t salt) { return Rng(next() ^ (salt * 0xbf58476d1ce4e5b9ull)); }

 private:
  std::uint64_t state_;
};

}  // namespace famcat

#endif
