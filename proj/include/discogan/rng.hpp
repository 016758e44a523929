#pragma once

#include <array>
#include <cstdint>

namespace discogan {

// xoshiro256** seeded through splitmix64. Uniform draws take the top 53 bits;
// normal draws use the Box-Muller cosine branch (one normal per two uniforms,
// no cached spare) so the whole state is the four words below.
class Rng {
 public:
  using State = std::array<std::uint64_t, 4>;

  explicit Rng(std::uint64_t seed = 0);

  static Rng from_state(const State& state);
  const State& state() const { return state_; }

  std::uint64_t next_u64();
  // Uniform on [0, 1).
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer on [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  double normal();

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  State state_{};
};

}  // namespace discogan
