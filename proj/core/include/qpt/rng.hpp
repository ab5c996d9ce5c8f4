#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qpt {

// Deterministic cross-platform stream: mt19937_64 is fully specified by the
// standard, and the manual 53-bit conversion below avoids the
// implementation-defined std::uniform_real_distribution.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  static const char* algorithm_label() { return "mt19937_64/u53"; }

  std::uint64_t next_u64();
  double next_double();  // uniform in [0, 1)
  double next_normal();  // standard normal via Box-Muller

  // Derived stream for independent trials/settings: hash(master, index).
  static std::uint64_t derive_seed(std::uint64_t master_seed,
                                   std::uint64_t index);
  static RandomSource derive(std::uint64_t master_seed, std::uint64_t index);

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

// Multinomial draw by per-shot inverse CDF; consumes exactly `shots` doubles
// from rng, so streams stay aligned across implementations.
std::vector<std::uint64_t> multinomial_sample(const std::vector<double>& probs,
                                              std::uint64_t shots,
                                              RandomSource& rng);

}  // namespace qpt
