#include "qpt/rng.hpp"

#include <cmath>

#include "qpt/common.hpp"

namespace qpt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), gen_(seed) {}

std::uint64_t RandomSource::next_u64() { return gen_(); }

double RandomSource::next_double() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RandomSource::next_normal() {
  if (have_cached_normal_) {
    have_cached_normal_ = false;
    return cached_normal_;
  }
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(theta);
  have_cached_normal_ = true;
  return r * std::cos(theta);
}

std::uint64_t RandomSource::derive_seed(std::uint64_t master_seed,
                                        std::uint64_t index) {
  return splitmix64(master_seed ^ splitmix64(index + 0x51ed2701d4f0f843ull));
}

RandomSource RandomSource::derive(std::uint64_t master_seed,
                                  std::uint64_t index) {
  return RandomSource(derive_seed(master_seed, index));
}

std::vector<std::uint64_t> multinomial_sample(const std::vector<double>& probs,
                                              std::uint64_t shots,
                                              RandomSource& rng) {
  if (probs.empty()) throw ArgumentError("multinomial_sample: empty support");
  std::vector<std::uint64_t> counts(probs.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.next_double();
    double acc = 0.0;
    std::size_t pick = probs.size() - 1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    ++counts[pick];
  }
  return counts;
}

}  // namespace qpt
