#ifndef XIBASIN_RNG_H
#define XIBASIN_RNG_H

#include <cstdint>

namespace xibasin {

/// splitmix64: small, portable, and identical on every platform, so seeded runs reproduce bit for bit.
class SeededRng
{
  public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::uint64_t state_;
};

/// Independent stream for run `index` under a global seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    SeededRng mix(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    mix.next();
    return mix.next();
}

} // namespace xibasin

#endif
