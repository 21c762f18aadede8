#ifndef GREENREC_RNG_HPP
#define GREENREC_RNG_HPP

#include <cstdint>

namespace greenrec {

// splitmix64; hand-rolled so streams are identical across platforms and
// standard-library versions (std:: distributions are not pinned).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // uniform integer in [lo, hi]
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool coin() { return (next_u64() & 1) != 0; }

  private:
    std::uint64_t state_;
};

} // namespace greenrec

#endif
