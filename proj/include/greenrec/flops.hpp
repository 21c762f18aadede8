#ifndef GREENREC_FLOPS_HPP
#define GREENREC_FLOPS_HPP

#include <cstdint>

namespace greenrec {

// Arithmetic-operation tally. "Flops" are counted in units of scalar
// operations on real or complex values alike; special-function evaluations
// (Bessel pairs, log, exp of a kernel argument) are tallied separately as
// calls, not unrolled into adds/muls. See docs/cli.md for the convention.
struct FlopCounter {
    std::uint64_t additions = 0;
    std::uint64_t multiplications = 0;
    std::uint64_t special_function_calls = 0;

    void add(std::uint64_t n = 1) { additions += n; }
    void mul(std::uint64_t n = 1) { multiplications += n; }
    void special(std::uint64_t n = 1) { special_function_calls += n; }

    std::uint64_t flops() const { return additions + multiplications; }

    FlopCounter& operator+=(const FlopCounter& o) {
        additions += o.additions;
        multiplications += o.multiplications;
        special_function_calls += o.special_function_calls;
        return *this;
    }
};

} // namespace greenrec

#endif
