#ifndef GREENREC_EVALUATOR_HPP
#define GREENREC_EVALUATOR_HPP

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "greenrec/flops.hpp"
#include "greenrec/kernels.hpp"
#include "greenrec/recurrence.hpp"

namespace greenrec {

enum class Branch { Large, Small };

struct HybridConfig {
    double xi = 50.0; // region threshold, > 1
    int p_small = 8;  // Taylor truncation depth of the small branch
    int P = 9;        // highest derivative order to produce
};

struct DerivSeq {
    std::vector<double> point;
    std::vector<std::complex<double>> values; // d^0 .. d^P
    Branch branch = Branch::Large;
    // per recurrence step, max/min ratio of the nonzero solved-side terms
    std::vector<double> step_ratios;
    // small branch: first-omitted-term estimate of the Taylor remainder per order
    std::vector<double> taylor_remainders;
    bool singular_retry = false;
};

// Large iff |x1|/xbar >= 1/xi; on-axis points (xbar = 0) are Large.
Branch classify_region(std::span<const double> x, double xi);

// Recurrence coefficients bound to numeric (x, k) with n kept as the step
// variable; Horner evaluation per step. Rebuilding per point is cheap and the
// bind cost is part of the counted work.
class CompiledRecurrence {
  public:
    CompiledRecurrence(const std::map<int, Poly>& coeffs, int dim, std::complex<double> k);

    int max_shift() const { return shifts_.empty() ? 0 : shifts_.back().shift; }
    int min_shift() const { return shifts_.empty() ? 0 : shifts_.front().shift; }

    struct Bound; // per-point coefficient values, polynomial in n
    std::shared_ptr<const Bound> bind(std::span<const double> x, FlopCounter* fc = nullptr) const;

    // u_s(n) for every shift; entries for skipped shifts are unset
    void eval_row(const Bound& bound, long long n, std::span<std::complex<double>> out,
                  FlopCounter* fc = nullptr) const;
    const std::vector<int>& shift_values() const { return shift_values_; }

  private:
    struct NTerm {
        int n_pow;
        std::vector<std::pair<std::complex<double>, std::vector<std::pair<int, int>>>> monos;
    };
    struct ShiftCoef {
        int shift;
        std::vector<NTerm> by_n; // ascending n power
    };
    int dim_;
    std::complex<double> k_;
    std::vector<ShiftCoef> shifts_;
    std::vector<int> shift_values_;
    std::vector<int> max_var_pow_;
};

// Derived artifacts for a kernel, cached per kernel name for the life of the
// process (the precomputation phase runs once).
class KernelArtifacts {
  public:
    static const KernelArtifacts& get(const KernelSpec& kernel);

    const OdeInX1& ode() const { return ode_; }
    const Recurrence& large() const { return large_; }
    const SmallRecurrence& small() const { return small_; }

  private:
    explicit KernelArtifacts(const KernelSpec& kernel);
    OdeInX1 ode_;
    Recurrence large_;
    SmallRecurrence small_;
};

DerivSeq eval_large(const Recurrence& rec, const KernelSpec& kernel, std::span<const double> x, int P,
                    FlopCounter* fc = nullptr);

DerivSeq eval_small(const SmallRecurrence& small, const KernelSpec& kernel, std::span<const double> x,
                    int P, int p_small, FlopCounter* fc = nullptr);

DerivSeq eval_hybrid(const KernelSpec& kernel, std::span<const double> x, const HybridConfig& cfg,
                     FlopCounter* fc = nullptr);

// Single-step rounding proxy: with exact inputs values[0..n-1], the max ratio
// between the magnitudes of the nonzero solved-side terms of the step that
// produces order n. Zero when every term vanishes.
double single_step_error_estimate(const Recurrence& rec, const KernelSpec& kernel,
                                  std::span<const std::complex<double>> values, int n,
                                  std::span<const double> x);

struct ErrorConstants {
    double M = 0; // upper envelope constant of the remainder order
    double m = 0; // lower envelope constant of the target order
    double C = 0; // fitted single-step rounding constant
};

// max( M / (m (p_small+1)!) * xi^-(p_small+1 or +2 by parity of n), C xi^2 ).
// Odd n carries the lower exponent (p_small+1).
double combined_error_bound(const HybridConfig& cfg, int n, const ErrorConstants& constants);

// Closed-form even-order seed values (d^k G)|_{x1=0} for k = 0..max_k at
// (0, x2..xd); used by the small branch. max_k <= 2 for the order-2 families,
// <= 6 for the biharmonic ones.
std::vector<std::complex<double>> small_branch_seeds(const KernelSpec& kernel,
                                                     std::span<const double> x, int max_k,
                                                     FlopCounter* fc = nullptr);

} // namespace greenrec

#endif
