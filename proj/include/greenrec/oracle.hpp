#ifndef GREENREC_ORACLE_HPP
#define GREENREC_ORACLE_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "greenrec/kernels.hpp"
#include "greenrec/pde_to_ode.hpp"
#include "greenrec/recurrence.hpp"

namespace greenrec {

using HpReal = boost::multiprecision::cpp_bin_float_100;
using HpComplex = boost::multiprecision::cpp_complex_100;

constexpr int kOracleDigits = 100;

// Verification-grade derivative values d^0..d^n G / dx1^n at a point,
// produced by repeated symbolic differentiation of the kernel's closed form
// (sum/product/power/log/exp/Bessel nodes with first-derivative rules,
// like terms collected) evaluated in 100-digit arithmetic. No code is shared
// with the derivation pipeline or the recurrence evaluator.
struct DerivOracleResult {
    std::vector<HpComplex> values;
    int working_precision = kOracleDigits;
    std::string method;

    std::vector<std::complex<double>> to_doubles() const;
};

// digits >= 30 requested; the fixed working precision (100 digits) is used
// and reported. Custom kernels have no closed form -> CapabilityError.
DerivOracleResult oracle_derivatives(const KernelSpec& kernel, std::span<const double> x, int n,
                                     int digits = 50);

// Richardson-extrapolated central differences (double precision); the
// second, lower-accuracy cross-check on the oracle. Practical for n <= 4.
std::vector<std::complex<double>> fd_derivatives(const KernelSpec& kernel, std::span<const double> x,
                                                 int n);

// Collapsed closed-form derivative tables evaluated in double precision.
// Backs the QBX "direct" (no-recurrence) backend and the desk-scale
// experiment sweeps. eval_order is a standalone per-order evaluation; the
// flop charge for it follows the naive-formula cost model (see docs/cli.md).
class DerivTable {
  public:
    DerivTable(const KernelSpec& kernel, int max_order);

    int max_order() const { return max_order_; }
    std::size_t term_count(int n) const;
    // calibrated naive-formula cost constant: charged as cost_unit * n flops
    // for order n in the counter model
    std::uint64_t cost_unit() const { return cost_unit_; }

    std::complex<double> eval_order(std::span<const double> x, int n, FlopCounter* fc = nullptr) const;
    std::vector<std::complex<double>> eval_all(std::span<const double> x, int P,
                                               FlopCounter* fc = nullptr) const;

  private:
    struct Term {
        int x1_pow;
        int r_pow;
        int fn;
        std::complex<double> coeff;
    };
    KernelSpec kernel_;
    int max_order_;
    std::uint64_t cost_unit_;
    std::vector<std::vector<Term>> orders_;
};

// high-precision special functions (exposed for tests)
void hp_bessel_j0y0j1y1(const HpReal& z, HpReal& j0, HpReal& y0, HpReal& j1, HpReal& y1);
void hp_bessel_k0k1(const HpReal& z, HpReal& k0, HpReal& k1);
const HpReal& hp_pi();
const HpReal& hp_euler_gamma();
HpComplex hp_from_gauss(const GaussRat& c);

// Max relative residual |sum_i l_i(x) g_i| / max_i |l_i(x) g_i| over the
// points, derivatives g_i from the oracle. Points must avoid the origin and,
// for the ODE check, the x1 = 0 hyperplane.
double verify_ode(const OdeInX1& ode, const KernelSpec& kernel,
                  std::span<const std::vector<double>> points, int digits = 50);

// Residual of the order-parametric recurrence at a concrete n.
double verify_recurrence(const Recurrence& rec, const KernelSpec& kernel,
                         std::span<const std::vector<double>> points, int n, int digits = 50);

// Residual of the on-hyperplane recurrence against oracle values at
// (0, x2..xd), rows reaching up to derivative order max_even.
double verify_small_recurrence(const SmallRecurrence& small, const KernelSpec& kernel,
                               std::span<const std::vector<double>> points, int max_even,
                               int digits = 50);

} // namespace greenrec

#endif
