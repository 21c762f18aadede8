#ifndef GREENREC_DIFF_RULES_HPP
#define GREENREC_DIFF_RULES_HPP

#include <utility>
#include <vector>

#include "greenrec/poly.hpp"

namespace greenrec {

// Coefficients b_{alpha,k}(x) with
//   d^alpha f(g(x)) = sum_k f^(k)(g(x)) * b_{alpha,k}(x),  g(x) = x1^2+...+xd^2.
// The only composition the derivation pipeline needs, so g is fixed.
// |alpha| = 0 returns {(0, 1)}.
std::vector<std::pair<int, Poly>> faa_di_bruno_radial(const MultiIndex& alpha);

// d^n/dz^n f(z^2) = sum_k coeff * z^z_pow * f^(k)(z^2)
struct SquareRuleTerm {
    int k;
    BigRat coeff;
    int z_pow;
};
std::vector<SquareRuleTerm> deriv_square_composition(int n);

// d^n/dz^n f(sqrt(z)) = sum_k coeff * sqrt(z)^sqrtz_pow * f^(k)(sqrt(z)).
// Half-integer powers of z are carried as integer powers of sqrt(z); the
// denominator of the rational coefficient is always a power of two.
struct SqrtRuleTerm {
    int k;
    BigRat coeff;
    int sqrtz_pow;
};
std::vector<SqrtRuleTerm> deriv_sqrt_composition(int n);

// d^n/dx^n (x^p f(x)) = sum_l coeff_l(n, x) * d^(n-l)/dx^(n-l) f(x) with
// coeff_l = (n)(n-1)...(n-l+1) * C(p,l) * x^(p-l), n kept symbolic.
// Polynomials are 1-dimensional: variables (x1, r, n, k).
std::vector<std::pair<int, Poly>> shift_product_rule(int p);

BigInt binomial(int a, int b);
BigInt factorial(int a);
BigInt rising_factorial(int a, int count);

} // namespace greenrec

#endif
