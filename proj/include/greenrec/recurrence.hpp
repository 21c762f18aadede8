#ifndef GREENREC_RECURRENCE_HPP
#define GREENREC_RECURRENCE_HPP

#include <map>
#include <string>

#include "greenrec/pde_to_ode.hpp"

namespace greenrec {

// Order-parametric derivative recurrence, stored in homogeneous form:
//   sum_s coeffs[s](n, x, k) * d^(n+s)/dx1^(n+s) G(|x|) = 0   for all n >= 0,
// with the convention that terms whose index n+s is negative carry
// coefficients that vanish identically at that n (a falling factorial in n
// annihilates them), so they can be skipped.
struct Recurrence {
    std::map<int, Poly> coeffs; // shift -> coefficient
    int source_ode_order = 0;   // a
    int highest_x1_power = 0;   // h

    int max_shift() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }
    int min_shift() const { return coeffs.empty() ? 0 : coeffs.begin()->first; }
    int dimension() const { return coeffs.empty() ? 0 : coeffs.begin()->second.dim(); }
};

// x1 := 0 specialization: a recurrence for the on-hyperplane values
// (d^(n+s) G)|_{x1=0}. Coefficients no longer mention x1.
struct SmallRecurrence {
    std::map<int, Poly> coeffs;

    int max_shift() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }
    int min_shift() const { return coeffs.empty() ? 0 : coeffs.begin()->first; }
    int dimension() const { return coeffs.empty() ? 0 : coeffs.begin()->second.dim(); }
};

// Expand each ODE coefficient in powers of x1 and push n symbolic derivatives
// through with the product-rule shift coefficients.
Recurrence ode_to_large_recurrence(const OdeInX1& ode);

// Substitute x1 = 0, prune vanished coefficients. Throws
// DegenerateRecurrenceError if everything vanishes.
SmallRecurrence specialize_small_recurrence(const Recurrence& rec);

// max_shift - min_shift; bounded by a + h.
int recurrence_order(const Recurrence& rec);

// Bind a concrete derivative count: returns derivative order -> coefficient
// polynomial (orders n+s, shifts with negative order dropped).
std::map<int, Poly> substitute_order(const Recurrence& rec, long long n);

std::string print_recurrence(const Recurrence& rec);
Recurrence parse_recurrence(const std::string& text);
std::string print_small_recurrence(const SmallRecurrence& rec);
SmallRecurrence parse_small_recurrence(const std::string& text);

} // namespace greenrec

#endif
