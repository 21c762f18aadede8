#ifndef GREENREC_PDE_TO_ODE_HPP
#define GREENREC_PDE_TO_ODE_HPP

#include <string>
#include <vector>

#include "greenrec/pde_spec.hpp"

namespace greenrec {

// ODE in x1 (with x2..xd held constant) satisfied by G(|x|) wherever the
// homogeneous PDE holds away from the origin:
//   sum_i coeffs[i] * d^i/dx1^i G(|x|) = 0,   coeffs[i] in C[x1..xd, k].
struct OdeInX1 {
    int order = 0;
    std::vector<Poly> coeffs; // size order + 1, top entry nonzero

    // denominator-clearing multiplier x1^x1_pow * r^r_pow that was applied,
    // and the scalar/monomial factor stripped afterwards
    struct Normalization {
        int x1_pow = 0;
        int r_pow = 0;
        std::string stripped;
    } normalization;

    int dimension() const { return coeffs.empty() ? 0 : coeffs.front().dim(); }
};

// Operator-substitution derivation: spatial derivatives become radial ones
// via d/dxi = (xi/r) d/dr, then radial ones become x1 derivatives via
// d/dr = (r/x1) d/dx1, all in the ring of polynomials with monomial
// denominators x1^j r^m; denominators are cleared at the end and the
// coefficient system is canonicalized (content + common x-monomial).
OdeInX1 pde_to_ode(const PdeSpec& pde);

std::string print_ode(const OdeInX1& ode);
OdeInX1 parse_ode(const std::string& text);

} // namespace greenrec

#endif
