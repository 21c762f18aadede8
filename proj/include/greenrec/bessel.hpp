#ifndef GREENREC_BESSEL_HPP
#define GREENREC_BESSEL_HPP

namespace greenrec {

// First-kind and second-kind Bessel values at a positive real argument.
// Ascending series below z = 14, Hankel-type asymptotic expansion above, both
// accumulated in extended precision. Relative accuracy ~1e-13 or better on
// (0, 50] away from eps-neighborhoods of the functions' zeros.
struct J0Y0J1Y1 {
    double j0, y0, j1, y1;
};
J0Y0J1Y1 bessel_j0y0j1y1(double z);

// Modified Bessel values K0, K1 (and I0, I1 as byproducts). Ascending series
// below z = 9 (K1 recovered through the Wronskian, ~5e-12 relative),
// asymptotic expansion above; the asymptotic branch bottoms out near 1e-9
// relative around z ~ 10-14 and sharpens again for larger z.
struct K0K1 {
    double k0, k1, i0, i1;
};
K0K1 bessel_k0k1(double z);

} // namespace greenrec

#endif
