#include "greenrec/bessel.hpp"

#include <cmath>

#include "greenrec/errors.hpp"

namespace greenrec {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884197L;
constexpr long double kEulerGamma = 0.577215664901532860606512090082402431042L;

struct PQ {
    long double p, q;
};

// Asymptotic P/Q sums: t_0 = 1, t_k = t_{k-1} (4 nu^2 - (2k-1)^2) / (k 8z),
// truncated at the smallest term.
PQ asymptotic_pq(int nu, long double z) {
    long double t = 1.0L;
    long double p = 0.0L, q = 0.0L;
    long double prev_mag = 1e30L;
    int four_nu2 = 4 * nu * nu;
    for (int k = 0; k < 60; ++k) {
        if (k > 0) {
            long double f = (four_nu2 - (2.0L * k - 1) * (2.0L * k - 1)) / (k * 8.0L * z);
            t *= f;
            long double mag = fabsl(t);
            if (mag >= prev_mag) break; // past optimal truncation
            prev_mag = mag;
        }
        int m = k / 2;
        long double signed_t = (m % 2 == 0) ? t : -t;
        if (k % 2 == 0)
            p += signed_t;
        else
            q += signed_t;
    }
    return {p, q};
}

} // namespace

J0Y0J1Y1 bessel_j0y0j1y1(double zd) {
    if (!(zd > 0.0)) throw DomainError("bessel argument must be positive");
    long double z = zd;
    J0Y0J1Y1 out{};
    if (z <= 14.0L) {
        long double q = z * z / 4.0L; // (z/2)^2
        // J0 and the Y0 log-companion sum
        long double t = 1.0L, j0 = 1.0L, s0 = 0.0L, h = 0.0L;
        for (int m = 1; m <= 60; ++m) {
            t *= -q / (static_cast<long double>(m) * m);
            h += 1.0L / m;
            j0 += t;
            s0 += -t * h; // (-1)^(m+1) H_m q^m / (m!)^2
            if (fabsl(t) < 1e-25L * fabsl(j0) && m > 4) break;
        }
        // J1 and the Y1 companion sum
        long double u = 1.0L, j1s = 1.0L, s1 = 1.0L; // k = 0 terms (H_0+H_1 = 1)
        long double hk = 0.0L, hk1 = 1.0L;
        for (int k = 1; k <= 60; ++k) {
            u *= -q / (static_cast<long double>(k) * (k + 1));
            hk += 1.0L / k;
            hk1 += 1.0L / (k + 1);
            j1s += u;
            s1 += u * (hk + hk1);
            if (fabsl(u) < 1e-25L * fabsl(j1s) && k > 4) break;
        }
        long double j1 = (z / 2.0L) * j1s;
        long double lg = logl(z / 2.0L) + kEulerGamma;
        long double y0 = (2.0L / kPi) * (lg * j0 + s0);
        long double y1 = (2.0L / kPi) * (lg * j1 - 1.0L / z - (z / 4.0L) * s1);
        out.j0 = static_cast<double>(j0);
        out.y0 = static_cast<double>(y0);
        out.j1 = static_cast<double>(j1);
        out.y1 = static_cast<double>(y1);
    } else {
        long double amp = sqrtl(2.0L / (kPi * z));
        PQ pq0 = asymptotic_pq(0, z);
        long double w0 = z - kPi / 4.0L;
        out.j0 = static_cast<double>(amp * (pq0.p * cosl(w0) - pq0.q * sinl(w0)));
        out.y0 = static_cast<double>(amp * (pq0.p * sinl(w0) + pq0.q * cosl(w0)));
        PQ pq1 = asymptotic_pq(1, z);
        long double w1 = z - 3.0L * kPi / 4.0L;
        out.j1 = static_cast<double>(amp * (pq1.p * cosl(w1) - pq1.q * sinl(w1)));
        out.y1 = static_cast<double>(amp * (pq1.p * sinl(w1) + pq1.q * cosl(w1)));
    }
    return out;
}

K0K1 bessel_k0k1(double zd) {
    if (!(zd > 0.0)) throw DomainError("bessel argument must be positive");
    long double z = zd;
    K0K1 out{};
    // I0, I1 series converge everywhere and have no cancellation
    long double q = z * z / 4.0L;
    long double t = 1.0L, i0 = 1.0L;
    long double u = 1.0L, i1s = 1.0L;
    for (int m = 1; m <= 120; ++m) {
        t *= q / (static_cast<long double>(m) * m);
        i0 += t;
        u *= q / (static_cast<long double>(m) * (m + 1));
        i1s += u;
        if (t < 1e-25L * i0 && m > 4) break;
    }
    long double i1 = (z / 2.0L) * i1s;
    out.i0 = static_cast<double>(i0);
    out.i1 = static_cast<double>(i1);
    if (z <= 9.0L) {
        long double tt = 1.0L, s = 0.0L, h = 0.0L;
        for (int m = 1; m <= 80; ++m) {
            tt *= q / (static_cast<long double>(m) * m);
            h += 1.0L / m;
            s += tt * h;
            if (tt < 1e-25L * (s + 1.0L) && m > 4) break;
        }
        long double k0 = -(logl(z / 2.0L) + kEulerGamma) * i0 + s;
        long double k1 = (1.0L / z - i1 * k0) / i0; // Wronskian
        out.k0 = static_cast<double>(k0);
        out.k1 = static_cast<double>(k1);
    } else {
        long double amp = sqrtl(kPi / (2.0L * z)) * expl(-z);
        for (int nu = 0; nu <= 1; ++nu) {
            long double term = 1.0L, sum = 1.0L, prev = 1e30L;
            int four_nu2 = 4 * nu * nu;
            for (int k = 1; k < 60; ++k) {
                term *= (four_nu2 - (2.0L * k - 1) * (2.0L * k - 1)) / (k * 8.0L * z);
                long double mag = fabsl(term);
                if (mag >= prev) break;
                prev = mag;
                sum += term;
            }
            if (nu == 0)
                out.k0 = static_cast<double>(amp * sum);
            else
                out.k1 = static_cast<double>(amp * sum);
        }
    }
    return out;
}

} // namespace greenrec
