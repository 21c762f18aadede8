#ifndef GREENREC_RATIONAL_HPP
#define GREENREC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

#include "greenrec/errors.hpp"

namespace greenrec {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigRat rat(long long num, long long den = 1) { return BigRat(BigInt(num), BigInt(den)); }

// Complex number with exact rational real and imaginary parts. This is the
// coefficient field of every symbolic object in the project; i and k^2 for the
// oscillatory kernels stay exact until a numeric value is bound.
struct GaussRat {
    BigRat re;
    BigRat im;

    GaussRat() : re(0), im(0) {}
    GaussRat(long long v) : re(v), im(0) {} // NOLINT(google-explicit-constructor)
    GaussRat(BigRat r) : re(std::move(r)), im(0) {} // NOLINT(google-explicit-constructor)
    GaussRat(BigRat r, BigRat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat imaginary_unit() { return GaussRat(BigRat(0), BigRat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat operator-() const { return GaussRat(-re, -im); }

    GaussRat& operator+=(const GaussRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRat& operator*=(const GaussRat& o) {
        BigRat nre = re * o.re - im * o.im;
        BigRat nim = re * o.im + im * o.re;
        re = std::move(nre);
        im = std::move(nim);
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) {
        if (o.is_zero()) throw DivisionError("division by zero coefficient");
        BigRat n2 = o.re * o.re + o.im * o.im;
        BigRat nre = (re * o.re + im * o.im) / n2;
        BigRat nim = (im * o.re - re * o.im) / n2;
        re = std::move(nre);
        im = std::move(nim);
        return *this;
    }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    std::complex<double> to_complex() const {
        return {re.convert_to<double>(), im.convert_to<double>()};
    }
};

std::string to_string(const BigRat& q);

// Canonical text form, parseable by the polynomial expression grammar.
// Pure rationals print bare; pure imaginary as q*i; mixed as (a+b*i).
std::string to_string(const GaussRat& c);

} // namespace greenrec

#endif
