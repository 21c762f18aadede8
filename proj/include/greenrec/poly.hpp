#ifndef GREENREC_POLY_HPP
#define GREENREC_POLY_HPP

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "greenrec/multi_index.hpp"
#include "greenrec/rational.hpp"

namespace greenrec {

// Graded lexicographic order on exponent vectors (fixed variable order).
struct GrlexLess {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
        int sa = 0, sb = 0;
        for (int v : a) sa += v;
        for (int v : b) sb += v;
        if (sa != sb) return sa < sb;
        return a < b;
    }
};

// Exact multivariate polynomial over Gaussian rationals in the fixed, ordered
// variable set {x1..xd, r, n, k}. Canonical form:
//   * graded lexicographic monomial order with that variable order
//   * no stored zero coefficients
//   * every r exponent reduced mod 2 via the rewrite r^2 = x1^2 + ... + xd^2
// All operations are pure; equality is canonical-form comparison.
class Poly {
  public:
    using Mono = std::vector<int>; // length dim + 3
    using TermMap = std::map<Mono, GaussRat, GrlexLess>;

    Poly() : dim_(0) {}
    explicit Poly(int dim) : dim_(dim) {}

    static Poly zero(int dim) { return Poly(dim); }
    static Poly constant(int dim, GaussRat c);
    static Poly from_int(int dim, long long v) { return constant(dim, GaussRat(v)); }
    // var index: 0..dim-1 are x1..xd, dim is r, dim+1 is n, dim+2 is k
    static Poly variable(int dim, int var, int power = 1);
    static Poly r_squared(int dim); // x1^2 + ... + xd^2 (the rewrite image of r^2)
    static Poly monomial(int dim, const Mono& m, GaussRat c);

    int dim() const { return dim_; }
    int nvars() const { return dim_ + 3; }
    int var_r() const { return dim_; }
    int var_n() const { return dim_ + 1; }
    int var_k() const { return dim_ + 2; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const GaussRat& c) const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.dim_ == b.dim_ && a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(int e) const;

    // Quotient when `div` divides *this exactly; DivisionError otherwise.
    // The result is verified by multiplication, so it is also sound for
    // operands that mention r (where plain long division may not apply).
    Poly exact_divide(const Poly& div) const;
    bool try_exact_divide(const Poly& div, Poly& quotient_out) const;

    // Formal partial derivative treating every variable as independent.
    Poly formal_derivative(int var) const;

    // var := value (a polynomial over the same variable universe)
    Poly substitute(int var, const Poly& value) const;
    Poly substitute_int(int var, long long value) const;

    int degree_in(int var) const; // -1 for the zero polynomial
    int total_degree() const;     // -1 for zero
    bool contains_var(int var) const;

    // Smallest exponent of `var` over all monomials (0 for the zero poly).
    int min_exponent(int var) const;
    // Divide every monomial by var^e (requires min_exponent(var) >= e).
    Poly shift_down(int var, int e) const;

    // coefficient of var^e, as a polynomial with var's exponent zeroed
    Poly coefficient_of(int var, int e) const;

    const TermMap& terms() const { return terms_; }
    GaussRat leading_coefficient() const; // grlex-largest monomial
    const Mono* leading_monomial() const; // nullptr for zero

    // gcd-of-integer-numerators / lcm-of-denominators over both components of
    // every coefficient, signed so that dividing by it makes the leading
    // coefficient's real part (or imaginary part, if real is zero) positive.
    GaussRat rational_content() const;

    std::complex<double> eval(std::span<const std::complex<double>> vals) const;

    std::string to_string() const;
    // Inverse of to_string on canonical forms; also accepts any expression in
    // the grammar: integers, rationals a/b, i, k, n, r, x1..xd, + - * ^ ( ).
    static Poly parse(const std::string& text, int dim);

    std::string var_name(int v) const;

  private:
    void add_term(const Mono& m, GaussRat c); // applies the r^2 rewrite
    void check_dim(const Poly& o) const;

    int dim_;
    TermMap terms_;
};

// Divide a coefficient system by its joint rational content and by any
// monomial in the x variables common to every term; fixes the overall sign.
// Returns a human-readable description of the removed factor.
std::string canonicalize_system(std::vector<Poly>& polys);

// a*d == b*c for all pairs: equality up to one overall (polynomial) scalar.
bool proportional_systems(const std::vector<Poly>& a, const std::vector<Poly>& b);

} // namespace greenrec

#endif
