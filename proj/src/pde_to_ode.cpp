#include "greenrec/pde_to_ode.hpp"

#include <map>
#include <sstream>

#include "greenrec/errors.hpp"

namespace greenrec {

namespace {

// num / (x1^x1_den * r^r_den); num canonical (r-exponents already reduced
// mod 2 by Poly), dens non-negative.
struct Frac {
    Poly num;
    int x1_den = 0;
    int r_den = 0;

    explicit Frac(int dim) : num(dim) {}
    Frac(Poly p, int xd, int rd) : num(std::move(p)), x1_den(xd), r_den(rd) {}

    bool is_zero() const { return num.is_zero(); }
    int dim() const { return num.dim(); }
};

void reduce(Frac& f) {
    if (f.num.is_zero()) {
        f.x1_den = 0;
        f.r_den = 0;
        return;
    }
    const int dim = f.dim();
    Poly r2 = Poly::r_squared(dim);
    Poly q(dim);
    while (f.r_den >= 2 && f.num.try_exact_divide(r2, q)) {
        f.num = q;
        f.r_den -= 2;
    }
    if (f.r_den >= 1 && f.num.min_exponent(dim) >= 1) {
        f.num = f.num.shift_down(dim, 1);
        f.r_den -= 1;
    }
    int c = std::min(f.num.min_exponent(0), f.x1_den);
    if (c > 0) {
        f.num = f.num.shift_down(0, c);
        f.x1_den -= c;
    }
}

Frac add(const Frac& a, const Frac& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int dim = a.dim();
    int xd = std::max(a.x1_den, b.x1_den);
    int rd = std::max(a.r_den, b.r_den);
    Poly lift_a = a.num * Poly::variable(dim, 0, xd - a.x1_den) * Poly::variable(dim, dim, rd - a.r_den);
    Poly lift_b = b.num * Poly::variable(dim, 0, xd - b.x1_den) * Poly::variable(dim, dim, rd - b.r_den);
    Frac out(lift_a + lift_b, xd, rd);
    reduce(out);
    return out;
}

Frac mul(const Frac& a, const Frac& b) {
    Frac out(a.num * b.num, a.x1_den + b.x1_den, a.r_den + b.r_den);
    reduce(out);
    return out;
}

Frac mul_poly(const Frac& a, const Poly& p) {
    Frac out(a.num * p, a.x1_den, a.r_den);
    reduce(out);
    return out;
}

// d/dx_i of num/(x1^p r^e) where r = sqrt(x1^2+...+xd^2) is a function of x.
Frac dxi(const Frac& f, int i) {
    const int dim = f.dim();
    const int p = f.x1_den;
    const int e = f.r_den;
    Frac out(dim);
    for (const auto& [m, c] : f.num.terms()) {
        int s = m[dim]; // r exponent, 0 or 1
        // (alpha_i - p [i==0]) * x^alpha / (x1^p * x_i * r^e)
        long long factor1 = m[i] - (i == 0 ? p : 0);
        if (factor1 != 0) {
            if (i == 0) {
                out = add(out, Frac(Poly::monomial(dim, m, c * GaussRat(factor1)), p + 1, e));
            } else {
                Poly::Mono mm(m);
                mm[i] -= 1; // alpha_i >= 1 whenever factor1 != 0 for i != 0
                out = add(out, Frac(Poly::monomial(dim, mm, c * GaussRat(factor1)), p, e));
            }
        }
        // (s - e) * x^alpha * x_i / (x1^p r^(e+2))
        long long factor2 = s - e;
        if (factor2 != 0) {
            Poly::Mono mm(m);
            mm[i] += 1;
            out = add(out, Frac(Poly::monomial(dim, mm, c * GaussRat(factor2)), p, e + 2));
        }
    }
    return out;
}

// order of d/dr (resp. d/dx1) -> coefficient
using Operator = std::map<int, Frac>;

void op_add(Operator& op, int order, const Frac& f) {
    auto it = op.find(order);
    if (it == op.end())
        op.emplace(order, f);
    else
        it->second = add(it->second, f);
}

// apply d/dx_i to an operator acting on G(r):  (c * d^m_r G)' =
// (d/dx_i c) d^m_r G + c * (x_i / r) d^(m+1)_r G
Operator apply_spatial_derivative(const Operator& op, int i, int dim) {
    Operator out;
    Frac xi_over_r(Poly::variable(dim, i), 0, 1);
    for (const auto& [m, c] : op) {
        Frac dc = dxi(c, i);
        if (!dc.is_zero()) op_add(out, m, dc);
        op_add(out, m + 1, mul(c, xi_over_r));
    }
    return out;
}

} // namespace

OdeInX1 pde_to_ode(const PdeSpec& pde) {
    pde.validate();
    const int dim = pde.dimension;

    // Phase 1: spatial derivatives -> radial derivatives.
    Operator radial;
    for (const auto& [q, coeff] : pde.coefficients) {
        Operator term;
        term.emplace(0, Frac(Poly::from_int(dim, 1), 0, 0));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < q[i]; ++j) term = apply_spatial_derivative(term, i, dim);
        for (const auto& [m, c] : term) op_add(radial, m, mul_poly(c, coeff));
    }

    // Phase 2: radial derivatives -> x1 derivatives via d/dr = (r/x1) d/dx1.
    // T[m] expresses d^m_r as an operator in d/dx1.
    int max_radial = radial.empty() ? 0 : radial.rbegin()->first;
    std::vector<Operator> T(max_radial + 1);
    T[0].emplace(0, Frac(Poly::from_int(dim, 1), 0, 0));
    Frac r_over_x1(Poly::variable(dim, dim), 1, 0);
    for (int m = 1; m <= max_radial; ++m) {
        Operator next;
        for (const auto& [j, c] : T[m - 1]) {
            Frac dc = dxi(c, 0);
            if (!dc.is_zero()) op_add(next, j, mul(r_over_x1, dc));
            op_add(next, j + 1, mul(r_over_x1, c));
        }
        T[m] = std::move(next);
    }

    Operator ode_fracs;
    for (const auto& [m, A] : radial) {
        for (const auto& [j, B] : T[m]) {
            Frac prod = mul(A, B);
            if (!prod.is_zero()) op_add(ode_fracs, j, prod);
        }
    }

    // Clear denominators with the elementwise maximum (bounded by the
    // x1^(2c-1) r^(2c) normalization that the construction guarantees).
    int P = 0, E = 0;
    for (const auto& [j, f] : ode_fracs) {
        P = std::max(P, f.x1_den);
        E = std::max(E, f.r_den);
    }
    int top = ode_fracs.empty() ? 0 : ode_fracs.rbegin()->first;
    std::vector<Poly> coeffs(top + 1, Poly::zero(dim));
    for (const auto& [j, f] : ode_fracs) {
        Poly lifted = f.num * Poly::variable(dim, 0, P - f.x1_den) * Poly::variable(dim, dim, E - f.r_den);
        for (const auto& [mono, c] : lifted.terms()) {
            if (mono[dim] != 0)
                throw InternalError("denominator clearing left a residual odd power of r");
        }
        coeffs[j] = lifted;
    }
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.empty()) throw InternalError("PDE reduced to the zero ODE");

    OdeInX1 ode;
    ode.normalization.x1_pow = P;
    ode.normalization.r_pow = E;
    ode.normalization.stripped = canonicalize_system(coeffs);
    ode.coeffs = std::move(coeffs);
    ode.order = static_cast<int>(ode.coeffs.size()) - 1;
    return ode;
}

std::string print_ode(const OdeInX1& ode) {
    std::ostringstream os;
    os << "greenrec-ode v1\n";
    os << "dimension: " << ode.dimension() << "\n";
    os << "order: " << ode.order << "\n";
    os << "normalization: x1^" << ode.normalization.x1_pow << " r^" << ode.normalization.r_pow << "\n";
    os << "stripped: " << ode.normalization.stripped << "\n";
    for (int i = 0; i <= ode.order; ++i) os << "coef " << i << ": " << ode.coeffs[i].to_string() << "\n";
    return os.str();
}

OdeInX1 parse_ode(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    OdeInX1 ode;
    int dim = -1, order = -1;
    std::map<int, std::string> coef_lines;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.rfind("greenrec-ode", 0) == 0) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'key: value'", lineno);
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        if (key == "dimension") {
            dim = std::stoi(value);
        } else if (key == "order") {
            order = std::stoi(value);
        } else if (key == "normalization") {
            int xp = 0, rp = 0;
            if (std::sscanf(value.c_str(), " x1^%d r^%d", &xp, &rp) != 2)
                throw ParseError("bad normalization record", lineno);
            ode.normalization.x1_pow = xp;
            ode.normalization.r_pow = rp;
        } else if (key == "stripped") {
            std::size_t a = value.find_first_not_of(' ');
            ode.normalization.stripped = a == std::string::npos ? "" : value.substr(a);
        } else if (key.rfind("coef ", 0) == 0) {
            coef_lines[std::stoi(key.substr(5))] = value;
        } else {
            throw ParseError("unknown key '" + key + "'", lineno);
        }
    }
    if (dim < 2 || order < 0) throw ParseError("missing dimension/order in ODE artifact");
    ode.order = order;
    ode.coeffs.assign(order + 1, Poly::zero(dim));
    for (const auto& [i, expr] : coef_lines) {
        if (i < 0 || i > order) throw ParseError("coefficient index out of range");
        ode.coeffs[i] = Poly::parse(expr, dim);
    }
    if (ode.coeffs.back().is_zero()) throw ParseError("top ODE coefficient is zero");
    return ode;
}

} // namespace greenrec
