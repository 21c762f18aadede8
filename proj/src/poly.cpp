#include "greenrec/poly.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <sstream>

namespace greenrec {

std::string to_string(const BigRat& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

namespace {

std::string rat_abs_string(const BigRat& q) {
    BigRat a = q < 0 ? BigRat(-q) : q;
    return to_string(a);
}

} // namespace

std::string to_string(const GaussRat& c) {
    if (c.im == 0) return to_string(c.re);
    if (c.re == 0) {
        if (c.im == 1) return "i";
        if (c.im == -1) return "-i";
        return to_string(c.im) + "*i";
    }
    std::string s = "(" + to_string(c.re);
    s += c.im < 0 ? "-" : "+";
    if (c.im != 1 && c.im != -1) s += rat_abs_string(c.im) + "*";
    s += "i)";
    return s;
}

Poly Poly::constant(int dim, GaussRat c) {
    Poly p(dim);
    if (!c.is_zero()) p.terms_.emplace(Mono(dim + 3, 0), std::move(c));
    return p;
}

Poly Poly::variable(int dim, int var, int power) {
    if (var < 0 || var >= dim + 3) throw DomainError("variable index out of range");
    if (power < 0) throw DomainError("negative exponent");
    Poly p(dim);
    Mono m(dim + 3, 0);
    m[var] = power;
    p.add_term(m, GaussRat(1));
    return p;
}

Poly Poly::r_squared(int dim) {
    Poly p(dim);
    for (int i = 0; i < dim; ++i) p += variable(dim, i, 2);
    return p;
}

Poly Poly::monomial(int dim, const Mono& m, GaussRat c) {
    if (static_cast<int>(m.size()) != dim + 3) throw DomainError("monomial arity mismatch");
    Poly p(dim);
    if (!c.is_zero()) p.add_term(m, std::move(c));
    return p;
}

void Poly::check_dim(const Poly& o) const {
    if (dim_ != o.dim_) throw DomainError("polynomial dimension mismatch");
}

void Poly::add_term(const Mono& m, GaussRat c) {
    if (c.is_zero()) return;
    int re = m[var_r()];
    if (re >= 2) {
        // r^(2q+s) -> (x1^2+...+xd^2)^q * r^s
        Mono base = m;
        base[var_r()] = re % 2;
        Poly expanded = monomial(dim_, base, std::move(c)) * r_squared(dim_).pow(re / 2);
        for (const auto& [mm, cc] : expanded.terms_) {
            auto it = terms_.find(mm);
            if (it == terms_.end()) {
                terms_.emplace(mm, cc);
            } else {
                it->second += cc;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        return;
    }
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly p(dim_);
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
}

Poly& Poly::operator+=(const Poly& o) {
    check_dim(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_dim(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_dim(b);
    Poly p(a.dim_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Poly::Mono m(ma);
            for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
            p.add_term(m, ca * cb);
        }
    }
    return p;
}

Poly Poly::scaled(const GaussRat& c) const {
    Poly p(dim_);
    if (c.is_zero()) return p;
    for (const auto& [m, cc] : terms_) p.terms_.emplace(m, cc * c);
    return p;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw DomainError("negative polynomial power");
    Poly acc = Poly::from_int(dim_, 1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool Poly::try_exact_divide(const Poly& div, Poly& quotient_out) const {
    check_dim(div);
    if (div.is_zero()) return false;
    Poly rem = *this;
    Poly quot(dim_);
    const auto& dlt = *div.terms_.rbegin(); // leading term of divisor
    while (!rem.is_zero()) {
        const auto& rlt = *rem.terms_.rbegin();
        Mono q(rlt.first);
        bool divisible = true;
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] -= dlt.first[i];
            if (q[i] < 0) {
                divisible = false;
                break;
            }
        }
        if (!divisible) return false;
        GaussRat c = rlt.second / dlt.second;
        Poly qt = monomial(dim_, q, c);
        quot += qt;
        rem -= qt * div;
    }
    if (quot * div != *this) return false;
    quotient_out = std::move(quot);
    return true;
}

Poly Poly::exact_divide(const Poly& div) const {
    Poly q(dim_);
    if (!try_exact_divide(div, q)) throw DivisionError("nonzero remainder");
    return q;
}

Poly Poly::formal_derivative(int var) const {
    Poly p(dim_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Mono d(m);
        d[var] -= 1;
        p.add_term(d, c * GaussRat(m[var]));
    }
    return p;
}

Poly Poly::substitute(int var, const Poly& value) const {
    check_dim(value);
    Poly out(dim_);
    for (const auto& [m, c] : terms_) {
        Mono base(m);
        int e = base[var];
        base[var] = 0;
        out += monomial(dim_, base, c) * value.pow(e);
    }
    return out;
}

Poly Poly::substitute_int(int var, long long v) const {
    return substitute(var, from_int(dim_, v));
}

int Poly::degree_in(int var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

int Poly::total_degree() const {
    int d = -1;
    if (!terms_.empty()) {
        const auto& m = terms_.rbegin()->first;
        d = 0;
        for (int v : m) d += v;
    }
    return d;
}

bool Poly::contains_var(int var) const {
    for (const auto& [m, c] : terms_)
        if (m[var] > 0) return true;
    return false;
}

int Poly::min_exponent(int var) const {
    if (terms_.empty()) return 0;
    int e = INT_MAX;
    for (const auto& [m, c] : terms_) e = std::min(e, m[var]);
    return e;
}

Poly Poly::shift_down(int var, int e) const {
    if (e == 0) return *this;
    Poly p(dim_);
    for (const auto& [m, c] : terms_) {
        if (m[var] < e) throw DivisionError("monomial shift below zero");
        Mono d(m);
        d[var] -= e;
        p.terms_.emplace(d, c);
    }
    return p;
}

Poly Poly::coefficient_of(int var, int e) const {
    Poly p(dim_);
    for (const auto& [m, c] : terms_) {
        if (m[var] != e) continue;
        Mono d(m);
        d[var] = 0;
        p.terms_.emplace(d, c);
    }
    return p;
}

GaussRat Poly::leading_coefficient() const {
    if (terms_.empty()) return GaussRat(0);
    return terms_.rbegin()->second;
}

const Poly::Mono* Poly::leading_monomial() const {
    if (terms_.empty()) return nullptr;
    return &terms_.rbegin()->first;
}

GaussRat Poly::rational_content() const {
    if (terms_.empty()) return GaussRat(1);
    BigInt g = 0;
    BigInt l = 1;
    for (const auto& [m, c] : terms_) {
        for (const BigRat* q : {&c.re, &c.im}) {
            if (*q == 0) continue;
            g = gcd(g, BigInt(abs(numerator(*q))));
            l = lcm(l, BigInt(denominator(*q)));
        }
    }
    if (g == 0) g = 1;
    BigRat scale(g, l);
    const GaussRat& lead = terms_.rbegin()->second;
    bool negative = lead.re != 0 ? lead.re < 0 : lead.im < 0;
    return GaussRat(negative ? BigRat(-scale) : scale);
}

std::complex<double> Poly::eval(std::span<const std::complex<double>> vals) const {
    using cd = std::complex<double>;
    cd acc(0.0, 0.0);
    for (const auto& [m, c] : terms_) {
        cd t = c.to_complex();
        for (int v = 0; v < nvars(); ++v)
            for (int j = 0; j < m[v]; ++j) t *= vals[v];
        acc += t;
    }
    return acc;
}

std::string Poly::var_name(int v) const {
    if (v < dim_) return "x" + std::to_string(v + 1);
    if (v == var_r()) return "r";
    if (v == var_n()) return "n";
    return "k";
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    // descending grlex
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        bool first = out.empty();
        std::string coeff;
        bool negative = false;
        if (c.im == 0) {
            negative = c.re < 0;
            coeff = rat_abs_string(c.re);
        } else if (c.re == 0) {
            negative = c.im < 0;
            BigRat a = negative ? BigRat(-c.im) : c.im;
            coeff = (a == 1) ? "i" : greenrec::to_string(a) + "*i";
        } else {
            coeff = greenrec::to_string(c); // parenthesized complex
        }
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? "-" : "+";
        }
        std::string monos;
        for (int v = 0; v < nvars(); ++v) {
            if (m[v] == 0) continue;
            if (!monos.empty()) monos += "*";
            monos += var_name(v);
            if (m[v] > 1) monos += "^" + std::to_string(m[v]);
        }
        if (monos.empty()) {
            out += coeff;
        } else if (coeff == "1") {
            out += monos;
        } else {
            out += coeff + "*" + monos;
        }
    }
    return out;
}

// --- expression parser ------------------------------------------------------

namespace {

struct ExprParser {
    const std::string& s;
    std::size_t pos = 0;
    int dim;

    explicit ExprParser(const std::string& text, int d) : s(text), dim(d) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    Poly parse_expr() {
        Poly acc = eat('-') ? -parse_term() : parse_term();
        for (;;) {
            if (eat('+')) {
                acc += parse_term();
            } else if (eat('-')) {
                acc -= parse_term();
            } else {
                return acc;
            }
        }
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        for (;;) {
            skip_ws();
            if (eat('*')) {
                acc = acc * parse_factor();
            } else {
                // implicit multiplication like "2i" or ") (" is not accepted;
                // the printer always writes explicit '*'
                return acc;
            }
        }
    }

    Poly parse_factor() {
        Poly base = parse_base();
        skip_ws();
        if (eat('^')) {
            int e = parse_int("exponent");
            if (e < 0) throw ParseError("negative exponent in polynomial expression");
            return base.pow(e);
        }
        return base;
    }

    int parse_int(const char* what) {
        skip_ws();
        bool neg = eat('-');
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError(std::string("expected ") + what + " at offset " + std::to_string(pos));
        int v = std::stoi(s.substr(start, pos - start));
        return neg ? -v : v;
    }

    BigInt parse_bigint() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer at offset " + std::to_string(pos));
        return BigInt(s.substr(start, pos - start));
    }

    Poly parse_base() {
        skip_ws();
        if (eat('(')) {
            Poly inner = parse_expr();
            if (!eat(')')) throw ParseError("missing ')' at offset " + std::to_string(pos));
            return inner;
        }
        if (eat('-')) return -parse_base();
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt num = parse_bigint();
            if (eat('/')) {
                BigInt den = parse_bigint();
                if (den == 0) throw ParseError("zero denominator");
                return Poly::constant(dim, GaussRat(BigRat(num, den)));
            }
            return Poly::constant(dim, GaussRat(BigRat(num)));
        }
        if (c == 'i') {
            ++pos;
            return Poly::constant(dim, GaussRat::imaginary_unit());
        }
        if (c == 'k') {
            ++pos;
            return Poly::variable(dim, dim + 2);
        }
        if (c == 'n') {
            ++pos;
            return Poly::variable(dim, dim + 1);
        }
        if (c == 'r') {
            ++pos;
            return Poly::variable(dim, dim);
        }
        if (c == 'x') {
            ++pos;
            int idx = parse_int("variable index");
            if (idx < 1 || idx > dim)
                throw ParseError("variable x" + std::to_string(idx) + " out of range for dimension " +
                                 std::to_string(dim));
            return Poly::variable(dim, idx - 1);
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(pos));
    }
};

} // namespace

Poly Poly::parse(const std::string& text, int dim) {
    ExprParser p(text, dim);
    Poly out = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw ParseError("trailing characters in polynomial expression at offset " + std::to_string(p.pos));
    return out;
}

std::string canonicalize_system(std::vector<Poly>& polys) {
    if (polys.empty()) return "1";
    int dim = polys.front().dim();
    // common monomial over the x variables
    std::vector<int> common(dim, INT_MAX);
    bool any = false;
    for (const auto& p : polys) {
        for (const auto& [m, c] : p.terms()) {
            any = true;
            for (int v = 0; v < dim; ++v) common[v] = std::min(common[v], m[v]);
        }
    }
    if (!any) return "1";
    for (auto& p : polys) {
        if (p.is_zero()) continue;
        Poly q = p;
        for (int v = 0; v < dim; ++v) q = q.shift_down(v, common[v]);
        p = q;
    }
    // joint content: gcd of numerators, lcm of denominators across the system
    BigInt g = 0;
    BigInt l = 1;
    for (const auto& p : polys) {
        for (const auto& [m, c] : p.terms()) {
            for (const BigRat* q : {&c.re, &c.im}) {
                if (*q == 0) continue;
                g = gcd(g, BigInt(abs(numerator(*q))));
                l = lcm(l, BigInt(denominator(*q)));
            }
        }
    }
    if (g == 0) g = 1;
    GaussRat scale{BigRat(g, l)};
    // sign from the leading coefficient of the highest nonzero entry
    for (auto it = polys.rbegin(); it != polys.rend(); ++it) {
        if (it->is_zero()) continue;
        GaussRat lead = it->leading_coefficient();
        bool negative = lead.re != 0 ? lead.re < 0 : lead.im < 0;
        if (negative) scale = -scale;
        break;
    }
    GaussRat inv = GaussRat(1) / scale;
    for (auto& p : polys) p = p.scaled(inv);

    std::string desc = greenrec::to_string(scale);
    for (int v = 0; v < dim; ++v) {
        if (common[v] > 0) {
            desc += "*x" + std::to_string(v + 1);
            if (common[v] > 1) desc += "^" + std::to_string(common[v]);
        }
    }
    return desc;
}

bool proportional_systems(const std::vector<Poly>& a, const std::vector<Poly>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() != b[i].is_zero()) return false;
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (a[i] * b[j] != a[j] * b[i]) return false;
        }
    }
    return true;
}

} // namespace greenrec
