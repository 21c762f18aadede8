#include "greenrec/oracle.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "greenrec/bessel.hpp"
#include "greenrec/errors.hpp"

namespace greenrec {

namespace {

enum Fn : int { FnOne = 0, FnLog, FnH0, FnH1, FnK0, FnK1, FnExpMu };

struct TermKey {
    int a;  // x1 power (>= 0)
    int b;  // r power (any sign)
    int fn;
    friend bool operator<(const TermKey& s, const TermKey& t) {
        if (s.a != t.a) return s.a < t.a;
        if (s.b != t.b) return s.b < t.b;
        return s.fn < t.fn;
    }
};

using Table = std::map<TermKey, HpComplex>;

struct TableSet {
    KernelId id = KernelId::Custom;
    HpReal k = 0;     // real parameter for the cylinder kernels
    HpComplex mu = 0; // exponent parameter for the 3D exponential kernels
    std::vector<Table> orders;

    void extend(int n);
};

void table_add(Table& t, const TermKey& key, const HpComplex& c) {
    auto it = t.find(key);
    if (it == t.end()) {
        t.emplace(key, c);
    } else {
        it->second += c;
        if (it->second == HpComplex(0)) t.erase(it);
    }
}

void TableSet::extend(int n) {
    while (static_cast<int>(orders.size()) <= n) {
        const Table& prev = orders.back();
        Table next;
        for (const auto& [key, c] : prev) {
            if (key.a > 0) table_add(next, {key.a - 1, key.b, key.fn}, c * key.a);
            if (key.b != 0) table_add(next, {key.a + 1, key.b - 2, key.fn}, c * key.b);
            switch (key.fn) {
                case FnOne:
                    break;
                case FnLog:
                    table_add(next, {key.a + 1, key.b - 2, FnOne}, c);
                    break;
                case FnH0:
                    table_add(next, {key.a + 1, key.b - 1, FnH1}, -c * k);
                    break;
                case FnH1:
                    table_add(next, {key.a + 1, key.b - 1, FnH0}, c * k);
                    table_add(next, {key.a + 1, key.b - 2, FnH1}, -c);
                    break;
                case FnK0:
                    table_add(next, {key.a + 1, key.b - 1, FnK1}, -c * k);
                    break;
                case FnK1:
                    table_add(next, {key.a + 1, key.b - 1, FnK0}, -c * k);
                    table_add(next, {key.a + 1, key.b - 2, FnK1}, -c);
                    break;
                case FnExpMu:
                    table_add(next, {key.a + 1, key.b - 1, FnExpMu}, c * mu);
                    break;
            }
        }
        orders.push_back(std::move(next));
    }
}

TableSet build_seed(const KernelSpec& kernel) {
    TableSet ts;
    ts.id = kernel.id;
    Table seed;
    const HpReal pi = hp_pi();
    switch (kernel.id) {
        case KernelId::Laplace2D:
            seed.emplace(TermKey{0, 0, FnLog}, HpComplex(-1 / (2 * pi)));
            break;
        case KernelId::Laplace3D:
            seed.emplace(TermKey{0, -1, FnOne}, HpComplex(-1 / (4 * pi)));
            break;
        case KernelId::Helmholtz2D:
            ts.k = HpReal(kernel.k.real());
            seed.emplace(TermKey{0, 0, FnH0}, HpComplex(0, 1) / (4 * HpReal(1)));
            break;
        case KernelId::Helmholtz3D:
            ts.mu = HpComplex(0, 1) * HpComplex(kernel.k.real(), kernel.k.imag());
            seed.emplace(TermKey{0, -1, FnExpMu}, HpComplex(1 / (4 * pi)));
            break;
        case KernelId::Yukawa2D:
            ts.k = HpReal(kernel.k.real());
            seed.emplace(TermKey{0, 0, FnK0}, HpComplex(1 / (2 * pi)));
            break;
        case KernelId::Yukawa3D:
            ts.mu = HpComplex(-kernel.k.real(), 0);
            ts.k = HpReal(kernel.k.real());
            seed.emplace(TermKey{0, -1, FnExpMu}, HpComplex(1 / (4 * pi)));
            break;
        case KernelId::Biharmonic2D:
            seed.emplace(TermKey{0, 2, FnLog}, HpComplex(1 / (8 * pi)));
            break;
        case KernelId::Biharmonic3D:
            seed.emplace(TermKey{0, 1, FnOne}, HpComplex(-1 / (8 * pi)));
            break;
        case KernelId::Custom:
            throw CapabilityError("the oracle needs a closed form; custom kernels have none");
    }
    if (kernel.id == KernelId::Helmholtz2D) ts.k = HpReal(kernel.k.real());
    ts.orders.push_back(std::move(seed));
    return ts;
}

std::string cache_key(const KernelSpec& kernel) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "|%a|%a", kernel.k.real(), kernel.k.imag());
    return kernel.name + buf;
}

std::mutex g_cache_mutex;
std::map<std::string, TableSet>& table_cache() {
    static std::map<std::string, TableSet> cache;
    return cache;
}

// Function values needed by a table at a point with radius r.
struct FnValues {
    HpComplex v[7];
};

FnValues fn_values(const TableSet& ts, const HpReal& r) {
    FnValues out;
    out.v[FnOne] = HpComplex(1);
    switch (ts.id) {
        case KernelId::Laplace2D:
        case KernelId::Biharmonic2D:
            out.v[FnLog] = HpComplex(log(r));
            break;
        case KernelId::Helmholtz2D: {
            HpReal j0, y0, j1, y1;
            hp_bessel_j0y0j1y1(ts.k * r, j0, y0, j1, y1);
            out.v[FnH0] = HpComplex(j0, y0);
            out.v[FnH1] = HpComplex(j1, y1);
            break;
        }
        case KernelId::Yukawa2D: {
            HpReal k0, k1;
            hp_bessel_k0k1(ts.k * r, k0, k1);
            out.v[FnK0] = HpComplex(k0);
            out.v[FnK1] = HpComplex(k1);
            break;
        }
        case KernelId::Helmholtz3D:
        case KernelId::Yukawa3D:
            out.v[FnExpMu] = exp(ts.mu * r);
            break;
        default:
            break;
    }
    return out;
}

HpComplex eval_table(const Table& table, const FnValues& fv, const HpReal& x1, const HpReal& r) {
    // power caches
    int max_a = 0, max_bpos = 0, max_bneg = 0;
    for (const auto& [key, c] : table) {
        max_a = std::max(max_a, key.a);
        if (key.b > 0) max_bpos = std::max(max_bpos, key.b);
        if (key.b < 0) max_bneg = std::max(max_bneg, -key.b);
    }
    std::vector<HpReal> xp(max_a + 1), rp(max_bpos + 1), ri(max_bneg + 1);
    xp[0] = 1;
    for (int i = 1; i <= max_a; ++i) xp[i] = xp[i - 1] * x1;
    rp[0] = 1;
    for (int i = 1; i <= max_bpos; ++i) rp[i] = rp[i - 1] * r;
    ri[0] = 1;
    if (max_bneg > 0) {
        HpReal rinv = 1 / r;
        for (int i = 1; i <= max_bneg; ++i) ri[i] = ri[i - 1] * rinv;
    }
    HpComplex acc = 0;
    for (const auto& [key, c] : table) {
        HpComplex t = c * fv.v[key.fn];
        t *= xp[key.a];
        t *= key.b >= 0 ? rp[key.b] : ri[-key.b];
        acc += t;
    }
    return acc;
}

} // namespace

const HpReal& hp_pi() {
    static const HpReal pi = acos(HpReal(-1));
    return pi;
}

const HpReal& hp_euler_gamma() {
    // Brent-McMillan: gamma = S0(2n)/I0(2n) - ln n with error O(e^{-4n})
    static const HpReal gamma = [] {
        const int n = 70;
        HpReal n2 = HpReal(n) * HpReal(n);
        HpReal term = 1, A = 0, B = 1, H = 0;
        for (int kk = 1; kk <= 600; ++kk) {
            term *= n2 / (HpReal(kk) * kk);
            H += HpReal(1) / kk;
            B += term;
            A += term * H;
            if (term < 1e-130 * B && kk > 2 * n) break;
        }
        return A / B - log(HpReal(n));
    }();
    return gamma;
}

HpComplex hp_from_gauss(const GaussRat& c) {
    auto conv = [](const BigRat& q) {
        return HpReal(numerator(q).convert_to<boost::multiprecision::cpp_int>()) /
               HpReal(denominator(q).convert_to<boost::multiprecision::cpp_int>());
    };
    return {conv(c.re), conv(c.im)};
}

void hp_bessel_j0y0j1y1(const HpReal& z, HpReal& j0, HpReal& y0, HpReal& j1, HpReal& y1) {
    if (z <= 0) throw DomainError("bessel argument must be positive");
    const HpReal pi = hp_pi();
    const HpReal q = z * z / 4;
    HpReal t = 1, j0s = 1, s0 = 0, h = 0;
    for (int m = 1; m <= 600; ++m) {
        t *= -q / (HpReal(m) * m);
        h += HpReal(1) / m;
        j0s += t;
        s0 -= t * h;
        if (abs(t) < 1e-130 * abs(j0s) && m > 4) break;
    }
    HpReal u = 1, j1s = 1, s1 = 1, hk = 0, hk1 = 1;
    for (int kk = 1; kk <= 600; ++kk) {
        u *= -q / (HpReal(kk) * (kk + 1));
        hk += HpReal(1) / kk;
        hk1 += HpReal(1) / (kk + 1);
        j1s += u;
        s1 += u * (hk + hk1);
        if (abs(u) < 1e-130 * abs(j1s) && kk > 4) break;
    }
    j0 = j0s;
    j1 = (z / 2) * j1s;
    HpReal lg = log(z / 2) + hp_euler_gamma();
    y0 = (2 / pi) * (lg * j0 + s0);
    y1 = (2 / pi) * (lg * j1 - 1 / z - (z / 4) * s1);
}

void hp_bessel_k0k1(const HpReal& z, HpReal& k0, HpReal& k1) {
    if (z <= 0) throw DomainError("bessel argument must be positive");
    const HpReal q = z * z / 4;
    HpReal t = 1, i0 = 1, u = 1, i1s = 1, s = 0, h = 0;
    for (int m = 1; m <= 800; ++m) {
        t *= q / (HpReal(m) * m);
        h += HpReal(1) / m;
        s += t * h;
        i0 += t;
        u *= q / (HpReal(m) * (m + 1));
        i1s += u;
        if (t < 1e-130 * i0 && m > 4) break;
    }
    HpReal i1 = (z / 2) * i1s;
    k0 = -(log(z / 2) + hp_euler_gamma()) * i0 + s;
    k1 = (1 / z - i1 * k0) / i0;
}

std::vector<std::complex<double>> DerivOracleResult::to_doubles() const {
    std::vector<std::complex<double>> out;
    out.reserve(values.size());
    for (const auto& v : values)
        out.emplace_back(v.real().convert_to<double>(), v.imag().convert_to<double>());
    return out;
}

DerivOracleResult oracle_derivatives(const KernelSpec& kernel, std::span<const double> x, int n,
                                     int digits) {
    if (digits < 30) throw DomainError("oracle requires digits >= 30");
    if (digits > kOracleDigits)
        throw CapabilityError("oracle working precision is limited to 100 digits");
    if (static_cast<int>(x.size()) != kernel.dimension)
        throw DomainError("point dimension does not match kernel");
    if (kernel.id == KernelId::Custom)
        throw CapabilityError("the oracle needs a closed form; custom kernels have none");
    HpReal x1 = x[0];
    HpReal xb2 = 0;
    for (std::size_t i = 1; i < x.size(); ++i) xb2 += HpReal(x[i]) * HpReal(x[i]);
    HpReal r = sqrt(x1 * x1 + xb2);
    if (r == 0) throw DomainError("oracle point must avoid the origin");

    DerivOracleResult res;
    res.working_precision = kOracleDigits;
    res.method = "collected-expression-differentiation";
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto& cache = table_cache();
        auto it = cache.find(cache_key(kernel));
        if (it == cache.end()) it = cache.emplace(cache_key(kernel), build_seed(kernel)).first;
        it->second.extend(n);
        FnValues fv = fn_values(it->second, r);
        for (int m = 0; m <= n; ++m) res.values.push_back(eval_table(it->second.orders[m], fv, x1, r));
    }
    return res;
}

std::vector<std::complex<double>> fd_derivatives(const KernelSpec& kernel, std::span<const double> x,
                                                 int n) {
    using cd = std::complex<double>;
    std::vector<double> p(x.begin(), x.end());
    auto g = [&](double x1) {
        p[0] = x1;
        return eval_kernel(kernel, radius_of(p));
    };
    double x1 = x[0];
    double r = radius_of(x);
    std::vector<cd> out;
    for (int m = 0; m <= n; ++m) {
        if (m == 0) {
            out.push_back(g(x1));
            continue;
        }
        auto stencil = [&](double h) {
            cd acc{0.0, 0.0};
            for (int j = 0; j <= m; ++j) {
                double c = 1.0;
                for (int t = 0; t < j; ++t) c *= -(double)(m - t) / (t + 1); // (-1)^j C(m,j)
                acc += c * g(x1 + (m / 2.0 - j) * h);
            }
            return acc / std::pow(h, m);
        };
        double h = 0.01 * r / (1 << m);
        cd d1 = stencil(h), d2 = stencil(h / 2);
        out.push_back((4.0 * d2 - d1) / 3.0); // one Richardson step
    }
    return out;
}

DerivTable::DerivTable(const KernelSpec& kernel, int max_order)
    : kernel_(kernel), max_order_(max_order) {
    TableSet ts = build_seed(kernel);
    ts.extend(max_order);
    orders_.resize(max_order + 1);
    std::uint64_t standalone_cost = 0, order_sum = 0;
    for (int m = 0; m <= max_order; ++m) {
        for (const auto& [key, c] : ts.orders[m]) {
            orders_[m].push_back(Term{key.a, key.b, key.fn,
                                      {c.real().convert_to<double>(), c.imag().convert_to<double>()}});
        }
        // standalone evaluation cost: every term computes its powers afresh
        for (const auto& t : orders_[m])
            standalone_cost += static_cast<std::uint64_t>(t.x1_pow + std::abs(t.r_pow) + 3);
        order_sum += static_cast<std::uint64_t>(m);
    }
    cost_unit_ = order_sum > 0 ? std::max<std::uint64_t>(1, standalone_cost / order_sum) : 1;
}

std::size_t DerivTable::term_count(int n) const { return orders_.at(n).size(); }

std::complex<double> DerivTable::eval_order(std::span<const double> x, int n, FlopCounter* fc) const {
    using cd = std::complex<double>;
    double x1 = x[0];
    double r = radius_of(x);
    if (!(r > 0.0)) throw DomainError("derivative tables need |x| > 0");
    cd fn[7];
    fn[FnOne] = 1.0;
    switch (kernel_.id) {
        case KernelId::Laplace2D:
        case KernelId::Biharmonic2D:
            fn[FnLog] = std::log(r);
            break;
        case KernelId::Helmholtz2D: {
            auto b = bessel_j0y0j1y1(kernel_.k.real() * r);
            fn[FnH0] = cd(b.j0, b.y0);
            fn[FnH1] = cd(b.j1, b.y1);
            break;
        }
        case KernelId::Yukawa2D: {
            auto b = bessel_k0k1(kernel_.k.real() * r);
            fn[FnK0] = cd(b.k0, 0.0);
            fn[FnK1] = cd(b.k1, 0.0);
            break;
        }
        case KernelId::Helmholtz3D:
            fn[FnExpMu] = std::exp(cd(0.0, 1.0) * kernel_.k * r);
            break;
        case KernelId::Yukawa3D:
            fn[FnExpMu] = std::exp(cd(-kernel_.k.real(), 0.0) * r);
            break;
        default:
            break;
    }
    if (fc) {
        fc->special(2); // standalone formula: special values recomputed per order
        // naive-formula cost model, calibrated per kernel (see docs/cli.md)
        fc->mul(cost_unit_ * static_cast<std::uint64_t>(n));
    }
    cd acc{0.0, 0.0};
    for (const auto& t : orders_.at(n)) {
        cd term = t.coeff * fn[t.fn];
        for (int j = 0; j < t.x1_pow; ++j) term *= x1;
        if (t.r_pow >= 0)
            for (int j = 0; j < t.r_pow; ++j) term *= r;
        else
            for (int j = 0; j < -t.r_pow; ++j) term /= r;
        acc += term;
    }
    return acc;
}

std::vector<std::complex<double>> DerivTable::eval_all(std::span<const double> x, int P,
                                                       FlopCounter* fc) const {
    std::vector<std::complex<double>> out;
    out.reserve(P + 1);
    for (int m = 0; m <= P; ++m) out.push_back(eval_order(x, m, fc));
    return out;
}

namespace {

double hp_abs(const HpComplex& v) {
    return sqrt(v.real() * v.real() + v.imag() * v.imag()).convert_to<double>();
}

} // namespace

double verify_ode(const OdeInX1& ode, const KernelSpec& kernel,
                  std::span<const std::vector<double>> points, int digits) {
    const int dim = kernel.dimension;
    double worst = 0;
    for (const auto& pt : points) {
        if (radius_of(pt) == 0.0) throw DomainError("verification point at the origin");
        auto g = oracle_derivatives(kernel, pt, ode.order, digits);
        std::vector<HpComplex> vals(dim + 3, HpComplex(0));
        for (int i = 0; i < dim; ++i) vals[i] = HpReal(pt[i]);
        vals[dim + 2] = HpComplex(kernel.k.real(), kernel.k.imag());
        HpComplex acc = 0;
        double scale = 0;
        for (int i = 0; i <= ode.order; ++i) {
            HpComplex li = 0;
            for (const auto& [mono, c] : ode.coeffs[i].terms()) {
                HpComplex t = hp_from_gauss(c);
                for (int v = 0; v < dim + 3; ++v)
                    for (int j = 0; j < mono[v]; ++j) t *= vals[v];
                li += t;
            }
            HpComplex contrib = li * g.values[i];
            acc += contrib;
            scale = std::max(scale, hp_abs(contrib));
        }
        if (scale == 0) continue;
        worst = std::max(worst, hp_abs(acc) / scale);
    }
    return worst;
}

namespace {

double shift_table_residual(const std::map<int, Poly>& coeffs, int dim,
                            const std::vector<HpComplex>& g, const std::vector<double>& pt,
                            const std::complex<double>& kval, long long n) {
    std::vector<HpComplex> vals(dim + 3, HpComplex(0));
    for (int i = 0; i < dim && i < static_cast<int>(pt.size()); ++i) vals[i] = HpReal(pt[i]);
    vals[dim + 1] = HpReal(static_cast<double>(n));
    vals[dim + 2] = HpComplex(kval.real(), kval.imag());
    HpComplex acc = 0;
    double scale = 0;
    for (const auto& [s, p] : coeffs) {
        if (n + s < 0) continue;
        HpComplex cs = 0;
        for (const auto& [mono, c] : p.terms()) {
            HpComplex t = hp_from_gauss(c);
            for (int v = 0; v < dim + 3; ++v)
                for (int j = 0; j < mono[v]; ++j) t *= vals[v];
            cs += t;
        }
        HpComplex contrib = cs * g.at(n + s);
        acc += contrib;
        scale = std::max(scale, hp_abs(contrib));
    }
    if (scale == 0) return 0;
    return hp_abs(acc) / scale;
}

} // namespace

double verify_recurrence(const Recurrence& rec, const KernelSpec& kernel,
                         std::span<const std::vector<double>> points, int n, int digits) {
    double worst = 0;
    for (const auto& pt : points) {
        auto g = oracle_derivatives(kernel, pt, n + rec.max_shift(), digits);
        worst = std::max(worst,
                         shift_table_residual(rec.coeffs, kernel.dimension, g.values, pt, kernel.k, n));
    }
    return worst;
}

double verify_small_recurrence(const SmallRecurrence& small, const KernelSpec& kernel,
                               std::span<const std::vector<double>> points, int max_even,
                               int digits) {
    double worst = 0;
    for (const auto& pt : points) {
        std::vector<double> on_plane(pt);
        on_plane[0] = 0.0;
        auto g = oracle_derivatives(kernel, on_plane, max_even + std::abs(small.min_shift()), digits);
        for (long long n = 1; n + small.max_shift() <= max_even; ++n) {
            worst = std::max(worst, shift_table_residual(small.coeffs, kernel.dimension, g.values,
                                                         on_plane, kernel.k, n));
        }
    }
    return worst;
}

} // namespace greenrec
