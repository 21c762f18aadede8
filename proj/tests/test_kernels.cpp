#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "greenrec/bessel.hpp"
#include "greenrec/kernels.hpp"
#include "greenrec/oracle.hpp"
#include "greenrec/rng.hpp"

using namespace greenrec;
using cd = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double rel_err(cd got, cd want) {
    double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

std::vector<double> random_point(Rng& rng, int dim, double lo = -2.0, double hi = 2.0,
                                 double min_radius = 0.3) {
    for (;;) {
        std::vector<double> x(dim);
        for (auto& v : x) v = rng.uniform(lo, hi);
        if (radius_of(x) >= min_radius && std::abs(x[0]) > 0.05) return x;
    }
}

std::vector<KernelSpec> all_builtins() {
    std::vector<KernelSpec> ks;
    for (const auto& name : builtin_kernel_names())
        ks.push_back(kernel_needs_parameter(name) ? make_kernel(name, {1.0, 0.0}) : make_kernel(name));
    return ks;
}

} // namespace

TEST_CASE("bessel J/Y against the standard library across (0, 50]") {
    // 1e-12 relative, with an absolute floor standing in for "relative" in
    // eps-neighborhoods of the functions' zeros
    auto close = [](double got, double want) {
        return std::abs(got - want) <= std::max(1e-12 * std::abs(want), 1e-13);
    };
    for (double z = 0.05; z <= 50.0; z += 0.47) {
        auto b = bessel_j0y0j1y1(z);
        CHECK(close(b.j0, std::cyl_bessel_j(0.0, z)));
        CHECK(close(b.y0, std::cyl_neumann(0.0, z)));
        CHECK(close(b.j1, std::cyl_bessel_j(1.0, z)));
        CHECK(close(b.y1, std::cyl_neumann(1.0, z)));
    }
    CHECK_THROWS_AS(bessel_j0y0j1y1(0.0), DomainError);
}

TEST_CASE("bessel: J0 near zero argument, defining ODE, Wronskian") {
    CHECK(bessel_j0y0j1y1(1e-8).j0 == doctest::Approx(1.0).epsilon(1e-12));

    // J0'' + J0'/z + J0 = 0 via central differences with two Richardson levels
    // (step sizes large enough that double rounding in J0 stays below 1e-11)
    for (double z : {0.7, 3.3, 9.1, 14.2, 23.5}) {
        long double h = 0.05L;
        auto j0 = [](long double zz) { return (long double)bessel_j0y0j1y1((double)zz).j0; };
        auto second = [&](long double hh) { return (j0(z + hh) - 2 * j0(z) + j0(z - hh)) / (hh * hh); };
        auto first = [&](long double hh) { return (j0(z + hh) - j0(z - hh)) / (2 * hh); };
        auto rich = [](long double coarse, long double fine, long double w) {
            return (w * fine - coarse) / (w - 1);
        };
        long double d2a = rich(second(h), second(h / 2), 4.0L);
        long double d2b = rich(second(h / 2), second(h / 4), 4.0L);
        long double d2 = rich(d2a, d2b, 16.0L);
        long double d1a = rich(first(h), first(h / 2), 4.0L);
        long double d1b = rich(first(h / 2), first(h / 4), 4.0L);
        long double d1 = rich(d1a, d1b, 16.0L);
        long double resid = d2 + d1 / z + j0(z);
        CHECK(std::abs((double)resid) <= 1e-10);
    }

    for (double z = 0.3; z < 40.0; z += 1.7) {
        auto b = bessel_j0y0j1y1(z);
        double w = b.j1 * b.y0 - b.j0 * b.y1;
        CHECK(std::abs(w - 2.0 / (kPi * z)) <= 1e-10 * std::abs(w));
    }
}

TEST_CASE("bessel: J0(1) against an independent series summation") {
    // 30-ish digit ascending series in long double rational arithmetic
    long double q = 0.25L, t = 1.0L, acc = 1.0L;
    for (int m = 1; m <= 30; ++m) {
        t *= -q / (static_cast<long double>(m) * m);
        acc += t;
    }
    CHECK(std::abs(bessel_j0y0j1y1(1.0).j0 - (double)acc) <= 1e-15);
}

TEST_CASE("bessel K0/K1 against the standard library") {
    for (double z = 0.05; z <= 8.0; z += 0.23) {
        auto b = bessel_k0k1(z);
        CHECK(std::abs(b.k0 - std::cyl_bessel_k(0.0, z)) <= 5e-12 * std::abs(b.k0));
        CHECK(std::abs(b.k1 - std::cyl_bessel_k(1.0, z)) <= 5e-12 * std::abs(b.k1));
    }
    // the asymptotic branch bottoms out near 1e-9 relative around z ~ 10-14
    for (double z = 9.5; z <= 30.0; z += 1.1) {
        auto b = bessel_k0k1(z);
        CHECK(std::abs(b.k0 - std::cyl_bessel_k(0.0, z)) <= 2e-9 * std::abs(b.k0));
        CHECK(std::abs(b.k1 - std::cyl_bessel_k(1.0, z)) <= 2e-9 * std::abs(b.k1));
    }
}

TEST_CASE("high-precision constants and bessel agree with double precision") {
    CHECK(hp_pi().convert_to<double>() == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(hp_euler_gamma().convert_to<double>() ==
          doctest::Approx(0.5772156649015328606).epsilon(1e-15));

    for (double z : {0.3, 1.0, 2.7, 6.4, 11.0}) {
        HpReal j0, y0, j1, y1;
        hp_bessel_j0y0j1y1(HpReal(z), j0, y0, j1, y1);
        CHECK(std::abs(j0.convert_to<double>() - std::cyl_bessel_j(0.0, z)) <= 1e-14);
        CHECK(std::abs(y0.convert_to<double>() - std::cyl_neumann(0.0, z)) <= 1e-14);
        CHECK(std::abs(j1.convert_to<double>() - std::cyl_bessel_j(1.0, z)) <= 1e-14);
        CHECK(std::abs(y1.convert_to<double>() - std::cyl_neumann(1.0, z)) <= 1e-14);
        HpReal k0, k1;
        hp_bessel_k0k1(HpReal(z), k0, k1);
        CHECK(std::abs(k0.convert_to<double>() - std::cyl_bessel_k(0.0, z)) <=
              1e-14 * std::cyl_bessel_k(0.0, z));
        CHECK(std::abs(k1.convert_to<double>() - std::cyl_bessel_k(1.0, z)) <=
              1e-14 * std::cyl_bessel_k(1.0, z));
    }
}

TEST_CASE("eval_kernel values") {
    CHECK(eval_kernel(make_kernel("laplace2d"), 1.0) == cd(0.0, 0.0));
    CHECK(rel_err(eval_kernel(make_kernel("laplace3d"), 1.0), cd(-1.0 / (4 * kPi), 0.0)) <= 1e-15);

    auto b = bessel_j0y0j1y1(1.0);
    cd h01(b.j0, b.y0);
    CHECK(rel_err(eval_kernel(make_kernel("helmholtz2d", 1.0), 1.0), cd(0.0, 0.25) * h01) <= 1e-14);

    CHECK_THROWS_AS(eval_kernel(make_kernel("laplace2d"), 0.0), DomainError);
    CHECK_THROWS_AS(eval_kernel(make_kernel("laplace2d"), -1.0), DomainError);
    CHECK_THROWS_AS(make_kernel("helmholtz2d"), DomainError);       // missing k
    CHECK_THROWS_AS(make_kernel("nosuchkernel"), CapabilityError);
}

TEST_CASE("base derivatives: laplace2d hand values and parity") {
    auto k = make_kernel("laplace2d");
    std::vector<double> x{3.0, 4.0};
    auto d = base_derivatives(k, x, 1);
    CHECK(rel_err(d[0], cd(-std::log(5.0) / (2 * kPi), 0.0)) <= 1e-15);
    CHECK(rel_err(d[1], cd(-3.0 / (50 * kPi), 0.0)) <= 1e-15);

    std::vector<double> axis{0.0, 1.3};
    auto da = base_derivatives(k, axis, 3);
    CHECK(da[1] == cd(0.0, 0.0));
    CHECK(da[3] == cd(0.0, 0.0));

    CHECK_THROWS_AS(base_derivatives(k, x, 4), CapabilityError);
    std::vector<double> origin{0.0, 0.0};
    CHECK_THROWS_AS(base_derivatives(k, origin, 1), DomainError);
}

TEST_CASE("oracle: frozen laplace2d values and zeroth-order consistency") {
    auto k = make_kernel("laplace2d");
    std::vector<double> x{3.0, 4.0};
    auto res = oracle_derivatives(k, x, 2);
    CHECK(res.working_precision >= 50);
    // d2 G = -(r^2 - 2 x1^2) / (2 pi r^4) = -7/(1250 pi) at (3,4)
    auto vals = res.to_doubles();
    CHECK(rel_err(vals[2], cd(-7.0 / (1250 * kPi), 0.0)) <= 1e-14);

    Rng rng(5);
    for (const auto& kern : all_builtins()) {
        for (int rep = 0; rep < 3; ++rep) {
            auto pt = random_point(rng, kern.dimension);
            auto o = oracle_derivatives(kern, pt, 0).to_doubles();
            CHECK(rel_err(o[0], eval_kernel(kern, radius_of(pt))) <= 1e-13);
        }
    }
}

TEST_CASE("oracle vs finite differences (second cross-check)") {
    Rng rng(17);
    for (const auto& kern : all_builtins()) {
        auto pt = random_point(rng, kern.dimension, -1.5, 1.5, 0.6);
        auto o = oracle_derivatives(kern, pt, 3).to_doubles();
        auto fd = fd_derivatives(kern, pt, 3);
        for (int m = 0; m <= 3; ++m) {
            double scale = std::max({std::abs(o[m]), std::abs(o[0]), 1e-6});
            CHECK(std::abs(o[m] - fd[m]) / scale <= 1e-5);
        }
    }
}

TEST_CASE("oracle evenness in x1 and biharmonic sanity") {
    Rng rng(23);
    for (const auto& kern : all_builtins()) {
        auto pt = random_point(rng, kern.dimension);
        auto plus = oracle_derivatives(kern, pt, 6).to_doubles();
        auto neg = pt;
        neg[0] = -neg[0];
        auto minus = oracle_derivatives(kern, neg, 6).to_doubles();
        for (int m = 0; m <= 6; ++m) {
            cd want = (m % 2 == 0 ? 1.0 : -1.0) * plus[m];
            CHECK(rel_err(minus[m], want) <= 1e-12);
        }
    }

    auto bi = make_kernel("biharmonic2d");
    std::vector<double> pt{1.0, 2.0};
    auto vals = oracle_derivatives(bi, pt, 8).to_doubles();
    for (const auto& v : vals) CHECK(std::isfinite(std::abs(v)));
    // odd orders vanish as x1 -> 0
    std::vector<double> near{1e-9, 2.0};
    auto nv = oracle_derivatives(bi, near, 5).to_doubles();
    CHECK(std::abs(nv[3]) <= 1e-6 * std::abs(nv[4]));
    CHECK(std::abs(nv[5]) <= 1e-6 * std::abs(nv[4]));
}

TEST_CASE("base derivatives match the oracle for every builtin (20 points, m <= 3)") {
    Rng rng(31);
    for (const auto& kern : all_builtins()) {
        for (int rep = 0; rep < 20; ++rep) {
            auto pt = random_point(rng, kern.dimension);
            auto base = base_derivatives(kern, pt, 3);
            auto o = oracle_derivatives(kern, pt, 3).to_doubles();
            for (int m = 0; m <= 3; ++m) {
                double scale = std::max({std::abs(o[m]), std::abs(o[0])});
                CHECK(std::abs(base[m] - o[m]) / scale <= 1e-12);
            }
        }
    }
}

TEST_CASE("helmholtz2d with k=2: base vs oracle at (1,1)") {
    auto k = make_kernel("helmholtz2d", 2.0);
    std::vector<double> x{1.0, 1.0};
    auto base = base_derivatives(k, x, 2);
    auto o = oracle_derivatives(k, x, 2).to_doubles();
    for (int m = 0; m <= 2; ++m) CHECK(rel_err(base[m], o[m]) <= 1e-12);
}

TEST_CASE("radial PDE residual ties the kernel table to its operator") {
    // On-axis points make x1-derivatives radial; residual of the radial form
    // of each kernel's PDE, computed from oracle values.
    for (const auto& kern : all_builtins()) {
        int d = kern.dimension;
        double a = d - 1.0;
        for (double r : {0.7, 1.3, 2.6}) {
            std::vector<double> pt(d, 0.0);
            pt[0] = r;
            auto g = oracle_derivatives(kern, pt, 4).to_doubles();
            cd resid, scale_terms[5];
            int nterms = 0;
            if (kern.pde.order == 2) {
                cd c0(0.0, 0.0); // zero-order PDE coefficient
                if (kern.id == KernelId::Helmholtz2D || kern.id == KernelId::Helmholtz3D)
                    c0 = kern.k * kern.k;
                if (kern.id == KernelId::Yukawa2D || kern.id == KernelId::Yukawa3D)
                    c0 = -kern.k * kern.k;
                scale_terms[0] = g[2];
                scale_terms[1] = a / r * g[1];
                scale_terms[2] = c0 * g[0];
                nterms = 3;
            } else {
                // bilaplacian, radial form: g'''' + 2a g'''/r + (a^2-2a) g''/r^2
                // + (2a-a^2) g'/r^3
                scale_terms[0] = g[4];
                scale_terms[1] = 2 * a / r * g[3];
                scale_terms[2] = (a * a - 2 * a) / (r * r) * g[2];
                scale_terms[3] = (2 * a - a * a) / (r * r * r) * g[1];
                nterms = 4;
            }
            resid = cd(0.0, 0.0);
            double scale = 0.0;
            for (int t = 0; t < nterms; ++t) {
                resid += scale_terms[t];
                scale = std::max(scale, std::abs(scale_terms[t]));
            }
            // biharmonic3d: every term is identically zero; what remains is
            // rounding dust at the working precision
            if (scale <= 1e-30) continue;
            CHECK(std::abs(resid) / scale <= 1e-8);
        }
    }
}

TEST_CASE("derivative tables agree with the oracle in double precision") {
    Rng rng(41);
    for (const auto& kern : all_builtins()) {
        DerivTable table(kern, 8);
        for (int rep = 0; rep < 5; ++rep) {
            auto pt = random_point(rng, kern.dimension, -2.0, 2.0, 0.5);
            if (std::abs(pt[0]) < 0.3 * xbar_of(pt)) continue; // keep conditioning mild here
            auto o = oracle_derivatives(kern, pt, 8).to_doubles();
            auto t = table.eval_all(pt, 8);
            for (int m = 0; m <= 8; ++m) {
                double scale = std::max(std::abs(o[m]), 1e-300);
                CHECK(std::abs(t[m] - o[m]) / scale <= 1e-9);
            }
        }
    }
    CHECK_THROWS_AS(oracle_derivatives(make_custom_kernel(make_kernel("laplace2d").pde, {}),
                                       std::vector<double>{1.0, 1.0}, 2),
                    CapabilityError);
}
