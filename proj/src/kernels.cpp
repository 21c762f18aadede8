#include "greenrec/kernels.hpp"

#include <cmath>

#include "greenrec/bessel.hpp"
#include "greenrec/errors.hpp"

namespace greenrec {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
using cd = std::complex<double>;

PdeSpec laplacian_pde(int dim) {
    PdeSpec pde;
    pde.dimension = dim;
    pde.order = 2;
    for (int i = 0; i < dim; ++i) {
        MultiIndex q(dim);
        q[i] = 2;
        pde.coefficients.emplace(q, Poly::from_int(dim, 1));
    }
    return pde;
}

PdeSpec helmholtz_pde(int dim) {
    PdeSpec pde = laplacian_pde(dim);
    pde.coefficients.emplace(MultiIndex(dim), Poly::variable(dim, dim + 2, 2));
    return pde;
}

PdeSpec yukawa_pde(int dim) {
    PdeSpec pde = laplacian_pde(dim);
    pde.coefficients.emplace(MultiIndex(dim), Poly::variable(dim, dim + 2, 2).scaled(GaussRat(-1)));
    return pde;
}

PdeSpec bilaplacian_pde(int dim) {
    PdeSpec lap = laplacian_pde(dim);
    PdeSpec pde;
    pde.dimension = dim;
    pde.order = 4;
    for (const auto& [qa, pa] : lap.coefficients) {
        for (const auto& [qb, pb] : lap.coefficients) {
            MultiIndex q = qa + qb;
            Poly prod = pa * pb;
            auto it = pde.coefficients.find(q);
            if (it == pde.coefficients.end())
                pde.coefficients.emplace(q, prod);
            else
                it->second += prod;
        }
    }
    return pde;
}

double require_real_positive_k(const KernelSpec& kernel) {
    if (kernel.k.imag() != 0.0 || kernel.k.real() <= 0.0)
        throw DomainError(kernel.name + " requires a real positive parameter k");
    return kernel.k.real();
}

} // namespace

double radius_of(std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double xbar_of(std::span<const double> x) {
    double s = 0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

std::vector<std::string> builtin_kernel_names() {
    return {"laplace2d", "laplace3d", "helmholtz2d", "helmholtz3d",
            "yukawa2d",  "yukawa3d",  "biharmonic2d", "biharmonic3d"};
}

bool kernel_needs_parameter(const std::string& name) {
    return name == "helmholtz2d" || name == "helmholtz3d" || name == "yukawa2d" || name == "yukawa3d";
}

KernelSpec make_kernel(const std::string& name, std::complex<double> k) {
    KernelSpec s;
    s.name = name;
    s.k = k;
    if (name == "laplace2d") {
        s.id = KernelId::Laplace2D;
        s.dimension = 2;
        s.pde = laplacian_pde(2);
    } else if (name == "laplace3d") {
        s.id = KernelId::Laplace3D;
        s.dimension = 3;
        s.pde = laplacian_pde(3);
    } else if (name == "helmholtz2d") {
        s.id = KernelId::Helmholtz2D;
        s.dimension = 2;
        s.pde = helmholtz_pde(2);
        s.has_parameter = true;
    } else if (name == "helmholtz3d") {
        s.id = KernelId::Helmholtz3D;
        s.dimension = 3;
        s.pde = helmholtz_pde(3);
        s.has_parameter = true;
    } else if (name == "yukawa2d") {
        s.id = KernelId::Yukawa2D;
        s.dimension = 2;
        s.pde = yukawa_pde(2);
        s.has_parameter = true;
    } else if (name == "yukawa3d") {
        s.id = KernelId::Yukawa3D;
        s.dimension = 3;
        s.pde = yukawa_pde(3);
        s.has_parameter = true;
    } else if (name == "biharmonic2d") {
        s.id = KernelId::Biharmonic2D;
        s.dimension = 2;
        s.pde = bilaplacian_pde(2);
    } else if (name == "biharmonic3d") {
        s.id = KernelId::Biharmonic3D;
        s.dimension = 3;
        s.pde = bilaplacian_pde(3);
    } else {
        throw CapabilityError("unknown kernel id '" + name + "'");
    }
    if (s.has_parameter) {
        if (k == cd(0.0, 0.0)) throw DomainError(name + " requires the parameter k");
        if (s.id == KernelId::Helmholtz2D || s.id == KernelId::Yukawa2D || s.id == KernelId::Yukawa3D)
            require_real_positive_k(s);
    }
    return s;
}

KernelSpec make_custom_kernel(
    PdeSpec pde, std::function<std::vector<std::complex<double>>(std::span<const double>, int)> base) {
    pde.validate();
    KernelSpec s;
    s.id = KernelId::Custom;
    s.name = "custom";
    s.dimension = pde.dimension;
    s.pde = std::move(pde);
    s.custom_base = std::move(base);
    return s;
}

std::complex<double> eval_kernel(const KernelSpec& kernel, double r) {
    if (!(r > 0.0)) throw DomainError("kernel radius must be positive");
    switch (kernel.id) {
        case KernelId::Laplace2D:
            return {-std::log(r) / (2 * kPi), 0.0};
        case KernelId::Laplace3D:
            return {-1.0 / (4 * kPi * r), 0.0};
        case KernelId::Helmholtz2D: {
            double k = require_real_positive_k(kernel);
            auto b = bessel_j0y0j1y1(k * r);
            return cd(0.0, 0.25) * cd(b.j0, b.y0);
        }
        case KernelId::Helmholtz3D:
            return std::exp(cd(0.0, 1.0) * kernel.k * r) / (4 * kPi * r);
        case KernelId::Yukawa2D: {
            double k = require_real_positive_k(kernel);
            return {bessel_k0k1(k * r).k0 / (2 * kPi), 0.0};
        }
        case KernelId::Yukawa3D: {
            double k = require_real_positive_k(kernel);
            return {std::exp(-k * r) / (4 * kPi * r), 0.0};
        }
        case KernelId::Biharmonic2D:
            return {r * r * std::log(r) / (8 * kPi), 0.0};
        case KernelId::Biharmonic3D:
            return {-r / (8 * kPi), 0.0};
        case KernelId::Custom: {
            if (!kernel.custom_base) throw CapabilityError("custom kernel has no evaluator");
            std::vector<double> x(kernel.dimension, 0.0);
            x[0] = r;
            return kernel.custom_base(x, 0).at(0);
        }
    }
    throw InternalError("unhandled kernel id");
}

namespace {

// d^0..d^3 of exp(mu r) / (4 pi r) in x1; shared by the 3D exponential kernels
std::vector<cd> exp_over_r_derivs(cd mu, std::span<const double> x, int m, FlopCounter* fc) {
    double r = radius_of(x);
    double x1 = x[0];
    cd c{1.0 / (4 * kPi), 0.0};
    cd E = std::exp(mu * r);
    double r2 = r * r, r3 = r2 * r, r5 = r3 * r2, u = x1 / r;
    std::vector<cd> out;
    out.push_back(c * E / r);
    if (m >= 1) out.push_back(c * E * u * (mu * r - 1.0) / r2);
    cd P;
    if (m >= 2) {
        P = mu * mu * x1 * x1 / r3 + (mu * r - 1.0) * (r2 - 3 * x1 * x1) / r5;
        out.push_back(c * E * P);
    }
    if (m >= 3) {
        double r7 = r5 * r2;
        cd Pp = mu * mu * (2 * x1 / r3 - 3 * x1 * x1 * x1 / r5) + mu * u * (1.0 / r3 - 3 * x1 * x1 / r5) +
                (mu * r - 1.0) * (-9 * x1 / r5 + 15 * x1 * x1 * x1 / r7);
        out.push_back(c * E * (mu * u * P + Pp));
    }
    if (fc) {
        fc->special();
        fc->mul(14 + 9 * m);
        fc->add(2 + 4 * m);
    }
    return out;
}

// d^0..d^3 of cylinder-kernel families c * F0(kr) with F0' = s01 F1,
// F1' = s10 F0 - F1/z. Helmholtz 2D: F = H (s01 = -1, s10 = +1);
// Yukawa 2D: F = K (s01 = -1, s10 = -1).
std::vector<cd> cylinder_derivs(cd c, double s01, double s10, cd f0, cd f1, double k,
                                std::span<const double> x, int m, FlopCounter* fc) {
    double r = radius_of(x);
    double x1 = x[0];
    double u = x1 / r, r2 = r * r, r3 = r2 * r;
    std::vector<cd> out;
    out.push_back(c * f0);
    if (m >= 1) out.push_back(c * s01 * k * u * f1);
    double A = 0.0, B = 0.0;
    if (m >= 2) {
        // dF0/dx1 = s01 k u F1; dF1/dx1 = s10 k u F0 - (x1/r^2) F1
        A = s01 * s10 * k * k * u * u;
        B = s01 * k * (r2 - 2 * x1 * x1) / r3;
        out.push_back(c * (A * f0 + B * f1));
    }
    if (m >= 3) {
        double xb2 = r2 - x1 * x1;
        double Ap = s01 * s10 * k * k * 2 * x1 * xb2 / (r2 * r2);
        double Bp = s01 * k * x1 * (6 * x1 * x1 - 5 * r2) / (r3 * r2);
        out.push_back(c * ((Ap + s10 * k * u * B) * f0 + (Bp + s01 * k * u * A - x1 / r2 * B) * f1));
    }
    if (fc) {
        fc->mul(12 + 8 * m);
        fc->add(1 + 3 * m);
    }
    return out;
}

} // namespace

std::vector<cd> base_derivatives(const KernelSpec& kernel, std::span<const double> x, int m,
                                 FlopCounter* fc) {
    if (static_cast<int>(x.size()) != kernel.dimension)
        throw DomainError("point dimension does not match kernel");
    double r = radius_of(x);
    if (!(r > 0.0)) throw DomainError("base derivatives need |x| > 0");
    if (m < 0) throw DomainError("negative derivative order");
    if (kernel.id == KernelId::Custom) {
        if (!kernel.custom_base) throw CapabilityError("custom kernel has no seed callback");
        auto out = kernel.custom_base(x, m);
        if (static_cast<int>(out.size()) != m + 1)
            throw CapabilityError("custom seed callback returned wrong length");
        return out;
    }
    if (m > kernel.base_order)
        throw CapabilityError("requested derivative order exceeds base_order");

    double x1 = x[0];
    double r2 = r * r, r4 = r2 * r2;
    std::vector<cd> out;
    switch (kernel.id) {
        case KernelId::Laplace2D: {
            out.emplace_back(-std::log(r) / (2 * kPi), 0.0);
            if (m >= 1) out.emplace_back(-x1 / (2 * kPi * r2), 0.0);
            if (m >= 2) out.emplace_back((2 * x1 * x1 - r2) / (2 * kPi * r4), 0.0);
            if (m >= 3) out.emplace_back((6 * x1 * r2 - 8 * x1 * x1 * x1) / (2 * kPi * r4 * r2), 0.0);
            if (fc) {
                fc->special();
                fc->mul(8 + 3 * m);
                fc->add(1 + m);
            }
            return out;
        }
        case KernelId::Laplace3D: {
            double r3 = r2 * r, r5 = r3 * r2, r7 = r5 * r2;
            out.emplace_back(-1.0 / (4 * kPi * r), 0.0);
            if (m >= 1) out.emplace_back(x1 / (4 * kPi * r3), 0.0);
            if (m >= 2) out.emplace_back((r2 - 3 * x1 * x1) / (4 * kPi * r5), 0.0);
            if (m >= 3) out.emplace_back((15 * x1 * x1 * x1 - 9 * x1 * r2) / (4 * kPi * r7), 0.0);
            if (fc) {
                fc->mul(8 + 3 * m);
                fc->add(1 + m);
            }
            return out;
        }
        case KernelId::Helmholtz2D: {
            double k = require_real_positive_k(kernel);
            auto b = bessel_j0y0j1y1(k * r);
            if (fc) fc->special();
            return cylinder_derivs(cd(0.0, 0.25), -1.0, +1.0, cd(b.j0, b.y0), cd(b.j1, b.y1), k, x, m,
                                   fc);
        }
        case KernelId::Yukawa2D: {
            double k = require_real_positive_k(kernel);
            auto b = bessel_k0k1(k * r);
            if (fc) fc->special();
            return cylinder_derivs(cd(1.0 / (2 * kPi), 0.0), -1.0, -1.0, cd(b.k0, 0.0), cd(b.k1, 0.0),
                                   k, x, m, fc);
        }
        case KernelId::Helmholtz3D:
            return exp_over_r_derivs(cd(0.0, 1.0) * kernel.k, x, m, fc);
        case KernelId::Yukawa3D: {
            double k = require_real_positive_k(kernel);
            return exp_over_r_derivs(cd(-k, 0.0), x, m, fc);
        }
        case KernelId::Biharmonic2D: {
            double lg = std::log(r);
            out.emplace_back(r2 * lg / (8 * kPi), 0.0);
            if (m >= 1) out.emplace_back(x1 * (2 * lg + 1) / (8 * kPi), 0.0);
            if (m >= 2) out.emplace_back((2 * lg + 1 + 2 * x1 * x1 / r2) / (8 * kPi), 0.0);
            if (m >= 3) out.emplace_back((6 * x1 / r2 - 4 * x1 * x1 * x1 / r4) / (8 * kPi), 0.0);
            if (fc) {
                fc->special();
                fc->mul(8 + 3 * m);
                fc->add(1 + m);
            }
            return out;
        }
        case KernelId::Biharmonic3D: {
            double r3 = r2 * r, r5 = r3 * r2;
            out.emplace_back(-r / (8 * kPi), 0.0);
            if (m >= 1) out.emplace_back(-x1 / (8 * kPi * r), 0.0);
            if (m >= 2) out.emplace_back(-(r2 - x1 * x1) / (8 * kPi * r3), 0.0);
            if (m >= 3) out.emplace_back(3 * x1 * (r2 - x1 * x1) / (8 * kPi * r5), 0.0);
            if (fc) {
                fc->mul(8 + 3 * m);
                fc->add(1 + m);
            }
            return out;
        }
        case KernelId::Custom:
            break;
    }
    throw InternalError("unhandled kernel id");
}

} // namespace greenrec
