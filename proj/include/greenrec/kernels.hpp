#ifndef GREENREC_KERNELS_HPP
#define GREENREC_KERNELS_HPP

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "greenrec/flops.hpp"
#include "greenrec/pde_spec.hpp"

namespace greenrec {

enum class KernelId {
    Laplace2D,
    Laplace3D,
    Helmholtz2D,
    Helmholtz3D,
    Yukawa2D,
    Yukawa3D,
    Biharmonic2D,
    Biharmonic3D,
    Custom,
};

// A registered radially symmetric kernel: its PDE, parameter, and the depth
// of closed-form seeding available (base_order = 3 for every builtin, which
// covers the ODE orders that occur: the order-4 biharmonic ODEs start their
// recurrence at n = 0 from seeds 0..3).
struct KernelSpec {
    KernelId id = KernelId::Custom;
    std::string name;
    int dimension = 0;
    std::complex<double> k{0.0, 0.0};
    bool has_parameter = false;
    PdeSpec pde;
    int base_order = 3;

    // custom kernels: numeric seed callback (point, m) -> d^0..d^m, and an
    // optional radial evaluator; they forfeit oracle-based checks
    std::function<std::vector<std::complex<double>>(std::span<const double>, int)> custom_base;
};

std::vector<std::string> builtin_kernel_names();
bool kernel_needs_parameter(const std::string& name);

// Registry access. Throws CapabilityError for unknown ids, DomainError when a
// required parameter is missing/invalid for the kernel family.
KernelSpec make_kernel(const std::string& name, std::complex<double> k = {0.0, 0.0});

KernelSpec make_custom_kernel(
    PdeSpec pde,
    std::function<std::vector<std::complex<double>>(std::span<const double>, int)> base);

// G at radius r (r > 0).
std::complex<double> eval_kernel(const KernelSpec& kernel, double r);

// Hand-coded closed-form d^0..d^m G / dx1^m at the point x, double precision.
// m must not exceed base_order.
std::vector<std::complex<double>> base_derivatives(const KernelSpec& kernel, std::span<const double> x,
                                                   int m, FlopCounter* fc = nullptr);

double radius_of(std::span<const double> x);
double xbar_of(std::span<const double> x); // sqrt(x2^2 + ... + xd^2)

} // namespace greenrec

#endif
