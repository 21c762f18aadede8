#ifndef GREENREC_QBX_HPP
#define GREENREC_QBX_HPP

#include <array>
#include <functional>
#include <memory>

#include "greenrec/evaluator.hpp"
#include "greenrec/oracle.hpp"

namespace greenrec {

// Closed smooth curve sampled at uniform parameters with periodic-trapezoid
// weights (weights include the speed factor, so they sum to arc length).
struct CurveDiscretization {
    std::vector<double> ts;
    std::vector<std::array<double, 2>> nodes;
    std::vector<std::array<double, 2>> normals; // unit outward
    std::vector<double> speeds;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

CurveDiscretization discretize_ellipse(double a, double b, int N);

// Rigid rotation about `center` taking `normal` to the +x1 direction;
// returns the rotated target and source. Distances to the center and between
// the pair are preserved.
struct RotatedPair {
    std::array<double, 2> target;
    std::array<double, 2> source;
};
RotatedPair rotate_frame(const std::array<double, 2>& target, const std::array<double, 2>& center,
                         const std::array<double, 2>& normal, const std::array<double, 2>& source);

enum class QbxBackend { Recurrence, Direct };

struct QbxConfig {
    int p_qbx = 5;
    double radius_factor = 2.5; // r = radius_factor * local node spacing
    QbxBackend backend = QbxBackend::Recurrence;
    double xi = 50.0;
    int p_small = 8;
    int jobs = 1;
};

// Kernel-derivative source for line-Taylor expansions. The recurrence flavor
// runs the hybrid evaluator and counts its actual arithmetic; the direct
// flavor evaluates per-order collapsed closed-form tables and charges the
// calibrated naive-formula cost model (docs/cli.md).
class DerivBackend {
  public:
    DerivBackend(const KernelSpec& kernel, QbxBackend flavor, int max_order, double xi = 50.0,
                 int p_small = 8);

    std::vector<std::complex<double>> derivatives(std::span<const double> point, int P,
                                                  FlopCounter* fc) const;
    QbxBackend flavor() const { return flavor_; }

  private:
    KernelSpec kernel_;
    QbxBackend flavor_;
    HybridConfig cfg_;
    std::shared_ptr<const DerivTable> table_;
};

// One source-target pair, already rotated so the center-target direction is
// +x1. target' - (r, 0) is the expansion center.
std::complex<double> line_taylor_contribution(const KernelSpec& kernel, const DerivBackend& backend,
                                              const std::array<double, 2>& target,
                                              const std::array<double, 2>& source, double r,
                                              int p_qbx, FlopCounter& counter);

// Single-layer potential at the given on-curve node indices via QBX with
// interior centers x - r nu. Deterministic for any jobs split.
std::vector<std::complex<double>> single_layer_qbx(const CurveDiscretization& curve,
                                                   std::span<const double> density,
                                                   std::span<const int> target_indices,
                                                   const KernelSpec& kernel, const QbxConfig& cfg,
                                                   FlopCounter* total = nullptr);

// Elliptic model problem: boundary (a cos t, b sin t), analytic density.
struct EllipseProblem {
    double a = 2.0;
    double b = 1.0;
    int N = 400;
    std::function<double(double)> density; // of the parameter t
};

// Self-convergent reference: direct backend, order p_qbx + 4, mesh refined by
// `oversample`; certified by agreement with the 2x-oversampled run to 1e-10
// relative (ReferenceNotConverged otherwise). Values at the problem's nodes.
std::vector<std::complex<double>> reference_potential(const EllipseProblem& problem,
                                                      const KernelSpec& kernel, int p_qbx,
                                                      double radius_factor, int oversample,
                                                      int jobs = 1);

} // namespace greenrec

#endif
