#include "greenrec/qbx.hpp"

#include <cmath>
#include <thread>

#include "greenrec/errors.hpp"

namespace greenrec {

namespace {

using cd = std::complex<double>;

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

void parallel_for(int count, int jobs, const std::function<void(int, int)>& body) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        body(0, count);
        return;
    }
    std::vector<std::thread> workers;
    int chunk = (count + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
        int lo = w * chunk;
        int hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back(body, lo, hi);
    }
    for (auto& t : workers) t.join();
}

} // namespace

CurveDiscretization discretize_ellipse(double a, double b, int N) {
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("ellipse semi-axes must be positive");
    if (N < 8) throw ConfigError("need at least 8 nodes");
    CurveDiscretization curve;
    curve.ts.resize(N);
    curve.nodes.resize(N);
    curve.normals.resize(N);
    curve.speeds.resize(N);
    curve.weights.resize(N);
    double h = kTwoPi / N;
    for (int j = 0; j < N; ++j) {
        double t = h * j;
        curve.ts[j] = t;
        double ct = std::cos(t), st = std::sin(t);
        curve.nodes[j] = {a * ct, b * st};
        double speed = std::sqrt(a * a * st * st + b * b * ct * ct);
        curve.speeds[j] = speed;
        // outward normal of (a cos t, b sin t)
        curve.normals[j] = {b * ct / speed, a * st / speed};
        curve.weights[j] = h * speed;
    }
    return curve;
}

RotatedPair rotate_frame(const std::array<double, 2>& target, const std::array<double, 2>& center,
                         const std::array<double, 2>& normal, const std::array<double, 2>& source) {
    double norm = std::sqrt(normal[0] * normal[0] + normal[1] * normal[1]);
    if (std::abs(norm - 1.0) > 1e-12) throw DomainError("rotation frame needs a unit normal");
    auto rot = [&](const std::array<double, 2>& p) -> std::array<double, 2> {
        double dx = p[0] - center[0];
        double dy = p[1] - center[1];
        return {center[0] + normal[0] * dx + normal[1] * dy,
                center[1] - normal[1] * dx + normal[0] * dy};
    };
    return {rot(target), rot(source)};
}

DerivBackend::DerivBackend(const KernelSpec& kernel, QbxBackend flavor, int max_order, double xi,
                           int p_small)
    : kernel_(kernel), flavor_(flavor) {
    cfg_.xi = xi;
    cfg_.p_small = p_small;
    cfg_.P = max_order;
    if (flavor == QbxBackend::Direct) {
        table_ = std::make_shared<DerivTable>(kernel, max_order);
    } else {
        KernelArtifacts::get(kernel); // derive once up front
    }
}

std::vector<cd> DerivBackend::derivatives(std::span<const double> point, int P,
                                          FlopCounter* fc) const {
    if (flavor_ == QbxBackend::Direct) return table_->eval_all(point, P, fc);
    HybridConfig cfg = cfg_;
    cfg.P = P;
    return eval_hybrid(kernel_, point, cfg, fc).values;
}

cd line_taylor_contribution(const KernelSpec& kernel, const DerivBackend& backend,
                            const std::array<double, 2>& target, const std::array<double, 2>& source,
                            double r, int p_qbx, FlopCounter& counter) {
    if (!(r > 0.0)) throw ConfigError("expansion radius must be positive");
    if (p_qbx < 0) throw ConfigError("expansion order must be non-negative");
    (void)kernel;
    std::array<double, 2> eval_pt{target[0] - r - source[0], target[1] - source[1]};
    if (eval_pt[0] == 0.0 && eval_pt[1] == 0.0)
        throw GeometryError("expansion center coincides with a source");
    auto derivs = backend.derivatives(eval_pt, p_qbx, &counter);
    cd acc(0.0, 0.0);
    double rpow_over_fact = 1.0;
    for (int i = 0; i <= p_qbx; ++i) {
        if (i > 0) {
            rpow_over_fact *= r / i;
            counter.mul(1);
        }
        acc += derivs[i] * rpow_over_fact;
        counter.mul(1);
        counter.add(1);
    }
    return acc;
}

std::vector<cd> single_layer_qbx(const CurveDiscretization& curve, std::span<const double> density,
                                 std::span<const int> target_indices, const KernelSpec& kernel,
                                 const QbxConfig& cfg, FlopCounter* total) {
    const int N = curve.size();
    if (static_cast<int>(density.size()) != N) throw ConfigError("density size does not match curve");
    if (cfg.p_qbx < 0) throw ConfigError("expansion order must be non-negative");
    double h_param = kTwoPi / N;
    DerivBackend backend(kernel, cfg.backend, cfg.p_qbx, cfg.xi, cfg.p_small);

    const int T = static_cast<int>(target_indices.size());
    std::vector<cd> out(T, cd(0.0, 0.0));
    std::vector<FlopCounter> counters(T);
    parallel_for(T, cfg.jobs, [&](int lo, int hi) {
        for (int ti = lo; ti < hi; ++ti) {
            int j = target_indices[ti];
            const auto& x = curve.nodes[j];
            const auto& nu = curve.normals[j];
            double r = cfg.radius_factor * curve.speeds[j] * h_param;
            if (r < 1e-12) throw ConfigError("expansion radius underflow");
            std::array<double, 2> center{x[0] - r * nu[0], x[1] - r * nu[1]};
            FlopCounter& fc = counters[ti];
            cd acc(0.0, 0.0);
            for (int s = 0; s < N; ++s) {
                RotatedPair pair = rotate_frame(x, center, nu, curve.nodes[s]);
                fc.mul(8);
                fc.add(8);
                cd contrib =
                    line_taylor_contribution(kernel, backend, pair.target, pair.source, r, cfg.p_qbx, fc);
                acc += contrib * (curve.weights[s] * density[s]);
                fc.mul(2);
                fc.add(1);
            }
            out[ti] = acc;
        }
    });
    if (total)
        for (const auto& fc : counters) *total += fc; // deterministic merge order
    return out;
}

std::vector<cd> reference_potential(const EllipseProblem& problem, const KernelSpec& kernel,
                                    int p_qbx, double radius_factor, int oversample, int jobs) {
    if (oversample < 4) throw ConfigError("reference oversampling must be at least 4");
    auto run = [&](int over) {
        CurveDiscretization fine = discretize_ellipse(problem.a, problem.b, problem.N * over);
        std::vector<double> density(fine.size());
        for (int j = 0; j < fine.size(); ++j) density[j] = problem.density(fine.ts[j]);
        std::vector<int> targets(problem.N);
        for (int j = 0; j < problem.N; ++j) targets[j] = j * over;
        QbxConfig cfg;
        cfg.p_qbx = p_qbx + 4;
        cfg.radius_factor = radius_factor;
        cfg.backend = QbxBackend::Direct;
        cfg.jobs = jobs;
        return single_layer_qbx(fine, density, targets, kernel, cfg);
    };
    auto coarse = run(oversample);
    auto fine = run(2 * oversample);
    double scale = 0.0;
    for (const auto& v : fine) scale = std::max(scale, std::abs(v));
    for (std::size_t j = 0; j < fine.size(); ++j) {
        if (std::abs(coarse[j] - fine[j]) > 1e-10 * std::max(scale, 1e-30))
            throw ReferenceNotConverged("oversample doubling moved the reference by more than 1e-10");
    }
    return fine;
}

} // namespace greenrec
