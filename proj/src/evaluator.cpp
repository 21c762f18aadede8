#include "greenrec/evaluator.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "greenrec/errors.hpp"
#include "greenrec/pde_to_ode.hpp"

namespace greenrec {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846264338327950288;

double ulp_away_from_zero(double v) {
    if (v == 0.0) return std::numeric_limits<double>::denorm_min();
    return std::nextafter(v, v > 0 ? std::numeric_limits<double>::infinity()
                                   : -std::numeric_limits<double>::infinity());
}

} // namespace

Branch classify_region(std::span<const double> x, double xi) {
    double r = radius_of(x);
    if (!(r > 0.0)) throw DomainError("cannot classify the origin");
    double xb = xbar_of(x);
    if (xb == 0.0) return Branch::Large;
    return std::abs(x[0]) / xb >= 1.0 / xi ? Branch::Large : Branch::Small;
}

struct CompiledRecurrence::Bound {
    // dense coefficient-of-n^e tables per shift, ascending e
    std::vector<std::vector<cd>> horner;
};

CompiledRecurrence::CompiledRecurrence(const std::map<int, Poly>& coeffs, int dim,
                                       std::complex<double> k)
    : dim_(dim), k_(k), max_var_pow_(dim + 3, 0) {
    const int var_n = dim + 1;
    for (const auto& [s, p] : coeffs) {
        if (p.contains_var(dim)) throw InternalError("recurrence coefficient mentions r");
        ShiftCoef sc;
        sc.shift = s;
        int deg_n = std::max(p.degree_in(var_n), 0);
        sc.by_n.resize(deg_n + 1);
        for (int e = 0; e <= deg_n; ++e) sc.by_n[e].n_pow = e;
        for (const auto& [mono, c] : p.terms()) {
            std::vector<std::pair<int, int>> factors;
            for (int v = 0; v < dim + 3; ++v) {
                if (v == var_n || mono[v] == 0) continue;
                factors.emplace_back(v, mono[v]);
                max_var_pow_[v] = std::max(max_var_pow_[v], mono[v]);
            }
            sc.by_n[mono[var_n]].monos.emplace_back(c.to_complex(), std::move(factors));
        }
        shifts_.push_back(std::move(sc));
        shift_values_.push_back(s);
    }
}

std::shared_ptr<const CompiledRecurrence::Bound> CompiledRecurrence::bind(std::span<const double> x,
                                                                          FlopCounter* fc) const {
    auto bound = std::make_shared<Bound>();
    std::vector<std::vector<cd>> pows(dim_ + 3);
    for (int v = 0; v < dim_ + 3; ++v) {
        int mp = max_var_pow_[v];
        if (mp == 0) continue;
        cd base;
        if (v < dim_)
            base = cd(x[v], 0.0);
        else if (v == dim_ + 2)
            base = k_;
        else
            throw InternalError("unexpected bind variable");
        pows[v].resize(mp + 1);
        pows[v][0] = cd(1.0, 0.0);
        for (int e = 1; e <= mp; ++e) pows[v][e] = pows[v][e - 1] * base;
        if (fc) fc->mul(mp);
    }
    bound->horner.resize(shifts_.size());
    for (std::size_t i = 0; i < shifts_.size(); ++i) {
        const auto& sc = shifts_[i];
        auto& dense = bound->horner[i];
        dense.assign(sc.by_n.size(), cd(0.0, 0.0));
        for (const auto& nt : sc.by_n) {
            cd acc(0.0, 0.0);
            for (const auto& [coeff, factors] : nt.monos) {
                cd t = coeff;
                for (const auto& [v, e] : factors) t *= pows[v][e];
                acc += t;
                if (fc) {
                    fc->mul(factors.size());
                    fc->add(1);
                }
            }
            dense[nt.n_pow] = acc;
        }
    }
    return bound;
}

void CompiledRecurrence::eval_row(const Bound& bound, long long n, std::span<cd> out,
                                  FlopCounter* fc) const {
    double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < shifts_.size(); ++i) {
        const auto& dense = bound.horner[i];
        cd acc = dense.back();
        for (std::size_t e = dense.size() - 1; e-- > 0;) acc = acc * nd + dense[e];
        out[i] = acc;
        if (fc) {
            fc->mul(dense.size() - 1);
            fc->add(dense.size() - 1);
        }
    }
}

namespace {

struct ArtifactsCache {
    std::mutex mutex;
    std::map<std::string, std::unique_ptr<KernelArtifacts>> entries;
};

ArtifactsCache& artifacts_cache() {
    static ArtifactsCache cache;
    return cache;
}

} // namespace

KernelArtifacts::KernelArtifacts(const KernelSpec& kernel) {
    ode_ = pde_to_ode(kernel.pde);
    large_ = ode_to_large_recurrence(ode_);
    small_ = specialize_small_recurrence(large_);
}

const KernelArtifacts& KernelArtifacts::get(const KernelSpec& kernel) {
    auto& cache = artifacts_cache();
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.entries.find(kernel.name);
    if (it == cache.entries.end()) {
        it = cache.entries
                 .emplace(kernel.name, std::unique_ptr<KernelArtifacts>(new KernelArtifacts(kernel)))
                 .first;
    }
    return *it->second;
}

DerivSeq eval_large(const Recurrence& rec, const KernelSpec& kernel, std::span<const double> x, int P,
                    FlopCounter* fc) {
    DerivSeq seq;
    seq.point.assign(x.begin(), x.end());
    seq.branch = Branch::Large;
    seq.taylor_remainders.assign(P + 1, 0.0);

    const int a = rec.source_ode_order;
    const int s_max = rec.max_shift();
    int seed_top = std::min({a, kernel.base_order, P});
    auto seeds = base_derivatives(kernel, x, seed_top, fc);
    seq.values = seeds;
    seq.values.resize(P + 1, cd(0.0, 0.0));
    if (P <= seed_top) return seq;
    int m_start = std::max(s_max, seed_top + 1);
    if (m_start > seed_top + 1)
        throw CapabilityError("closed-form seeds do not reach the first recurrence target");

    CompiledRecurrence compiled(rec.coeffs, kernel.dimension, kernel.k);
    auto bound = compiled.bind(x, fc);
    const auto& shifts = compiled.shift_values();
    std::vector<cd> row(shifts.size());
    for (int m = m_start; m <= P; ++m) {
        long long n = m - s_max;
        compiled.eval_row(*bound, n, row, fc);
        cd top(0.0, 0.0), acc(0.0, 0.0);
        double bmax = 0.0, bmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < shifts.size(); ++i) {
            int s = shifts[i];
            if (n + s < 0) continue; // coefficient vanishes identically there
            if (s == s_max) {
                top = row[i];
                continue;
            }
            cd b = row[i] * seq.values[n + s];
            acc += b;
            if (fc) {
                fc->mul(1);
                fc->add(1);
            }
            double ab = std::abs(b);
            if (ab > 0.0) {
                bmax = std::max(bmax, ab);
                bmin = std::min(bmin, ab);
            }
        }
        if (std::abs(top) < 1e-300)
            throw SingularStepError("leading coefficient vanished", static_cast<int>(n));
        seq.values[m] = -acc / top;
        if (fc) fc->mul(1);
        seq.step_ratios.push_back(bmin < std::numeric_limits<double>::infinity() ? bmax / bmin : 0.0);
    }
    return seq;
}

std::vector<cd> small_branch_seeds(const KernelSpec& kernel, std::span<const double> x, int max_k,
                                   FlopCounter* fc) {
    std::vector<double> plane(x.begin(), x.end());
    plane[0] = 0.0;
    double xb = xbar_of(plane);
    if (!(xb > 0.0)) throw DomainError("small-branch seeds need xbar > 0");
    auto base = base_derivatives(kernel, plane, std::min(2, kernel.base_order), fc);
    std::vector<cd> seeds{base.at(0)};
    if (max_k >= 2) seeds.push_back(base.at(2));
    if (max_k >= 4) {
        double xb2 = xb * xb;
        if (kernel.id == KernelId::Biharmonic2D) {
            seeds.emplace_back(3.0 / (4 * kPi * xb2), 0.0);
            if (max_k >= 6) seeds.emplace_back(-15.0 / (2 * kPi * xb2 * xb2), 0.0);
        } else if (kernel.id == KernelId::Biharmonic3D) {
            seeds.emplace_back(3.0 / (8 * kPi * xb2 * xb), 0.0);
            if (max_k >= 6) seeds.emplace_back(-45.0 / (8 * kPi * xb2 * xb2 * xb), 0.0);
        } else {
            throw CapabilityError("no closed-form seeds beyond order 2 for " + kernel.name);
        }
        if (fc) fc->mul(6);
    }
    return seeds;
}

DerivSeq eval_small(const SmallRecurrence& small, const KernelSpec& kernel, std::span<const double> x,
                    int P, int p_small, FlopCounter* fc) {
    DerivSeq seq;
    seq.point.assign(x.begin(), x.end());
    seq.branch = Branch::Small;

    const int s_max = small.max_shift();
    // +2 keeps one spare even order for the remainder diagnostics
    int v_top = P + p_small + 2;
    if (v_top % 2 != 0) v_top += 1;

    int seed_top = (kernel.id == KernelId::Biharmonic2D || kernel.id == KernelId::Biharmonic3D) ? 6 : 2;
    seed_top = std::min(seed_top, v_top);
    auto seeds = small_branch_seeds(kernel, x, seed_top, fc);
    std::vector<cd> v(v_top + 1, cd(0.0, 0.0)); // odd entries stay exact zeros
    for (std::size_t j = 0; j < seeds.size(); ++j) v[2 * j] = seeds[j];

    std::vector<double> plane(x.begin(), x.end());
    plane[0] = 0.0;
    CompiledRecurrence compiled(small.coeffs, kernel.dimension, kernel.k);
    auto bound = compiled.bind(plane, fc);
    const auto& shifts = compiled.shift_values();
    std::vector<cd> row(shifts.size());
    for (int m = seed_top + 2; m <= v_top; m += 2) {
        long long n = m - s_max;
        if (n < 0) throw CapabilityError("small recurrence cannot reach order " + std::to_string(m));
        compiled.eval_row(*bound, n, row, fc);
        cd top(0.0, 0.0), acc(0.0, 0.0);
        double bmax = 0.0, bmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < shifts.size(); ++i) {
            int s = shifts[i];
            long long idx = n + s;
            if (idx < 0) continue;
            if (s == s_max) {
                top = row[i];
                continue;
            }
            if (idx % 2 != 0) continue; // odd on-hyperplane values are exact zeros
            cd b = row[i] * v[idx];
            acc += b;
            if (fc) {
                fc->mul(1);
                fc->add(1);
            }
            double ab = std::abs(b);
            if (ab > 0.0) {
                bmax = std::max(bmax, ab);
                bmin = std::min(bmin, ab);
            }
        }
        if (std::abs(top) < 1e-300)
            throw SingularStepError("small-recurrence leading coefficient vanished",
                                    static_cast<int>(n));
        v[m] = -acc / top;
        if (fc) fc->mul(1);
        seq.step_ratios.push_back(bmin < std::numeric_limits<double>::infinity() ? bmax / bmin : 0.0);
    }

    // Taylor reconstruction around x1 = 0; i and k coupled through parity
    double x1 = x[0];
    int pow_top = p_small + 2;
    std::vector<double> x1p(pow_top + 1, 1.0);
    for (int j = 1; j <= pow_top; ++j) x1p[j] = x1p[j - 1] * x1;
    if (fc) fc->mul(pow_top);
    std::vector<double> inv_fact(pow_top + 1, 1.0);
    for (int j = 1; j <= pow_top; ++j) inv_fact[j] = inv_fact[j - 1] / j;

    seq.values.assign(P + 1, cd(0.0, 0.0));
    seq.taylor_remainders.assign(P + 1, 0.0);
    for (int i = 0; i <= P; ++i) {
        cd acc(0.0, 0.0);
        for (int kk = (i % 2 == 0 ? 0 : 1); kk <= p_small; kk += 2) {
            acc += v[i + kk] * (x1p[kk] * inv_fact[kk]);
            if (fc) {
                fc->mul(2);
                fc->add(1);
            }
        }
        seq.values[i] = acc;
        int k_star = (i + p_small) % 2 == 0 ? p_small + 2 : p_small + 1;
        seq.taylor_remainders[i] = std::abs(v[i + k_star]) * std::abs(x1p[k_star]) * inv_fact[k_star];
    }
    return seq;
}

DerivSeq eval_hybrid(const KernelSpec& kernel, std::span<const double> x, const HybridConfig& cfg,
                     FlopCounter* fc) {
    if (!(cfg.xi > 1.0)) throw ConfigError("region threshold xi must exceed 1");
    if (cfg.p_small < 0 || cfg.P < 0) throw ConfigError("orders must be non-negative");
    const KernelArtifacts& art = KernelArtifacts::get(kernel);
    Branch branch = classify_region(x, cfg.xi);
    auto run = [&](std::span<const double> pt) {
        return branch == Branch::Large ? eval_large(art.large(), kernel, pt, cfg.P, fc)
                                       : eval_small(art.small(), kernel, pt, cfg.P, cfg.p_small, fc);
    };
    try {
        return run(x);
    } catch (const SingularStepError&) {
        std::vector<double> nudged(x.begin(), x.end());
        nudged[0] = ulp_away_from_zero(nudged[0]);
        DerivSeq seq = run(nudged);
        seq.singular_retry = true;
        seq.point.assign(x.begin(), x.end());
        return seq;
    }
}

double single_step_error_estimate(const Recurrence& rec, const KernelSpec& kernel,
                                  std::span<const cd> values, int n, std::span<const double> x) {
    const int s_max = rec.max_shift();
    long long np = n - s_max;
    if (np < 0) throw DomainError("order below the recurrence reach");
    CompiledRecurrence compiled(rec.coeffs, kernel.dimension, kernel.k);
    auto bound = compiled.bind(x);
    const auto& shifts = compiled.shift_values();
    std::vector<cd> row(shifts.size());
    compiled.eval_row(*bound, np, row);
    double bmax = 0.0, bmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        int s = shifts[i];
        long long idx = np + s;
        if (s == s_max || idx < 0 || idx >= static_cast<long long>(values.size())) continue;
        double ab = std::abs(row[i] * values[idx]);
        if (ab > 0.0) {
            bmax = std::max(bmax, ab);
            bmin = std::min(bmin, ab);
        }
    }
    if (!(bmin < std::numeric_limits<double>::infinity())) return 0.0;
    return bmax / bmin;
}

double combined_error_bound(const HybridConfig& cfg, int n, const ErrorConstants& constants) {
    double fact = 1.0;
    for (int j = 2; j <= cfg.p_small + 1; ++j) fact *= j;
    int exponent = (n % 2 != 0) ? cfg.p_small + 1 : cfg.p_small + 2;
    double small_term = constants.M / (constants.m * fact) * std::pow(cfg.xi, -exponent);
    double large_term = constants.C * cfg.xi * cfg.xi;
    return std::max(small_term, large_term);
}

} // namespace greenrec
