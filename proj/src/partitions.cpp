#include "greenrec/partitions.hpp"

#include <algorithm>

#include "greenrec/errors.hpp"

namespace greenrec {

namespace {

// All nonzero multi-indices componentwise <= bound, in increasing grlex order.
std::vector<MultiIndex> parts_below(const MultiIndex& bound) {
    std::vector<MultiIndex> out;
    MultiIndex cur(bound.dim());
    for (;;) {
        // advance odometer
        int i = 0;
        while (i < bound.dim()) {
            if (cur[i] < bound[i]) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
            ++i;
        }
        if (i == bound.dim()) break;
        out.push_back(cur);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void recurse(const std::vector<MultiIndex>& parts, std::size_t max_part, MultiIndex remaining, int k,
             VectorPartition& acc, std::vector<VectorPartition>& out) {
    int rem_order = remaining.order();
    if (rem_order == 0) {
        if (k == 0) out.push_back(acc);
        return;
    }
    if (k <= 0 || rem_order < k) return; // each part has order >= 1
    for (std::size_t pi = max_part; pi-- > 0;) {
        const MultiIndex& part = parts[pi];
        if (!part.leq(remaining)) continue;
        acc.multiplicity[part] += 1;
        recurse(parts, pi + 1, remaining - part, k - 1, acc, out);
        if (--acc.multiplicity[part] == 0) acc.multiplicity.erase(part);
    }
}

} // namespace

std::vector<VectorPartition> enumerate_vector_partitions(const MultiIndex& alpha, int k) {
    if (alpha.order() < 1) throw DomainError("vector partitions need |alpha| >= 1");
    if (k < 1) throw DomainError("partition cardinality must be positive");
    std::vector<VectorPartition> out;
    if (k > alpha.order()) return out;
    auto parts = parts_below(alpha);
    VectorPartition acc;
    recurse(parts, parts.size(), alpha, k, acc, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VectorPartition> enumerate_all_vector_partitions(const MultiIndex& alpha) {
    std::vector<VectorPartition> out;
    for (int k = 1; k <= alpha.order(); ++k) {
        auto v = enumerate_vector_partitions(alpha, k);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

} // namespace greenrec
