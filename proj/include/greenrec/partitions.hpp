#ifndef GREENREC_PARTITIONS_HPP
#define GREENREC_PARTITIONS_HPP

#include <map>
#include <vector>

#include "greenrec/multi_index.hpp"

namespace greenrec {

// Multiset of nonzero multi-indices summing to a target index, stored as
// part -> multiplicity.
struct VectorPartition {
    std::map<MultiIndex, int> multiplicity;

    int cardinality() const {
        int c = 0;
        for (const auto& [part, mult] : multiplicity) c += mult;
        return c;
    }

    MultiIndex sum() const {
        if (multiplicity.empty()) return MultiIndex();
        MultiIndex s(multiplicity.begin()->first.dim());
        for (const auto& [part, mult] : multiplicity)
            for (int j = 0; j < mult; ++j) s = s + part;
        return s;
    }

    // pi! = product of multiplicities factorial-free, per the convention used
    // in the vector-partition form of the higher chain rule: product over
    // parts of mult! * (part!)^mult is what callers typically need, so both
    // pieces are exposed.
    BigInt multiplicity_factorial() const {
        BigInt f = 1;
        for (const auto& [part, mult] : multiplicity)
            for (int j = 2; j <= mult; ++j) f *= j;
        return f;
    }

    BigInt parts_factorial_power() const {
        BigInt f = 1;
        for (const auto& [part, mult] : multiplicity) {
            BigInt pf = part.factorial();
            for (int j = 0; j < mult; ++j) f *= pf;
        }
        return f;
    }

    friend bool operator<(const VectorPartition& a, const VectorPartition& b) {
        return a.multiplicity < b.multiplicity;
    }
    friend bool operator==(const VectorPartition& a, const VectorPartition& b) {
        return a.multiplicity == b.multiplicity;
    }
};

// All partitions of alpha into exactly k nonzero parts (with multiplicity).
// k > |alpha| yields the empty set; |alpha| must be >= 1.
std::vector<VectorPartition> enumerate_vector_partitions(const MultiIndex& alpha, int k);

// Union over all cardinalities.
std::vector<VectorPartition> enumerate_all_vector_partitions(const MultiIndex& alpha);

} // namespace greenrec

#endif
