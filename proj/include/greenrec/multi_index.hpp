#ifndef GREENREC_MULTI_INDEX_HPP
#define GREENREC_MULTI_INDEX_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "greenrec/rational.hpp"

namespace greenrec {

// Exponent vector over the d spatial variables. Drives both mixed-partial
// bookkeeping and monomial exponents in x.
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(int dim) : e_(dim, 0) {}
    MultiIndex(std::initializer_list<int> v) : e_(v) { check(); }
    explicit MultiIndex(std::vector<int> v) : e_(std::move(v)) { check(); }

    int dim() const { return static_cast<int>(e_.size()); }
    int operator[](int i) const { return e_[i]; }
    int& operator[](int i) { return e_[i]; }

    // |alpha|
    int order() const {
        int s = 0;
        for (int v : e_) s += v;
        return s;
    }
    bool is_zero() const { return order() == 0; }

    // componentwise partial order
    bool leq(const MultiIndex& o) const {
        for (int i = 0; i < dim(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    // alpha!
    BigInt factorial() const {
        BigInt f = 1;
        for (int v : e_)
            for (int j = 2; j <= v; ++j) f *= j;
        return f;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        MultiIndex r = *this;
        for (int i = 0; i < dim(); ++i) r.e_[i] += o.e_[i];
        return r;
    }
    MultiIndex operator-(const MultiIndex& o) const {
        MultiIndex r = *this;
        for (int i = 0; i < dim(); ++i) {
            r.e_[i] -= o.e_[i];
            if (r.e_[i] < 0) throw DomainError("multi-index subtraction went negative");
        }
        return r;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

    // graded lexicographic; total order used for canonical containers
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        int oa = a.order(), ob = b.order();
        if (oa != ob) return oa < ob;
        return a.e_ < b.e_;
    }

    const std::vector<int>& exponents() const { return e_; }

    std::string to_string() const {
        std::string s = "(";
        for (int i = 0; i < dim(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[i]);
        }
        return s + ")";
    }

  private:
    void check() const {
        for (int v : e_)
            if (v < 0) throw DomainError("multi-index entries must be non-negative");
    }
    std::vector<int> e_;
};

} // namespace greenrec

#endif
