#ifndef GREENREC_PDE_SPEC_HPP
#define GREENREC_PDE_SPEC_HPP

#include <map>
#include <string>

#include "greenrec/poly.hpp"

namespace greenrec {

// A linear PDE operator sum_q p_q(x) d^q with polynomial coefficients.
// Coefficients live in the shared variable universe but may only mention
// x1..xd and the parameter k.
struct PdeSpec {
    int dimension = 0;
    int order = 0;
    std::map<MultiIndex, Poly> coefficients;

    void validate() const;

    friend bool operator==(const PdeSpec& a, const PdeSpec& b) {
        return a.dimension == b.dimension && a.order == b.order && a.coefficients == b.coefficients;
    }
};

// Text document format (UTF-8, line oriented, '#' comments):
//   dimension: 2
//   order: 2
//   term: [2,0] 1
//   term: [0,2] 1
//   term: [0,0] k^2
// parse(print(spec)) is the identity on canonical forms.
PdeSpec parse_pde_spec(const std::string& text);
std::string print_pde_spec(const PdeSpec& spec);

} // namespace greenrec

#endif
