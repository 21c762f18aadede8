#include "greenrec/diff_rules.hpp"

#include "greenrec/errors.hpp"
#include "greenrec/partitions.hpp"

namespace greenrec {

BigInt factorial(int a) {
    BigInt f = 1;
    for (int j = 2; j <= a; ++j) f *= j;
    return f;
}

BigInt binomial(int a, int b) {
    if (b < 0 || b > a) return 0;
    BigInt n = 1;
    for (int j = 0; j < b; ++j) n *= (a - j);
    return n / factorial(b);
}

BigInt rising_factorial(int a, int count) {
    BigInt f = 1;
    for (int j = 0; j < count; ++j) f *= (a + j);
    return f;
}

std::vector<std::pair<int, Poly>> faa_di_bruno_radial(const MultiIndex& alpha) {
    int d = alpha.dim();
    std::vector<std::pair<int, Poly>> out;
    if (alpha.order() == 0) {
        out.emplace_back(0, Poly::from_int(d, 1));
        return out;
    }
    BigInt alpha_fact = alpha.factorial();
    for (int k = 1; k <= alpha.order(); ++k) {
        Poly b(d);
        for (const auto& part : enumerate_vector_partitions(alpha, k)) {
            Poly prod = Poly::from_int(d, 1);
            bool vanished = false;
            for (const auto& [beta, mult] : part.multiplicity) {
                // scaled derivative of g = x1^2+...+xd^2: beta = e_i gives
                // 2*x_i, beta = 2*e_i gives 1, anything else vanishes
                Poly dg(d);
                if (beta.order() == 1) {
                    for (int i = 0; i < d; ++i)
                        if (beta[i] == 1) dg = Poly::variable(d, i).scaled(GaussRat(2));
                } else if (beta.order() == 2) {
                    for (int i = 0; i < d; ++i)
                        if (beta[i] == 2) dg = Poly::from_int(d, 1);
                }
                if (dg.is_zero()) {
                    vanished = true;
                    break;
                }
                prod *= dg.pow(mult);
            }
            if (vanished) continue;
            GaussRat scale{BigRat(alpha_fact, part.multiplicity_factorial())};
            b += prod.scaled(scale);
        }
        if (!b.is_zero()) out.emplace_back(k, std::move(b));
    }
    return out;
}

std::vector<SquareRuleTerm> deriv_square_composition(int n) {
    if (n < 0) throw DomainError("derivative order must be non-negative");
    std::vector<SquareRuleTerm> out;
    if (n == 0) {
        out.push_back({0, BigRat(1), 0});
        return out;
    }
    for (int k = (n + 1) / 2; k <= n; ++k) {
        // n! / ((n-k)! (2k-n)!) * 2^(2k-n) * z^(2k-n)
        BigInt num = factorial(n);
        BigInt den = factorial(n - k) * factorial(2 * k - n);
        BigInt two_pow = BigInt(1) << (2 * k - n);
        out.push_back({k, BigRat(num * two_pow, den), 2 * k - n});
    }
    return out;
}

std::vector<SqrtRuleTerm> deriv_sqrt_composition(int n) {
    if (n < 0) throw DomainError("derivative order must be non-negative");
    std::vector<SqrtRuleTerm> out;
    if (n == 0) {
        out.push_back({0, BigRat(1), 0});
        return out;
    }
    for (int k = 1; k <= n; ++k) {
        BigInt num = rising_factorial(k, 2 * (n - k));
        if (num == 0) continue;
        BigInt den = factorial(n - k) * (BigInt(1) << (2 * n - k));
        BigRat c(num, den);
        if ((n - k) % 2 != 0) c = -c;
        out.push_back({k, c, k - 2 * n});
    }
    return out;
}

std::vector<std::pair<int, Poly>> shift_product_rule(int p) {
    if (p < 0) throw DomainError("power must be non-negative");
    constexpr int kDim = 1;
    std::vector<std::pair<int, Poly>> out;
    Poly n_var = Poly::variable(kDim, kDim + 1); // n
    for (int l = 0; l <= p; ++l) {
        Poly falling = Poly::from_int(kDim, 1);
        for (int j = 0; j < l; ++j) falling *= (n_var - Poly::from_int(kDim, j));
        Poly coeff = falling.scaled(GaussRat(BigRat(binomial(p, l)))) * Poly::variable(kDim, 0, p - l);
        out.emplace_back(l, std::move(coeff));
    }
    return out;
}

} // namespace greenrec
