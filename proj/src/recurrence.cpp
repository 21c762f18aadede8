#include "greenrec/recurrence.hpp"

#include <sstream>
#include <vector>

#include "greenrec/diff_rules.hpp"
#include "greenrec/errors.hpp"

namespace greenrec {

Recurrence ode_to_large_recurrence(const OdeInX1& ode) {
    const int dim = ode.dimension();
    const int x1 = 0;
    const int var_n = dim + 1;

    Recurrence rec;
    rec.source_ode_order = ode.order;
    int h = 0;
    for (const auto& l : ode.coeffs) h = std::max(h, l.degree_in(x1));
    rec.highest_x1_power = h;

    Poly n_var = Poly::variable(dim, var_n);
    for (int i = 0; i <= ode.order; ++i) {
        const Poly& li = ode.coeffs[i];
        for (int j = 0; j <= li.degree_in(x1); ++j) {
            Poly qij = li.coefficient_of(x1, j);
            if (qij.is_zero()) continue;
            for (int l = 0; l <= j; ++l) {
                Poly falling = Poly::from_int(dim, 1);
                for (int t = 0; t < l; ++t) falling *= (n_var - Poly::from_int(dim, t));
                Poly contrib =
                    qij * falling.scaled(GaussRat(BigRat(binomial(j, l)))) * Poly::variable(dim, x1, j - l);
                int shift = i - l;
                auto it = rec.coeffs.find(shift);
                if (it == rec.coeffs.end())
                    rec.coeffs.emplace(shift, std::move(contrib));
                else
                    it->second += contrib;
            }
        }
    }
    for (auto it = rec.coeffs.begin(); it != rec.coeffs.end();)
        it = it->second.is_zero() ? rec.coeffs.erase(it) : std::next(it);
    if (rec.coeffs.empty()) throw InternalError("ODE produced an empty recurrence");

    std::vector<Poly> system;
    std::vector<int> shifts;
    for (auto& [s, p] : rec.coeffs) {
        shifts.push_back(s);
        system.push_back(p);
    }
    canonicalize_system(system);
    for (std::size_t t = 0; t < shifts.size(); ++t) rec.coeffs[shifts[t]] = system[t];
    return rec;
}

SmallRecurrence specialize_small_recurrence(const Recurrence& rec) {
    SmallRecurrence small;
    for (const auto& [s, p] : rec.coeffs) {
        Poly at0 = p.substitute_int(0, 0);
        if (!at0.is_zero()) small.coeffs.emplace(s, std::move(at0));
    }
    if (small.coeffs.empty())
        throw DegenerateRecurrenceError("all coefficients vanish at x1 = 0");
    return small;
}

int recurrence_order(const Recurrence& rec) {
    if (rec.coeffs.empty()) return 0;
    return rec.max_shift() - rec.min_shift();
}

std::map<int, Poly> substitute_order(const Recurrence& rec, long long n) {
    const int dim = rec.dimension();
    const int var_n = dim + 1;
    std::map<int, Poly> out;
    for (const auto& [s, p] : rec.coeffs) {
        if (n + s < 0) continue; // coefficient vanishes identically there
        Poly bound = p.substitute_int(var_n, n);
        if (!bound.is_zero()) out.emplace(static_cast<int>(n) + s, std::move(bound));
    }
    return out;
}

namespace {

std::string print_shift_table(const std::map<int, Poly>& coeffs, const char* kind, int dim,
                              const std::string& extra) {
    std::ostringstream os;
    os << "greenrec-" << kind << " v1\n";
    os << "dimension: " << dim << "\n";
    if (!extra.empty()) os << extra;
    os << "shifts: " << coeffs.begin()->first << ".." << coeffs.rbegin()->first << "\n";
    for (const auto& [s, p] : coeffs) os << "coef " << s << ": " << p.to_string() << "\n";
    return os.str();
}

void parse_shift_table(const std::string& text, const char* kind, int& dim,
                       std::map<int, Poly>& coeffs,
                       std::map<std::string, std::string>& extras) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    dim = -1;
    std::map<int, std::string> raw;
    std::string magic = std::string("greenrec-") + kind;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line.rfind("greenrec-", 0) == 0) {
            if (line.rfind(magic, 0) != 0)
                throw ParseError("artifact kind mismatch, expected " + magic, lineno);
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'key: value'", lineno);
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        if (key == "dimension") {
            dim = std::stoi(value);
        } else if (key == "shifts") {
            // informational; re-derived from the coefficient table
        } else if (key.rfind("coef ", 0) == 0) {
            raw[std::stoi(key.substr(5))] = value;
        } else {
            extras[key] = value;
        }
    }
    if (dim < 2) throw ParseError("missing dimension in artifact");
    for (const auto& [s, expr] : raw) {
        Poly p = Poly::parse(expr, dim);
        if (!p.is_zero()) coeffs.emplace(s, std::move(p));
    }
    if (coeffs.empty()) throw ParseError("artifact has no coefficients");
}

} // namespace

std::string print_recurrence(const Recurrence& rec) {
    std::ostringstream extra;
    extra << "ode-order: " << rec.source_ode_order << "\n";
    extra << "highest-x1-power: " << rec.highest_x1_power << "\n";
    return print_shift_table(rec.coeffs, "large-recurrence", rec.dimension(), extra.str());
}

Recurrence parse_recurrence(const std::string& text) {
    Recurrence rec;
    int dim = 0;
    std::map<std::string, std::string> extras;
    parse_shift_table(text, "large-recurrence", dim, rec.coeffs, extras);
    auto it = extras.find("ode-order");
    if (it == extras.end()) throw ParseError("missing ode-order in recurrence artifact");
    rec.source_ode_order = std::stoi(it->second);
    it = extras.find("highest-x1-power");
    if (it == extras.end()) throw ParseError("missing highest-x1-power in recurrence artifact");
    rec.highest_x1_power = std::stoi(it->second);
    return rec;
}

std::string print_small_recurrence(const SmallRecurrence& rec) {
    return print_shift_table(rec.coeffs, "small-recurrence", rec.dimension(), "");
}

SmallRecurrence parse_small_recurrence(const std::string& text) {
    SmallRecurrence rec;
    int dim = 0;
    std::map<std::string, std::string> extras;
    parse_shift_table(text, "small-recurrence", dim, rec.coeffs, extras);
    return rec;
}

} // namespace greenrec
