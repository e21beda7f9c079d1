#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace ovsa {

// Univariate polynomial over the rationals, coefficients stored low-to-high
// with no trailing zeros. The zero polynomial has an empty coefficient list.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(const Rat& r) { return UniPoly({r}); }
    // x^k with coefficient r
    static UniPoly monomial(const Rat& r, std::size_t k) {
        std::vector<Rat> c(k + 1);
        c[k] = r;
        return UniPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    long long degree() const { return static_cast<long long>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    const Rat& leading() const { return c_.back(); }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

private:
    std::vector<Rat> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

inline UniPoly poly_add(const UniPoly& a, const UniPoly& b) {
    std::vector<Rat> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < a.coeffs().size()) c[i] += a[i];
        if (i < b.coeffs().size()) c[i] += b[i];
    }
    return UniPoly(std::move(c));
}

inline UniPoly poly_neg(const UniPoly& a) {
    std::vector<Rat> c(a.coeffs());
    for (auto& x : c) x = -x;
    return UniPoly(std::move(c));
}

inline UniPoly poly_sub(const UniPoly& a, const UniPoly& b) { return poly_add(a, poly_neg(b)); }

inline UniPoly poly_mul(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rat> c(a.coeffs().size() + b.coeffs().size() - 1);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a[i] * b[j];
    return UniPoly(std::move(c));
}

inline UniPoly poly_scale(const Rat& r, const UniPoly& a) {
    std::vector<Rat> c(a.coeffs());
    for (auto& x : c) x *= r;
    return UniPoly(std::move(c));
}

inline Rat poly_eval(const UniPoly& p, const Rat& x) {
    Rat acc = 0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline UniPoly poly_derivative(const UniPoly& p) {
    if (p.coeffs().size() <= 1) return UniPoly();
    std::vector<Rat> c(p.coeffs().size() - 1);
    for (std::size_t i = 1; i < p.coeffs().size(); ++i) c[i - 1] = p[i] * Rat(static_cast<long long>(i));
    return UniPoly(std::move(c));
}

// Exact division with remainder; divisor must be nonzero.
inline std::pair<UniPoly, UniPoly> poly_divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw ZeroPolynomialError();
    std::vector<Rat> rem(a.coeffs());
    const std::size_t db = b.coeffs().size() - 1;
    if (rem.size() < db + 1) return {UniPoly(), UniPoly(std::move(rem))};
    std::vector<Rat> quo(rem.size() - db);
    for (std::size_t top = rem.size(); top-- > db;) {
        const Rat q = rem[top] / b.leading();
        quo[top - db] = q;
        if (q != 0)
            for (std::size_t j = 0; j <= db; ++j) rem[top - db + j] -= q * b[j];
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

// Monic gcd via the Euclidean algorithm; each remainder is rescaled monic to
// keep coefficient growth in check.
inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
    auto monic = [](const UniPoly& p) {
        return p.is_zero() ? p : poly_scale(Rat(1) / p.leading(), p);
    };
    a = monic(a);
    b = monic(b);
    while (!b.is_zero()) {
        UniPoly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = monic(r);
    }
    return a;
}

// p with repeated roots collapsed: p / gcd(p, p').
inline UniPoly poly_squarefree_part(const UniPoly& p) {
    if (p.is_zero()) throw ZeroPolynomialError();
    if (p.degree() == 0) return p;
    const UniPoly g = poly_gcd(p, poly_derivative(p));
    if (g.degree() <= 0) return p;
    return poly_divmod(p, g).first;
}

namespace detail {

inline int sign_lowest_coeff(const UniPoly& p) {
    for (const auto& c : p.coeffs())
        if (c != 0) return sign(c);
    return 0;
}

inline int sign_leading_coeff(const UniPoly& p) { return p.is_zero() ? 0 : sign(p.leading()); }

inline int sign_variations(const std::vector<int>& signs) {
    int var = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

}  // namespace detail

// Number of distinct real roots of p in the open interval (0, oo), via a
// Sturm chain of the squarefree part evaluated at 0+ and +oo. Signs at 0+
// are the signs of the lowest nonzero coefficients, signs at +oo those of
// the leading coefficients.
inline std::size_t count_positive_roots(const UniPoly& p) {
    if (p.is_zero()) throw ZeroPolynomialError();
    const UniPoly q = poly_squarefree_part(p);
    if (q.degree() == 0) return 0;
    std::vector<UniPoly> chain{q, poly_derivative(q)};
    while (!chain.back().is_zero()) {
        UniPoly r = poly_divmod(chain[chain.size() - 2], chain.back()).second;
        chain.push_back(poly_neg(r));
    }
    chain.pop_back();
    std::vector<int> at_zero, at_inf;
    at_zero.reserve(chain.size());
    at_inf.reserve(chain.size());
    for (const auto& s : chain) {
        at_zero.push_back(detail::sign_lowest_coeff(s));
        at_inf.push_back(detail::sign_leading_coeff(s));
    }
    const int v0 = detail::sign_variations(at_zero);
    const int vi = detail::sign_variations(at_inf);
    return static_cast<std::size_t>(v0 - vi);
}

namespace detail {

// Positive divisors of |n|, by trial division. Desk-scale inputs only.
inline std::vector<Int> positive_divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> small, large;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Clear denominators: the integer polynomial lcm(dens) * p.
inline std::vector<Int> integerized(const UniPoly& p) {
    Int l = 1;
    for (const auto& c : p.coeffs()) l = boost::multiprecision::lcm(l, denominator(c));
    std::vector<Int> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(numerator(c) * (l / denominator(c)));
    return out;
}

}  // namespace detail

struct PositiveRootFactorization {
    std::vector<std::pair<Rat, std::size_t>> roots;  // (root, multiplicity), ascending
    UniPoly cofactor;                                // no positive rational roots
};

// Splits off every positive rational root of p as linear factors, so that
// p == cofactor * prod (y - root_i)^mult_i exactly.
inline PositiveRootFactorization extract_positive_rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw ZeroPolynomialError();
    PositiveRootFactorization out;
    UniPoly cur = p;
    for (;;) {
        if (cur.degree() < 1) break;
        // strip a power of y: it contributes no positive root and keeps the
        // trailing coefficient nonzero for the candidate enumeration
        std::size_t low = 0;
        while (cur[low] == 0) ++low;
        UniPoly probe = cur;
        if (low > 0) {
            std::vector<Rat> shifted(cur.coeffs().begin() + static_cast<long>(low),
                                     cur.coeffs().end());
            probe = UniPoly(std::move(shifted));
        }
        if (probe.degree() < 1) break;
        const auto ic = detail::integerized(probe);
        std::optional<Rat> found;
        for (const auto& r : detail::positive_divisors(ic.front())) {
            for (const auto& s : detail::positive_divisors(ic.back())) {
                if (boost::multiprecision::gcd(r, s) != 1) continue;
                const Rat cand(r, s);
                if (poly_eval(probe, cand) == 0) {
                    if (!found || cand < *found) found = cand;
                }
            }
        }
        if (!found) break;
        // divide (y - root) out of the full current polynomial
        const UniPoly lin({-*found, Rat(1)});
        auto [quo, rem] = poly_divmod(cur, lin);
        if (!rem.is_zero()) throw Error("internal: rational root division left a remainder");
        cur = std::move(quo);
        if (!out.roots.empty() && out.roots.back().first == *found)
            ++out.roots.back().second;
        else
            out.roots.push_back({*found, 1});
    }
    out.cofactor = cur;
    return out;
}

}  // namespace ovsa
