#pragma once

// Independent oracles used by the unit and acceptance suites. These stay on
// their own algorithmic routes so the library implementation never checks
// itself against itself:
//   - positive-root counting by Descartes-variation bisection (the library
//     uses a Sturm chain),
//   - amalgam existence by enumerating every interleaving of the two chains,
//   - IP patterns by direct nested-loop search without precomputed tables.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "ovsa/amalg.hpp"
#include "ovsa/formulas.hpp"
#include "ovsa/unipoly.hpp"

namespace oracles {

using namespace ovsa;

// ----- positive roots via Vincent-style bisection -----

// coefficient sign variations
inline int variations(const UniPoly& p) {
    int var = 0, prev = 0;
    for (const auto& c : p.coeffs()) {
        const int s = sign(c);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// q(a + (b-a) t) as a polynomial in t
inline UniPoly compose_affine(const UniPoly& q, const Rat& a, const Rat& b) {
    const UniPoly lin({a, b - a});
    UniPoly acc;
    for (auto it = q.coeffs().rbegin(); it != q.coeffs().rend(); ++it)
        acc = poly_add(poly_mul(acc, lin), UniPoly::constant(*it));
    return acc;
}

// number of sign variations of (1+x)^n r(1/(1+x)): reverse then shift by one
inline int descartes_variations_01(const UniPoly& r) {
    std::vector<Rat> rev(r.coeffs().rbegin(), r.coeffs().rend());
    // in-place Taylor shift by 1
    for (std::size_t i = 0; i + 1 < rev.size(); ++i)
        for (std::size_t j = rev.size() - 1; j > i; --j) rev[j - 1] += rev[j];
    return variations(UniPoly(std::move(rev)));
}

inline std::size_t count_roots_in(const UniPoly& q, const Rat& a, const Rat& b, int depth = 0) {
    if (depth > 128) throw Error("oracle bisection depth exceeded");
    const UniPoly r = compose_affine(q, a, b);
    const int var = descartes_variations_01(r);
    if (var == 0) return 0;
    if (var == 1) return 1;
    const Rat mid = (a + b) / 2;
    std::size_t total = poly_eval(q, mid) == 0 ? 1 : 0;
    total += count_roots_in(q, a, mid, depth + 1);
    total += count_roots_in(q, mid, b, depth + 1);
    return total;
}

inline std::size_t oracle_count_positive_roots(const UniPoly& p) {
    if (p.is_zero()) throw ZeroPolynomialError();
    UniPoly q = poly_squarefree_part(p);
    // strip roots at zero
    std::size_t low = 0;
    while (low < q.coeffs().size() && q[low] == 0) ++low;
    if (low > 0)
        q = UniPoly(std::vector<Rat>(q.coeffs().begin() + static_cast<long>(low),
                                     q.coeffs().end()));
    if (q.degree() < 1) return 0;
    // Cauchy bound with margin
    Rat bound = 0;
    for (const auto& c : q.coeffs()) bound = std::max(bound, rat_abs(c / q.leading()));
    bound += 2;
    return count_roots_in(q, Rat(0), bound);
}

// ----- amalgam enumeration -----

// All interleavings of B's chain and C's chain that agree on the shared A
// points, i.e. all valid amalgam orders.
inline void enumerate_merges(const std::vector<std::string>& b_seq,
                             const std::vector<std::string>& c_seq,
                             const std::set<std::string>& shared, std::size_t bi, std::size_t ci,
                             std::vector<std::string>& acc,
                             std::vector<std::vector<std::string>>& out) {
    if (bi == b_seq.size() && ci == c_seq.size()) {
        out.push_back(acc);
        return;
    }
    const bool b_has = bi < b_seq.size();
    const bool c_has = ci < c_seq.size();
    if (b_has && c_has && shared.count(b_seq[bi]) && b_seq[bi] == c_seq[ci]) {
        acc.push_back(b_seq[bi]);
        enumerate_merges(b_seq, c_seq, shared, bi + 1, ci + 1, acc, out);
        acc.pop_back();
        return;  // a shared point blocks both sides until consumed
    }
    if (b_has && !shared.count(b_seq[bi])) {
        acc.push_back(b_seq[bi]);
        enumerate_merges(b_seq, c_seq, shared, bi + 1, ci, acc, out);
        acc.pop_back();
    }
    if (c_has && !shared.count(c_seq[ci])) {
        acc.push_back(c_seq[ci]);
        enumerate_merges(b_seq, c_seq, shared, bi, ci + 1, acc, out);
        acc.pop_back();
    }
}

inline std::vector<std::vector<std::string>> oracle_all_amalgams(
    const OrderAmalgamationProblem& prob) {
    std::vector<std::string> b_seq, c_seq;
    for (int id : prob.B.order) b_seq.push_back(prob.B.points[id]);
    for (int id : prob.C.order) c_seq.push_back(prob.C.points[id]);
    std::set<std::string> shared(prob.A.points.begin(), prob.A.points.end());
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> acc;
    enumerate_merges(b_seq, c_seq, shared, 0, 0, acc, out);
    return out;
}

// ----- brute-force IP search -----

template <OvsaModelType M>
bool oracle_ip_found(const QFFormula<M>& phi, const QFFormula<M>& psi, const M& m, std::size_t n,
                     const std::vector<typename M::Element>& a_pool,
                     const std::vector<typename M::Element>& b_pool) {
    if (n == 0 || a_pool.empty() || b_pool.empty()) return false;
    std::vector<std::size_t> pick(n, 0);
    auto holds = [&](const QFFormula<M>& f, const typename M::Element& a,
                     const typename M::Element& b) {
        Assignment<M> asg;
        asg.set(vx(0), a);
        asg.set(vy(0), b);
        return eval_formula(f, asg, m);
    };
    for (;;) {
        bool all = true;
        for (std::size_t w = 0; w < (std::size_t(1) << n) && all; ++w) {
            bool found_b = false;
            for (const auto& b : b_pool) {
                bool good = true;
                for (std::size_t i = 0; i < n && good; ++i)
                    good = ((w >> i) & 1) ? holds(phi, a_pool[pick[i]], b)
                                          : holds(psi, a_pool[pick[i]], b);
                if (good) {
                    found_b = true;
                    break;
                }
            }
            all = found_b;
        }
        if (all) return true;
        std::size_t i = 0;
        while (i < n && ++pick[i] == a_pool.size()) pick[i++] = 0;
        if (i == n) return false;
    }
}

}  // namespace oracles
