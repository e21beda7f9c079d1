#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "hahn.hpp"
#include "sigmapoly.hpp"

namespace ovsa {

// ---------------------------------------------------------------------------
// Quantifier-free positive formulas over the OVSA signature. Terms are
// affine: a sum of sigma-polynomials applied to variables plus an optional
// model constant. Atoms compare a term against zero.
// ---------------------------------------------------------------------------

struct Var {
    char block;  // 'x' or 'y'
    int idx;

    bool operator==(const Var& o) const { return block == o.block && idx == o.idx; }
    std::string name() const { return std::string(1, block) + std::to_string(idx); }
};

inline Var vx(int i = 0) { return Var{'x', i}; }
inline Var vy(int i = 0) { return Var{'y', i}; }

template <class M>
struct QFTerm {
    std::vector<std::pair<Var, SigmaPoly>> summands;
    std::optional<typename M::Element> constant;
};

template <class M>
QFTerm<M> term_poly(Var v, SigmaPoly f) {
    return {{{v, std::move(f)}}, std::nullopt};
}

// p(x) - y, the workhorse shape
template <class M>
QFTerm<M> term_poly_minus_var(SigmaPoly p, Var x, Var y) {
    return {{{x, std::move(p)}, {y, SigmaPoly::constant(Rat(-1))}}, std::nullopt};
}

enum class Rel { LT, GT, EQ };

template <class M>
class QFFormula {
public:
    enum class Kind { Atom, And, Or, Top, Bottom };

    static QFFormula atom(QFTerm<M> term, Rel rel) {
        QFFormula f;
        f.node_ = std::make_shared<const Node>(Node{Kind::Atom, std::move(term), rel, {}});
        return f;
    }
    static QFFormula conj(std::vector<QFFormula> items) { return combine(Kind::And, std::move(items)); }
    static QFFormula disj(std::vector<QFFormula> items) { return combine(Kind::Or, std::move(items)); }
    static QFFormula top() { return leaf(Kind::Top); }
    static QFFormula bottom() { return leaf(Kind::Bottom); }

    Kind kind() const { return node_->kind; }
    const QFTerm<M>& term() const { return node_->term; }
    Rel rel() const { return node_->rel; }
    const std::vector<QFFormula>& children() const { return node_->children; }

private:
    struct Node {
        Kind kind;
        QFTerm<M> term;
        Rel rel = Rel::LT;
        std::vector<QFFormula> children;
    };
    std::shared_ptr<const Node> node_;

    static QFFormula leaf(Kind k) {
        QFFormula f;
        f.node_ = std::make_shared<const Node>(Node{k, {}, Rel::LT, {}});
        return f;
    }
    static QFFormula combine(Kind k, std::vector<QFFormula> items) {
        QFFormula f;
        f.node_ = std::make_shared<const Node>(Node{k, {}, Rel::LT, std::move(items)});
        return f;
    }
};

template <class M>
struct Assignment {
    std::vector<std::pair<Var, typename M::Element>> values;

    void set(Var v, typename M::Element e) {
        for (auto& [var, val] : values)
            if (var == v) {
                val = std::move(e);
                return;
            }
        values.push_back({v, std::move(e)});
    }
    const typename M::Element& get(Var v) const {
        for (const auto& [var, val] : values)
            if (var == v) return val;
        throw UnboundVariableError(v.name());
    }
};

template <OvsaModelType M>
typename M::Element eval_term(const QFTerm<M>& t, const Assignment<M>& asg, const M& m) {
    typename M::Element acc = m.zero();
    for (const auto& [var, poly] : t.summands)
        acc = m.add(acc, sp_eval(poly, asg.get(var), m));
    if (t.constant) acc = m.add(acc, *t.constant);
    return acc;
}

template <OvsaModelType M>
bool eval_formula(const QFFormula<M>& phi, const Assignment<M>& asg, const M& m) {
    using Kind = typename QFFormula<M>::Kind;
    switch (phi.kind()) {
        case Kind::Top: return true;
        case Kind::Bottom: return false;
        case Kind::Atom: {
            const Ord o = m.compare(eval_term(phi.term(), asg, m), m.zero());
            switch (phi.rel()) {
                case Rel::LT: return o == Ord::LT;
                case Rel::GT: return o == Ord::GT;
                case Rel::EQ: return o == Ord::EQ;
            }
            return false;
        }
        case Kind::And:
            for (const auto& c : phi.children())
                if (!eval_formula(c, asg, m)) return false;
            return true;
        case Kind::Or:
            for (const auto& c : phi.children())
                if (eval_formula(c, asg, m)) return true;
            return false;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Alternation numbers. The scan finds the longest phi/psi-alternating
// subsequence starting with phi; alt is its length minus one. A sequence
// with no phi-index at all reports the NoAlternation flag (value 0).
// ---------------------------------------------------------------------------

struct AltResult {
    bool no_alternation = false;
    std::size_t value = 0;
};

// truth[i] = (phi holds at i, psi holds at i); both true is a hard error.
inline AltResult alt_scan(const std::vector<std::pair<bool, bool>>& truth) {
    std::size_t len_phi = 0;  // longest alternation starting phi, ending phi
    std::size_t len_psi = 0;  // longest alternation starting phi, ending psi
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const auto [p, q] = truth[i];
        if (p && q)
            throw DisjointnessViolatedError("both formulas hold at index " + std::to_string(i));
        if (p) len_phi = std::max({len_phi, std::size_t(1), len_psi ? len_psi + 1 : 0});
        if (q && len_phi > 0) len_psi = std::max(len_psi, len_phi + 1);
    }
    const std::size_t best = std::max(len_phi, len_psi);
    if (best == 0) return {true, 0};
    return {false, best - 1};
}

// seq: one x-block tuple per index; b: the y-block tuple.
template <OvsaModelType M>
AltResult alt_count(const QFFormula<M>& phi, const QFFormula<M>& psi,
                    const std::vector<std::vector<typename M::Element>>& seq,
                    const std::vector<typename M::Element>& b, const M& m) {
    std::vector<std::pair<bool, bool>> truth;
    truth.reserve(seq.size());
    for (const auto& tuple : seq) {
        Assignment<M> asg;
        for (std::size_t j = 0; j < tuple.size(); ++j) asg.set(vx(static_cast<int>(j)), tuple[j]);
        for (std::size_t j = 0; j < b.size(); ++j) asg.set(vy(static_cast<int>(j)), b[j]);
        truth.push_back({eval_formula(phi, asg, m), eval_formula(psi, asg, m)});
    }
    return alt_scan(truth);
}

// Sampled certificate that phi and psi never hold together.
template <OvsaModelType M>
bool check_disjoint_sampled(const QFFormula<M>& phi, const QFFormula<M>& psi,
                            const std::vector<typename M::Element>& xs,
                            const std::vector<typename M::Element>& ys, const M& m) {
    for (const auto& x : xs)
        for (const auto& y : ys) {
            Assignment<M> asg;
            asg.set(vx(0), x);
            asg.set(vy(0), y);
            if (eval_formula(phi, asg, m) && eval_formula(psi, asg, m)) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Quantifier-free indiscernibility over a term bank: every atom built from a
// bank term must have an order-invariant sign on increasing index tuples.
// ---------------------------------------------------------------------------

template <class M>
struct IndiscernibilityReport {
    bool indiscernible = true;
    std::size_t term_index = 0;
    std::vector<std::size_t> tuple_a, tuple_b;  // first violating pair
};

namespace detail {
template <OvsaModelType M>
int term_sign_at(const QFTerm<M>& t, const std::vector<typename M::Element>& seq,
                 const std::vector<std::size_t>& tuple, const M& m) {
    Assignment<M> asg;
    for (std::size_t j = 0; j < tuple.size(); ++j) asg.set(vx(static_cast<int>(j)), seq[tuple[j]]);
    const Ord o = m.compare(eval_term(t, asg, m), m.zero());
    return o == Ord::LT ? -1 : o == Ord::GT ? 1 : 0;
}

inline bool next_increasing_tuple(std::vector<std::size_t>& t, std::size_t n) {
    const std::size_t k = t.size();
    for (std::size_t i = k; i-- > 0;) {
        if (t[i] + (k - i) < n) {
            ++t[i];
            for (std::size_t j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
            return true;
        }
    }
    return false;
}
}  // namespace detail

template <OvsaModelType M>
IndiscernibilityReport<M> is_qf_indiscernible(const std::vector<typename M::Element>& seq,
                                              const M& m, std::size_t max_arity,
                                              const std::vector<QFTerm<M>>& term_bank) {
    IndiscernibilityReport<M> rep;
    for (std::size_t ti = 0; ti < term_bank.size(); ++ti) {
        const auto& t = term_bank[ti];
        std::size_t arity = 0;
        for (const auto& [var, poly] : t.summands)
            if (var.block == 'x') arity = std::max(arity, static_cast<std::size_t>(var.idx) + 1);
        if (arity == 0 || arity > max_arity || arity > seq.size()) continue;
        std::vector<std::size_t> tuple(arity);
        for (std::size_t j = 0; j < arity; ++j) tuple[j] = j;
        std::optional<int> ref;
        std::vector<std::size_t> ref_tuple;
        do {
            const int s = detail::term_sign_at(t, seq, tuple, m);
            if (!ref) {
                ref = s;
                ref_tuple = tuple;
            } else if (s != *ref) {
                rep.indiscernible = false;
                rep.term_index = ti;
                rep.tuple_a = ref_tuple;
                rep.tuple_b = tuple;
                return rep;
            }
        } while (detail::next_increasing_tuple(tuple, seq.size()));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Finite IP pattern search: (a_i)_{i<n} from the a-pool and, independently
// for every W subseteq n, some b_W from the b-pool realizing the pattern.
// Single-variable blocks; exhaustive over the pools.
// ---------------------------------------------------------------------------

struct IpWitness {
    std::vector<std::size_t> a_indices;            // into aPool
    std::vector<std::size_t> b_for_subset;         // 2^n entries, into bPool
};

template <OvsaModelType M>
std::optional<IpWitness> ip_pattern_search(const QFFormula<M>& phi, const QFFormula<M>& psi,
                                           const M& m, std::size_t n,
                                           const std::vector<typename M::Element>& a_pool,
                                           const std::vector<typename M::Element>& b_pool) {
    if (n == 0 || a_pool.empty() || b_pool.empty()) return std::nullopt;
    const std::size_t na = a_pool.size(), nb = b_pool.size();
    // truth tables
    std::vector<std::vector<bool>> tphi(na, std::vector<bool>(nb)),
        tpsi(na, std::vector<bool>(nb));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            Assignment<M> asg;
            asg.set(vx(0), a_pool[i]);
            asg.set(vy(0), b_pool[j]);
            tphi[i][j] = eval_formula(phi, asg, m);
            tpsi[i][j] = eval_formula(psi, asg, m);
        }
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
        IpWitness wit;
        wit.a_indices = pick;
        wit.b_for_subset.assign(std::size_t(1) << n, 0);
        bool all = true;
        for (std::size_t w = 0; w < (std::size_t(1) << n) && all; ++w) {
            bool found_b = false;
            for (std::size_t j = 0; j < nb && !found_b; ++j) {
                bool good = true;
                for (std::size_t i = 0; i < n && good; ++i) {
                    const bool in_w = (w >> i) & 1;
                    good = in_w ? tphi[pick[i]][j] : tpsi[pick[i]][j];
                }
                if (good) {
                    found_b = true;
                    wit.b_for_subset[w] = j;
                }
            }
            all = found_b;
        }
        if (all) return wit;
        // next tuple
        std::size_t i = 0;
        while (i < n && ++pick[i] == na) pick[i++] = 0;
        if (i == n) return std::nullopt;
    }
}

}  // namespace ovsa
