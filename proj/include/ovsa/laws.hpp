#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "hahn.hpp"
#include "rational.hpp"

namespace ovsa {

// Sampled verification that a model is an ordered Q-vector space with an
// order-automorphism: totality, antisymmetry, transitivity, compatibility of
// + and positive scaling with <, sigma respecting <, + and scalars, and
// sigma composed with its inverse being the identity.

struct LawCheckResult {
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0; }
    void fail(const std::string& what) {
        if (failures == 0) first_failure = what;
        ++failures;
    }
};

template <OvsaModelType M>
LawCheckResult check_model_laws(const M& m, const std::vector<typename M::Element>& samples,
                                std::mt19937_64& rng, std::size_t pairs) {
    LawCheckResult res;
    if (samples.size() < 2) return res;
    auto pick = [&]() -> const typename M::Element& {
        return samples[rng() % samples.size()];
    };
    const auto zero = m.zero();
    for (std::size_t it = 0; it < pairs; ++it) {
        const auto v = pick(), w = pick(), u = pick();
        const Ord vw = m.compare(v, w);
        ++res.checks;
        if (ord_flip(m.compare(w, v)) != vw) res.fail("antisymmetry");
        // transitivity on the sampled triple
        const Ord wu = m.compare(w, u), vu = m.compare(v, u);
        if (vw == Ord::LT && wu == Ord::LT && vu != Ord::LT) res.fail("transitivity");
        if (vw == Ord::EQ && wu == Ord::EQ && vu != Ord::EQ) res.fail("transitivity (eq)");
        // translation invariance
        if (m.compare(m.add(v, u), m.add(w, u)) != vw) res.fail("addition compatibility");
        // scaling
        const long long num = static_cast<long long>(rng() % 7) - 3;
        const long long den = 1 + static_cast<long long>(rng() % 4);
        const Rat r(num, den);
        const Ord scaled = m.compare(m.scale(r, v), m.scale(r, w));
        const Ord expect = r > 0 ? vw : r < 0 ? ord_flip(vw) : Ord::EQ;
        if (scaled != expect) res.fail("scaling compatibility");
        // sigma is an order-automorphism and linear
        const auto sv = m.sigma(v, 1), sw = m.sigma(w, 1);
        if (m.compare(sv, sw) != vw) res.fail("sigma order-preservation");
        if (m.compare(m.sigma(m.add(v, w), 1), m.add(sv, sw)) != Ord::EQ)
            res.fail("sigma additivity");
        if (m.compare(m.sigma(m.scale(r, v), 1), m.scale(r, sv)) != Ord::EQ)
            res.fail("sigma linearity");
        // inverse round-trips
        if (m.compare(m.sigma(sv, -1), v) != Ord::EQ) res.fail("sigma inverse (left)");
        if (m.compare(m.sigma(m.sigma(v, -1), 1), v) != Ord::EQ) res.fail("sigma inverse (right)");
        (void)zero;
    }
    return res;
}

}  // namespace ovsa
