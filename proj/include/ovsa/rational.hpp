#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace ovsa {

// Exact scalars. cpp_rational keeps the canonical form (gcd 1, positive
// denominator) on every operation, which is exactly the invariant we need.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sign(const Rat& r) { return r.sign(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Serialized form is always "p/q" with q > 0, e.g. "0/1", "-7/3".
inline std::string rat_to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p/q" and bare integers "p".
inline Rat rat_from_string(const std::string& s) {
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        const Int num(s.substr(0, slash));
        const Int den(s.substr(slash + 1));
        if (den <= 0) throw SchemaError("rational denominator must be positive: " + s);
        return Rat(num, den);
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception&) {
        throw SchemaError("malformed rational: " + s);
    }
}

}  // namespace ovsa
