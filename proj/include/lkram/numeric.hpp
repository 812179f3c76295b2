#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace lkram {

/// Arbitrary-precision signed integer. Symmetric-system values grow like
/// products of transformed inputs, so every arithmetic path uses this type.
using Int = boost::multiprecision::cpp_int;

/// Exact rational, used for polynomial coefficients and threshold compares.
using Rat = boost::multiprecision::cpp_rational;

/// Quotient of a division known to be exact. A nonzero remainder here means
/// a broken closure invariant, not bad input, hence logic_error.
inline Int div_exact(const Int& num, const Int& den) {
    Int q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (!r.is_zero()) {
        throw std::logic_error("div_exact: " + num.str() + " not divisible by " + den.str());
    }
    return q;
}

inline bool divides(const Int& d, const Int& n) {
    return d != 0 && n % d == 0;
}

inline Int pow_int(const Int& base, unsigned long long e) {
    Int acc = 1;
    Int b = base;
    while (e > 0) {
        if (e & 1ULL) acc *= b;
        e >>= 1ULL;
        if (e > 0) b *= b;
    }
    return acc;
}

inline bool is_integer(const Rat& q) {
    return denominator(q) == 1;
}

/// Numerator of an integral rational; logic_error if the value is not integral.
inline Int to_integer(const Rat& q) {
    if (!is_integer(q)) {
        throw std::logic_error("to_integer: value is not an integer");
    }
    return numerator(q);
}

inline std::string to_string(const Int& v) { return v.str(); }

inline std::string to_string(const Rat& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace lkram
