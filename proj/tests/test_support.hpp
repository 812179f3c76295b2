#pragma once

// Shared helpers for the test suites: seeded sampling and the independent
// oracles (conjugation products, naive subset enumeration, full coloring
// enumeration) that the implementation is checked against. Everything here
// stays deliberately naive; none of it calls the code paths it judges.

#include "lkram/lk_algebra.hpp"
#include "lkram/numeric.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <vector>

namespace testsupport {

using lkram::Int;

inline std::vector<lkram::LKParams> panel() {
    using lkram::LKParams;
    return {LKParams::validate(1, 1), LKParams::validate(2, 1),  LKParams::validate(2, 2),
            LKParams::validate(3, 4), LKParams::validate(1, 2),  LKParams::validate(6, 3),
            LKParams::validate(-1, 1), LKParams::validate(-2, 2)};
}

inline Int draw_int(std::mt19937_64& rng, long long magnitude) {
    std::uniform_int_distribution<long long> dist(-magnitude, magnitude);
    return Int(dist(rng));
}

/// Conjugation oracle: (prod T(x_i) - k) / ell, straight from the product
/// identity; never touches star().
inline Int conjugation_product_oracle(const lkram::LKParams& p, std::span<const Int> xs) {
    Int prod = 1;
    for (const Int& x : xs) prod *= p.ell() * x + p.k();
    return lkram::div_exact(prod - p.k(), p.ell());
}

/// Naive finite-sums set of a sequence (every nonempty subset).
inline std::set<Int> naive_finite_sums(std::span<const Int> xs) {
    std::set<Int> out;
    const std::size_t n = xs.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Int sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) sum += xs[i];
        }
        out.insert(sum);
    }
    return out;
}

/// Exhaustive coloring oracle: walks all r^count colorings of a dense element
/// range and reports whether any avoids every monochromatic instance. The
/// instances are index sets into the range.
inline bool brute_force_avoidable(const std::vector<std::vector<std::size_t>>& instances,
                                  std::size_t count, unsigned r) {
    std::vector<unsigned> colors(count, 0);
    while (true) {
        bool ok = true;
        for (const auto& inst : instances) {
            bool mono = true;
            for (std::size_t i = 1; i < inst.size() && mono; ++i) {
                mono = colors[inst[i]] == colors[inst[0]];
            }
            if (mono) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
        std::size_t pos = 0;
        while (pos < count && colors[pos] + 1 == r) colors[pos++] = 0;
        if (pos == count) return false;
        ++colors[pos];
    }
}

}  // namespace testsupport
