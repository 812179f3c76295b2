#pragma once

/**
 * @file polyring.hpp
 *
 * Sparse multivariate polynomials over the exact rationals, ordered by the
 * anti-lexicographic multi-index order (compare at the largest differing
 * coordinate). On top of that: sufficient checks for the two eventual
 * positive-integrality conditions on combining functions, and a bounded
 * empirical witness for the nested exists/forall statement behind them.
 */

#include "lkram/error.hpp"
#include "lkram/numeric.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace lkram {

/// Exponent tuple; its length is the ambient arity.
using MultiIndex = std::vector<unsigned>;

inline std::strong_ordering antilex_compare(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) {
        throw Error(Errc::ArityMismatch, "multi-index lengths differ");
    }
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] <=> b[i];
    }
    return std::strong_ordering::equal;
}

struct AntilexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return antilex_compare(a, b) < 0;
    }
};

inline unsigned total_degree(const MultiIndex& a) {
    unsigned d = 0;
    for (unsigned e : a) d += e;
    return d;
}

inline Rat pow_rat(const Rat& base, unsigned e) {
    return Rat(pow_int(numerator(base), e), pow_int(denominator(base), e));
}

/// Sparse polynomial; the term map stores no zero coefficients and every key
/// has length equal to the arity. Keys are kept in ascending anti-lex order,
/// so the leading term is the last entry.
class Polynomial {
public:
    using TermMap = std::map<MultiIndex, Rat, AntilexLess>;

    explicit Polynomial(std::size_t arity) : arity_(arity) {}

    static Polynomial constant(Rat c) {
        Polynomial p(0);
        p.add_term({}, std::move(c));
        return p;
    }

    std::size_t arity() const noexcept { return arity_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    const TermMap& terms() const noexcept { return terms_; }

    void add_term(MultiIndex idx, Rat coeff) {
        if (idx.size() != arity_) {
            throw Error(Errc::ArityMismatch, "multi-index length does not match polynomial arity");
        }
        if (coeff == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(idx), coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::pair<MultiIndex, Rat> leading_term() const {
        if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "zero polynomial has no leading term");
        return *terms_.rbegin();
    }

    Rat constant_term() const {
        MultiIndex zero(arity_, 0u);
        auto it = terms_.find(zero);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    bool has_integer_coefficients() const {
        for (const auto& [idx, c] : terms_) {
            if (!is_integer(c)) return false;
        }
        return true;
    }

    Rat evaluate(std::span<const Rat> point) const {
        if (point.size() != arity_) {
            throw Error(Errc::ArityMismatch, "evaluation point length does not match arity");
        }
        Rat acc = 0;
        for (const auto& [idx, c] : terms_) {
            Rat term = c;
            for (std::size_t i = 0; i < arity_; ++i) {
                if (idx[i] != 0) term *= pow_rat(point[i], idx[i]);
            }
            acc += term;
        }
        return acc;
    }

    Rat evaluate_at(std::span<const Int> point) const {
        std::vector<Rat> q(point.begin(), point.end());
        return evaluate(q);
    }

    /// P(z1*f1, ..., zm*fm): each coefficient picks up prod f_i^{alpha_i}.
    Polynomial scaled_arguments(std::span<const Int> factors) const {
        if (factors.size() != arity_) {
            throw Error(Errc::ArityMismatch, "scaling vector length does not match arity");
        }
        Polynomial out(arity_);
        for (const auto& [idx, c] : terms_) {
            Rat scaled = c;
            for (std::size_t i = 0; i < arity_; ++i) {
                if (idx[i] != 0) scaled *= Rat(pow_int(factors[i], idx[i]));
            }
            out.add_term(idx, scaled);
        }
        return out;
    }

    bool operator==(const Polynomial& o) const {
        return arity_ == o.arity_ && terms_ == o.terms_;
    }

private:
    std::size_t arity_;
    TermMap terms_;
};

/// Sufficient test for eventual positivity over the naturals: integer
/// coefficients and a positive leading coefficient. Rational coefficients
/// are a precondition violation, not a "false".
inline bool check_dagger_sufficient(const Polynomial& p) {
    if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "dagger check needs a nonzero polynomial");
    if (!p.has_integer_coefficients()) {
        throw Error(Errc::NonIntegerCoefficients, "dagger check needs integer coefficients");
    }
    return p.leading_term().second > 0;
}

/// Sufficient test for the scaled variant: positive leading coefficient and
/// no constant term. Returns the lcm of the coefficient denominators, the
/// uniform scale under which every substituted coefficient is integral.
inline std::optional<Int> check_ddagger_sufficient(const Polynomial& p) {
    if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "ddagger check needs a nonzero polynomial");
    if (p.leading_term().second <= 0) return std::nullopt;
    if (p.constant_term() != 0) return std::nullopt;
    Int n = 1;
    for (const auto& [idx, c] : p.terms()) {
        n = boost::multiprecision::lcm(n, denominator(c));
    }
    return n;
}

/// One level of the nested threshold table: `threshold` is the least value
/// for this variable given the probed prefix; children[i] describes variable
/// j+1 under value threshold+i, up to the probe bound. Leaves (the last
/// variable) have no children.
struct ThresholdNode {
    unsigned threshold = 1;
    std::vector<ThresholdNode> children;
};

struct DaggerWitness {
    ThresholdNode root;
    unsigned verified_bound = 1;
    std::optional<std::vector<Int>> scaling;  // per-variable factors, when checking the scaled form
};

namespace detail {

inline Rat witness_value(const Polynomial& p, const std::optional<std::vector<Int>>& scaling,
                         std::span<const unsigned> tuple) {
    std::vector<Rat> point(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        point[i] = Rat(tuple[i]);
        if (scaling) point[i] *= Rat((*scaling)[i]);
    }
    return p.evaluate(point);
}

inline bool positive_integer(const Rat& v) { return is_integer(v) && numerator(v) >= 1; }

// Builds the threshold node for one variable given the fixed prefix. A value
// n for this variable is "good" when the whole suffix succeeds under it; the
// threshold is one past the largest failing n. Failure at n = bound means no
// threshold <= bound exists, and the deepest failing tuple propagates out.
inline ThresholdNode probe_variable(const Polynomial& p,
                                    const std::optional<std::vector<Int>>& scaling,
                                    unsigned bound, std::vector<unsigned>& prefix) {
    const std::size_t var = prefix.size();
    const bool last = (var + 1 == p.arity());

    std::vector<std::optional<ThresholdNode>> child(bound + 1);
    std::vector<bool> good(bound + 1, false);
    std::vector<unsigned> failing_tuple;

    for (unsigned n = 1; n <= bound; ++n) {
        prefix.push_back(n);
        if (last) {
            if (positive_integer(witness_value(p, scaling, prefix))) {
                good[n] = true;
            } else if (n == bound) {
                failing_tuple = prefix;
            }
        } else {
            try {
                child[n] = probe_variable(p, scaling, bound, prefix);
                good[n] = true;
            } catch (const BoundExhaustedError& e) {
                if (n == bound) failing_tuple = e.counterexample();
            }
        }
        prefix.pop_back();
    }

    unsigned threshold = 1;
    for (unsigned n = bound; n >= 1; --n) {
        if (!good[n]) {
            threshold = n + 1;
            break;
        }
    }
    if (threshold > bound) {
        throw BoundExhaustedError(failing_tuple, "no threshold within the probe bound");
    }

    ThresholdNode node;
    node.threshold = threshold;
    if (!last) {
        node.children.reserve(bound - threshold + 1);
        for (unsigned n = threshold; n <= bound; ++n) node.children.push_back(std::move(*child[n]));
    }
    return node;
}

}  // namespace detail

/**
 * Bounded verification of the nested statement
 *
 *   exists t1, forall n1 >= t1, ..., exists tm, forall nm >= tm:
 *   P(n1*N1, ..., nm*Nm) is a positive integer
 *
 * probing the full grid [1, probe_bound]^m. Succeeds with the per-prefix
 * threshold table, or throws BoundExhaustedError carrying a failing tuple.
 */
inline DaggerWitness witness_thresholds(const Polynomial& p, unsigned probe_bound,
                                        std::optional<std::vector<Int>> scaling = std::nullopt) {
    if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "witness search needs a nonzero polynomial");
    if (p.arity() == 0) throw std::invalid_argument("witness search needs at least one variable");
    if (probe_bound < 1) throw std::invalid_argument("probe bound must be positive");
    if (scaling) {
        if (scaling->size() != p.arity()) {
            throw Error(Errc::ArityMismatch, "scaling vector length does not match arity");
        }
        for (const Int& f : *scaling) {
            if (f < 1) throw std::invalid_argument("scaling factors must be positive");
        }
    }

    std::vector<unsigned> prefix;
    DaggerWitness w;
    w.root = detail::probe_variable(p, scaling, probe_bound, prefix);
    w.verified_bound = probe_bound;
    w.scaling = std::move(scaling);
    return w;
}

namespace detail {

inline bool replay_node(const Polynomial& p, const DaggerWitness& w, const ThresholdNode& node,
                        std::vector<unsigned>& prefix) {
    const bool last = (prefix.size() + 1 == p.arity());
    for (unsigned n = node.threshold; n <= w.verified_bound; ++n) {
        prefix.push_back(n);
        bool ok;
        if (last) {
            ok = positive_integer(witness_value(p, w.scaling, prefix));
        } else {
            ok = replay_node(p, w, node.children[n - node.threshold], prefix);
        }
        prefix.pop_back();
        if (!ok) return false;
    }
    return true;
}

}  // namespace detail

/// Re-evaluates every tuple covered by the witness table; true iff each one
/// is a positive integer.
inline bool replay_witness(const Polynomial& p, const DaggerWitness& w) {
    std::vector<unsigned> prefix;
    return detail::replay_node(p, w, w.root, prefix);
}

}  // namespace lkram
