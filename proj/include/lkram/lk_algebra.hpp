#pragma once

/**
 * @file lk_algebra.hpp
 *
 * The affine-conjugated semigroup operations on the integers.
 *
 * For ell != 0 with ell | k(k-1), the range of T(a) = ell*a + k is closed
 * under multiplication, and pulling multiplication back through T yields the
 * commutative, associative operation
 *
 *     a (*) b  =  ell*a*b + k*(a+b) + k*(k-1)/ell.
 *
 * Two degenerate parameter pairs extend the family: (ell,0) gives the scaled
 * product ell*a*b, and (0,1) gives ordinary addition. Special elements
 * (absorbing zero, identity, the order-2 unit), finite orders, and the
 * cancellative subsemigroup regions all transport through T from (Z, *).
 *
 * For the extended kinds the special-element record is a minimal extension:
 * Sum has identity 0 and nothing else; ScaledProduct has zero 0 and an
 * identity only when ell = 1.
 */

#include "lkram/error.hpp"
#include "lkram/numeric.hpp"

#include <optional>
#include <span>
#include <vector>

namespace lkram {

enum class OpKind { General, ScaledProduct, Sum };

inline const char* op_kind_name(OpKind k) {
    switch (k) {
        case OpKind::General: return "general";
        case OpKind::ScaledProduct: return "scaled_product";
        case OpKind::Sum: return "sum";
    }
    return "?";
}

/// Validated parameter pair (ell, k). Construction goes through validate();
/// the General kind caches the exact constant k(k-1)/ell.
class LKParams {
public:
    static LKParams validate(Int ell, Int k) {
        if (ell.is_zero()) {
            if (k == 1) return LKParams(std::move(ell), std::move(k), OpKind::Sum, 0);
            throw Error(Errc::InvalidParams, "ell=0 requires k=1, got k=" + k.str());
        }
        if (k.is_zero()) {
            return LKParams(std::move(ell), std::move(k), OpKind::ScaledProduct, 0);
        }
        Int kk = k * (k - 1);
        if (!divides(ell, kk)) {
            throw Error(Errc::InvalidParams,
                        "ell=" + ell.str() + " does not divide k(k-1)=" + kk.str());
        }
        Int c0 = div_exact(kk, ell);
        return LKParams(std::move(ell), std::move(k), OpKind::General, std::move(c0));
    }

    const Int& ell() const noexcept { return ell_; }
    const Int& k() const noexcept { return k_; }
    OpKind kind() const noexcept { return kind_; }

    /// k(k-1)/ell, the constant term of the General-kind operation.
    const Int& affine_constant() const noexcept { return c0_; }

    bool operator==(const LKParams& o) const noexcept {
        return ell_ == o.ell_ && k_ == o.k_;
    }

private:
    LKParams(Int ell, Int k, OpKind kind, Int c0)
        : ell_(std::move(ell)), k_(std::move(k)), c0_(std::move(c0)), kind_(kind) {}

    Int ell_;
    Int k_;
    Int c0_;
    OpKind kind_;
};

/// T(a) = ell*a + k. Undefined for the Sum kind (ell = 0 is not affine-invertible).
inline Int transform(const LKParams& p, const Int& a) {
    if (p.kind() == OpKind::Sum) {
        throw Error(Errc::UndefinedTransform, "transform is undefined for the sum kind");
    }
    return p.ell() * a + p.k();
}

inline Int star(const LKParams& p, const Int& a, const Int& b) {
    switch (p.kind()) {
        case OpKind::Sum:
            return a + b;
        case OpKind::ScaledProduct:
            return p.ell() * a * b;
        case OpKind::General:
            return p.ell() * a * b + p.k() * (a + b) + p.affine_constant();
    }
    throw std::logic_error("star: bad kind");
}

/// Left fold of star over a nonempty sequence.
inline Int iterated_star(const LKParams& p, std::span<const Int> xs) {
    if (xs.empty()) throw Error(Errc::EmptyInput, "iterated_star needs at least one value");
    Int acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc = star(p, acc, xs[i]);
    return acc;
}

/**
 * Evaluates the symmetric-polynomial form
 *
 *   sum_{j=1..n} ell^{j-1} k^{n-j} e_j(xs) + (k^n - k)/ell
 *
 * where e_j are the elementary symmetric polynomials, extracted as the
 * coefficients of prod_i (t + x_i). This path shares no code with
 * iterated_star and serves as its algebraic cross-check; the two must agree
 * on every input.
 */
inline Int symmetric_poly_eval(const LKParams& p, std::span<const Int> xs) {
    if (p.kind() != OpKind::General) {
        throw Error(Errc::UndefinedForKind, "symmetric evaluation requires the general kind");
    }
    if (xs.empty()) throw Error(Errc::EmptyInput, "symmetric_poly_eval needs at least one value");

    const std::size_t n = xs.size();
    std::vector<Int> e(n + 1);  // e[j] tracks e_j of the prefix processed so far
    e[0] = 1;
    std::size_t used = 0;
    for (const Int& x : xs) {
        ++used;
        for (std::size_t j = used; j >= 1; --j) e[j] += x * e[j - 1];
    }

    // ell | k(k-1) implies ell | k^n - k, so this division is exact.
    Int acc = div_exact(pow_int(p.k(), n) - p.k(), p.ell());
    for (std::size_t j = 1; j <= n; ++j) {
        acc += pow_int(p.ell(), j - 1) * pow_int(p.k(), n - j) * e[j];
    }
    return acc;
}

struct SpecialElements {
    std::optional<Int> zero;         // absorbing: zero (*) a = zero
    std::optional<Int> identity;     // neutral: identity (*) a = a
    std::optional<Int> second_unit;  // the one invertible element != identity; squares to it
};

/// Special elements of (Z, star). General kind: each is present exactly when
/// the corresponding divisibility holds (z = -k/ell, u = -(k-1)/ell,
/// u' = -(k+1)/ell). Extended kinds get the minimal extension described in
/// the file comment.
inline SpecialElements special_elements(const LKParams& p) {
    SpecialElements s;
    switch (p.kind()) {
        case OpKind::Sum:
            s.identity = 0;
            return s;
        case OpKind::ScaledProduct:
            s.zero = 0;
            if (p.ell() == 1) s.identity = 1;
            return s;
        case OpKind::General:
            if (divides(p.ell(), p.k())) s.zero = div_exact(-p.k(), p.ell());
            if (divides(p.ell(), p.k() - 1)) s.identity = div_exact(-(p.k() - 1), p.ell());
            if (divides(p.ell(), p.k() + 1)) s.second_unit = div_exact(-(p.k() + 1), p.ell());
            return s;
    }
    throw std::logic_error("special_elements: bad kind");
}

/// n-fold star power; a^(0) is the identity when one exists.
inline Int power(const LKParams& p, const Int& a, unsigned long long n) {
    if (n == 0) {
        const auto s = special_elements(p);
        if (!s.identity) {
            throw Error(Errc::NoIdentity, "power with exponent 0 requires an identity element");
        }
        return *s.identity;
    }
    Int acc = a;
    for (unsigned long long i = 1; i < n; ++i) acc = star(p, acc, a);
    return acc;
}

enum class ElementOrder { Order1, Order2, Infinite };

/// Order of the subsemigroup generated by a. Only the zero and the identity
/// have order 1, only the second unit has order 2; everything else is infinite.
inline ElementOrder order_of(const LKParams& p, const Int& a) {
    if (p.kind() != OpKind::General) {
        throw Error(Errc::UndefinedForKind, "order_of requires the general kind");
    }
    const auto s = special_elements(p);
    if ((s.zero && a == *s.zero) || (s.identity && a == *s.identity)) return ElementOrder::Order1;
    if (s.second_unit && a == *s.second_unit && (!s.identity || *s.second_unit != *s.identity)) {
        return ElementOrder::Order2;
    }
    return ElementOrder::Infinite;
}

/// Cancellative subsemigroup regions of (Z, star), general kind.
struct Region {
    enum class Tag { NoZero, NoZeroNoU2, NoZeroNoU2NoU, RightOfZero, AtLeastShifted };

    Tag tag;
    Int shift;  // the N of AtLeastShifted; unused otherwise

    static Region no_zero() { return {Tag::NoZero, 0}; }
    static Region no_zero_no_u2() { return {Tag::NoZeroNoU2, 0}; }
    static Region no_zero_no_u2_no_u() { return {Tag::NoZeroNoU2NoU, 0}; }
    static Region right_of_zero() { return {Tag::RightOfZero, 0}; }
    static Region at_least_shifted(Int n) {
        if (n <= 0) throw Error(Errc::InvalidParams, "region shift must be positive");
        return {Tag::AtLeastShifted, std::move(n)};
    }
};

/**
 * Region membership. Thresholds like a >= -k/ell + N/ell are rational; the
 * comparisons below are their exact denominator-cleared forms in terms of
 * T(a) = ell*a + k (valid because the threshold regions require ell > 0,
 * and the excluded points are T-preimages of 0, -1, 1).
 */
inline bool region_member(const LKParams& p, const Region& r, const Int& a) {
    if (p.kind() != OpKind::General) {
        throw Error(Errc::UndefinedForKind, "region_member requires the general kind");
    }
    const Int t = transform(p, a);
    switch (r.tag) {
        case Region::Tag::NoZero:
            return t != 0;
        case Region::Tag::NoZeroNoU2:
            return t != 0 && t != -1;
        case Region::Tag::NoZeroNoU2NoU:
            return t != 0 && t != -1 && t != 1;
        case Region::Tag::RightOfZero:
            if (p.ell() <= 0) {
                throw Error(Errc::RegionRequiresPositiveEll, "RightOfZero requires ell > 0");
            }
            return t > 0;
        case Region::Tag::AtLeastShifted:
            if (p.ell() <= 0) {
                throw Error(Errc::RegionRequiresPositiveEll, "AtLeastShifted requires ell > 0");
            }
            return t >= r.shift;
    }
    throw std::logic_error("region_member: bad tag");
}

}  // namespace lkram
