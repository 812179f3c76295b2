#pragma once

/**
 * @file pattern_gen.hpp
 *
 * Generators for the monochromatic pattern families, emitted as explicit
 * finite value lists with full provenance:
 *
 *  - symmetric systems: one iterated-star value per increasing index subset;
 *  - Deuber-style configurations: (T(a_j) * prod T(a_s)^{nu_s} - k) / ell
 *    over exponent vectors nu in {0..L}^j;
 *  - Brauer-style chains: a, b, and the chain (T(a) * T(b)^j - k) / ell;
 *  - Milliken-Taylor families: a combining function applied to per-block
 *    star values over ordered block tuples F_1 < ... < F_m.
 *
 * The infinitary statements are truncated explicitly: callers pass subset /
 * index / exponent bounds, and every enumeration order is deterministic so
 * emitted reports are reproducible byte for byte.
 */

#include "lkram/error.hpp"
#include "lkram/lk_algebra.hpp"
#include "lkram/numeric.hpp"
#include "lkram/poly_text.hpp"
#include "lkram/polyring.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lkram {

// ---------------------------------------------------------------------------
// Provenance records: each one determines its value via the generator formula.

struct SubsetProvenance {
    std::vector<std::size_t> indices;  // 1-based positions into xs, increasing
    bool operator==(const SubsetProvenance&) const = default;
};

struct DeuberProvenance {
    std::size_t j = 0;                // 0 means the base element a_0
    std::vector<unsigned> exponents;  // nu_0 .. nu_{j-1}
    bool operator==(const DeuberProvenance&) const = default;
};

struct BrauerProvenance {
    enum class Role { Base, Multiplier, Chain };
    Role role = Role::Base;
    unsigned link = 0;  // j for Chain entries
    bool operator==(const BrauerProvenance&) const = default;
};

struct BlockProvenance {
    std::vector<std::vector<std::size_t>> blocks;  // 1-based indices, increasing
    bool operator==(const BlockProvenance&) const = default;
};

using Provenance = std::variant<SubsetProvenance, DeuberProvenance, BrauerProvenance, BlockProvenance>;

/// A combiner output that was not an integer; reported, never silently dropped.
struct RejectedTuple {
    BlockProvenance blocks;
    Rat value;
};

struct PatternValueSet {
    std::string generator;
    std::vector<Int> values;
    std::vector<Provenance> provenance;      // parallel to values
    bool distinct = true;                    // values pairwise distinct?
    std::vector<RejectedTuple> rejects;      // Milliken-Taylor non-integer outputs
    std::vector<std::size_t> degenerate;     // Deuber positions j with T(a_j) in {0,1,-1}
};

namespace detail {

inline bool pairwise_distinct(std::span<const Int> xs) {
    std::vector<Int> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

/// Nonempty subsets of {1..n} with size <= max_size, ordered by size then by
/// lexicographic index list.
inline std::vector<std::vector<std::size_t>> subsets_by_size(std::size_t n, std::size_t max_size) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 1; s <= std::min(n, max_size); ++s) {
        std::vector<std::size_t> combo(s);
        for (std::size_t i = 0; i < s; ++i) combo[i] = i + 1;
        while (true) {
            out.push_back(combo);
            // advance to the next combination in lex order
            std::size_t i = s;
            while (i-- > 0) {
                if (combo[i] < n - (s - 1 - i)) {
                    ++combo[i];
                    for (std::size_t j = i + 1; j < s; ++j) combo[j] = combo[j - 1] + 1;
                    break;
                }
                if (i == 0) goto next_size;
            }
        }
    next_size:;
    }
    return out;
}

}  // namespace detail

/// Values of the symmetric system over all increasing index subsets of xs of
/// size at most max_subset_size, in size-then-lex subset order.
inline PatternValueSet symmetric_system(const LKParams& p, std::span<const Int> xs,
                                        std::size_t max_subset_size) {
    if (!detail::pairwise_distinct(xs)) {
        throw Error(Errc::NotInjective, "symmetric_system needs pairwise distinct inputs");
    }
    if (max_subset_size < 1) throw std::invalid_argument("max_subset_size must be positive");

    PatternValueSet out;
    out.generator = "symmetric";
    for (const auto& subset : detail::subsets_by_size(xs.size(), max_subset_size)) {
        std::vector<Int> picked;
        picked.reserve(subset.size());
        for (std::size_t i : subset) picked.push_back(xs[i - 1]);
        out.values.push_back(iterated_star(p, picked));
        out.provenance.push_back(SubsetProvenance{subset});
    }
    out.distinct = detail::pairwise_distinct(out.values);
    return out;
}

inline Int regenerate_symmetric(const LKParams& p, std::span<const Int> xs,
                                const SubsetProvenance& prov) {
    std::vector<Int> picked;
    picked.reserve(prov.indices.size());
    for (std::size_t i : prov.indices) picked.push_back(xs[i - 1]);
    return iterated_star(p, picked);
}

inline Int regenerate_deuber(const LKParams& p, std::span<const Int> a, const DeuberProvenance& prov) {
    Int prod = transform(p, a[prov.j]);
    for (std::size_t s = 0; s < prov.exponents.size(); ++s) {
        prod *= pow_int(transform(p, a[s]), prov.exponents[s]);
    }
    return div_exact(prod - p.k(), p.ell());
}

/**
 * Deuber-style configuration on elements a_0..a_m: the base a_0, then for
 * each j = 1..m and each exponent vector nu in {0..L}^j (lexicographic,
 * first coordinate most significant) the value with T-image
 * T(a_j) * prod_{s<j} T(a_s)^{nu_s}. Positions whose T-image lies in
 * {0, 1, -1} are reported as degenerate; strict mode turns that into an error.
 */
inline PatternValueSet deuber_config(const LKParams& p, std::span<const Int> a, unsigned level_cap,
                                     bool strict = false) {
    if (p.kind() != OpKind::General) {
        throw Error(Errc::UndefinedForKind, "deuber_config requires the general kind");
    }
    if (a.empty()) throw Error(Errc::EmptyInput, "deuber_config needs at least a_0");

    PatternValueSet out;
    out.generator = "deuber";
    for (std::size_t j = 0; j < a.size(); ++j) {
        Int t = transform(p, a[j]);
        if (t == 0 || t == 1 || t == -1) {
            if (strict) {
                throw DegenerateElementError(j, "element " + std::to_string(j) +
                                                    " has transform in {0,1,-1}");
            }
            out.degenerate.push_back(j);
        }
    }

    out.values.push_back(a[0]);
    out.provenance.push_back(DeuberProvenance{0, {}});

    const std::size_t m = a.size() - 1;
    for (std::size_t j = 1; j <= m; ++j) {
        std::vector<unsigned> nu(j, 0u);
        while (true) {
            DeuberProvenance prov{j, nu};
            out.values.push_back(regenerate_deuber(p, a, prov));
            out.provenance.push_back(std::move(prov));
            // odometer: last coordinate fastest, so the order is lexicographic
            std::size_t i = j;
            while (i-- > 0) {
                if (nu[i] < level_cap) {
                    ++nu[i];
                    std::fill(nu.begin() + static_cast<std::ptrdiff_t>(i) + 1, nu.end(), 0u);
                    break;
                }
                if (i == 0) goto next_j;
            }
        }
    next_j:;
    }
    out.distinct = detail::pairwise_distinct(out.values);
    return out;
}

inline Int regenerate_brauer(const LKParams& p, const Int& a, const Int& b,
                             const BrauerProvenance& prov) {
    switch (prov.role) {
        case BrauerProvenance::Role::Base: return a;
        case BrauerProvenance::Role::Multiplier: return b;
        case BrauerProvenance::Role::Chain:
            return div_exact(transform(p, a) * pow_int(transform(p, b), prov.link) - p.k(), p.ell());
    }
    throw std::logic_error("regenerate_brauer: bad role");
}

/// Brauer-style chain [a, b, c_1, ..., c_L] with T(c_j) = T(a) * T(b)^j.
/// Collisions are reported via the distinct flag, not enforced.
inline PatternValueSet brauer_chain(const LKParams& p, const Int& a, const Int& b, unsigned length) {
    if (p.kind() != OpKind::General) {
        throw Error(Errc::UndefinedForKind, "brauer_chain requires the general kind");
    }
    PatternValueSet out;
    out.generator = "brauer";
    out.values.push_back(a);
    out.provenance.push_back(BrauerProvenance{BrauerProvenance::Role::Base, 0});
    out.values.push_back(b);
    out.provenance.push_back(BrauerProvenance{BrauerProvenance::Role::Multiplier, 0});
    for (unsigned j = 1; j <= length; ++j) {
        BrauerProvenance prov{BrauerProvenance::Role::Chain, j};
        out.values.push_back(regenerate_brauer(p, a, b, prov));
        out.provenance.push_back(prov);
    }
    out.distinct = detail::pairwise_distinct(out.values);
    return out;
}

/// Combining function for Milliken-Taylor families: either an exact
/// polynomial or an opaque evaluator (used for non-polynomial combiners like
/// floor/fractional-part expressions). Integrality is checked at use sites.
class CombinerFn {
public:
    static CombinerFn from_polynomial(Polynomial p) {
        CombinerFn f;
        f.arity_ = p.arity();
        f.description_ = serialize_polynomial(p);
        f.poly_ = std::move(p);
        return f;
    }

    static CombinerFn from_evaluator(std::size_t arity, std::function<Rat(std::span<const Int>)> fn,
                                     std::string description = "<opaque>") {
        CombinerFn f;
        f.arity_ = arity;
        f.eval_ = std::move(fn);
        f.description_ = std::move(description);
        return f;
    }

    std::size_t arity() const noexcept { return arity_; }
    const std::string& description() const noexcept { return description_; }
    const Polynomial* polynomial() const noexcept { return poly_ ? &*poly_ : nullptr; }

    Rat operator()(std::span<const Int> args) const {
        if (args.size() != arity_) {
            throw Error(Errc::ArityMismatch, "combiner arity does not match argument count");
        }
        if (poly_) return poly_->evaluate_at(args);
        return eval_(args);
    }

private:
    CombinerFn() = default;
    std::size_t arity_ = 0;
    std::optional<Polynomial> poly_;
    std::function<Rat(std::span<const Int>)> eval_;
    std::string description_;
};

struct IndexBlockTuple {
    std::vector<std::vector<std::size_t>> blocks;  // nonempty, internally increasing, separated
};

/**
 * All tuples of m nonempty blocks from {1..n}, each of size at most
 * max_block_size, with max of one block below min of the next. Emitted in a
 * fixed order: by total index count, then lexicographically by the
 * concatenated index list, then by the block-size vector.
 */
inline std::vector<IndexBlockTuple> enumerate_ordered_blocks(std::size_t n, std::size_t m,
                                                             std::size_t max_block_size) {
    if (m < 1) throw std::invalid_argument("need at least one block");
    std::vector<IndexBlockTuple> out;
    if (max_block_size < 1 || n < m) return out;

    const std::size_t max_total = std::min(n, m * max_block_size);
    std::vector<std::size_t> sizes(m);

    // compositions of `total` into m parts within [1, max_block_size], lex order
    auto emit_compositions = [&](const std::vector<std::size_t>& combo, std::size_t total,
                                 auto&& self, std::size_t pos, std::size_t used) -> void {
        if (pos + 1 == m) {
            std::size_t last = total - used;
            if (last < 1 || last > max_block_size) return;
            sizes[pos] = last;
            IndexBlockTuple tuple;
            std::size_t at = 0;
            for (std::size_t b = 0; b < m; ++b) {
                tuple.blocks.emplace_back(combo.begin() + static_cast<std::ptrdiff_t>(at),
                                          combo.begin() + static_cast<std::ptrdiff_t>(at + sizes[b]));
                at += sizes[b];
            }
            out.push_back(std::move(tuple));
            return;
        }
        const std::size_t remaining_slots = m - pos - 1;
        for (std::size_t s = 1; s <= max_block_size; ++s) {
            if (used + s + remaining_slots > total) break;
            if (total - used - s > remaining_slots * max_block_size) continue;
            sizes[pos] = s;
            self(combo, total, self, pos + 1, used + s);
        }
    };

    for (std::size_t total = m; total <= max_total; ++total) {
        std::vector<std::size_t> combo(total);
        for (std::size_t i = 0; i < total; ++i) combo[i] = i + 1;
        while (true) {
            emit_compositions(combo, total, emit_compositions, 0, 0);
            std::size_t i = total;
            bool advanced = false;
            while (i-- > 0) {
                if (combo[i] < n - (total - 1 - i)) {
                    ++combo[i];
                    for (std::size_t j = i + 1; j < total; ++j) combo[j] = combo[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }
    return out;
}

inline Rat combine_block_tuple(std::span<const LKParams> ps, const CombinerFn& f,
                               std::span<const std::vector<Int>> xseqs,
                               const BlockProvenance& prov) {
    std::vector<Int> args(ps.size());
    for (std::size_t j = 0; j < ps.size(); ++j) {
        std::vector<Int> picked;
        picked.reserve(prov.blocks[j].size());
        for (std::size_t idx : prov.blocks[j]) picked.push_back(xseqs[j][idx - 1]);
        args[j] = iterated_star(ps[j], picked);
    }
    return f(args);
}

/**
 * Milliken-Taylor family: applies the combiner to per-block star values over
 * every ordered block tuple inside {1..index_bound}. Tuples whose combined
 * value is not an integer land in the rejects list. Sequences attached to
 * equal parameter pairs must be identical.
 */
inline PatternValueSet milliken_taylor_family(std::span<const LKParams> ps, const CombinerFn& f,
                                              std::span<const std::vector<Int>> xseqs,
                                              std::size_t index_bound,
                                              std::size_t max_block_size = 0) {
    const std::size_t m = ps.size();
    if (m == 0) throw Error(Errc::EmptyInput, "need at least one parameter pair");
    if (f.arity() != m) {
        throw Error(Errc::ArityMismatch, "combiner arity does not match parameter count");
    }
    if (xseqs.size() != m) {
        throw Error(Errc::SequenceMismatch, "need one sequence per parameter pair");
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (xseqs[j].size() < index_bound) {
            throw std::invalid_argument("sequence " + std::to_string(j + 1) +
                                        " is shorter than the index bound");
        }
        if (!detail::pairwise_distinct(xseqs[j])) {
            throw Error(Errc::NotInjective, "sequence " + std::to_string(j + 1) + " is not injective");
        }
        for (std::size_t jj = 0; jj < j; ++jj) {
            if (ps[j] == ps[jj] &&
                !std::equal(xseqs[j].begin(), xseqs[j].end(), xseqs[jj].begin(), xseqs[jj].end())) {
                throw Error(Errc::SequenceMismatch,
                            "equal parameter pairs must share one sequence");
            }
        }
    }
    if (max_block_size == 0) max_block_size = index_bound;

    PatternValueSet out;
    out.generator = "mt";
    for (const auto& tuple : enumerate_ordered_blocks(index_bound, m, max_block_size)) {
        BlockProvenance prov{tuple.blocks};
        Rat v = combine_block_tuple(ps, f, xseqs, prov);
        if (is_integer(v)) {
            out.values.push_back(to_integer(v));
            out.provenance.push_back(std::move(prov));
        } else {
            out.rejects.push_back(RejectedTuple{std::move(prov), std::move(v)});
        }
    }
    out.distinct = detail::pairwise_distinct(out.values);
    return out;
}

}  // namespace lkram
