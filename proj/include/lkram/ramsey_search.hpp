#pragma once

/**
 * @file ramsey_search.hpp
 *
 * Exhaustive search over r-colorings of an integer interval for colorings
 * avoiding every monochromatic instance of a pattern family, plus the
 * derived minimal monochromaticity thresholds with verifiable certificates.
 *
 * The solver is chronological backtracking over elements in increasing
 * order, colors tried ascending, with unit-style propagation on the
 * "not all equal" hyperconstraints: an instance with all but one element
 * colored alike forbids that color on its last element. The first element's
 * color is pinned to 1 (color names are interchangeable), and the returned
 * certificate is the lexicographically least avoiding coloring.
 *
 * Parallel runs split the space into tasks by fixing the colors of the first
 * few undetermined elements, in lexicographic order. The task grid depends
 * only on (element count, r), and a run counts exactly the tasks up to and
 * including the first successful one, so reports — node counts included —
 * are identical for any worker count.
 */

#include "lkram/error.hpp"
#include "lkram/lk_algebra.hpp"
#include "lkram/numeric.hpp"
#include "lkram/pattern_gen.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <thread>
#include <variant>
#include <vector>

namespace lkram {

enum class DomainKind { Positive, Symmetric };

inline const char* domain_kind_name(DomainKind d) {
    return d == DomainKind::Positive ? "positive" : "symmetric";
}

struct DomainInterval {
    long long lo = 1;
    long long hi = 1;
    std::size_t size() const { return static_cast<std::size_t>(hi - lo + 1); }
};

/// [1..n] or [-n..n].
inline DomainInterval instantiate_domain(DomainKind kind, unsigned n) {
    if (n < 1) throw std::invalid_argument("domain scale must be positive");
    const auto hi = static_cast<long long>(n);
    return kind == DomainKind::Positive ? DomainInterval{1, hi} : DomainInterval{-hi, hi};
}

// ---------------------------------------------------------------------------
// Pattern family specifications

struct StarTripleSpec {
    LKParams params;
};

struct BrauerChainSpec {
    LKParams params;
    unsigned chain_length = 1;  // L
};

struct SymmetricDepthSpec {
    LKParams params;
    unsigned depth = 2;  // number of sequence elements per instance
};

struct DeuberShapeSpec {
    LKParams params;
    unsigned rows = 1;          // m
    unsigned exponent_cap = 1;  // L
};

struct MillikenTaylorSpec {
    std::vector<LKParams> params;
    CombinerFn combiner;
    unsigned seq_len = 2;
    unsigned max_block_size = 1;
};

struct PatternFamilySpec {
    using Generator =
        std::variant<StarTripleSpec, BrauerChainSpec, SymmetricDepthSpec, DeuberShapeSpec,
                     MillikenTaylorSpec>;
    Generator generator;
    bool require_distinct = true;
    DomainKind domain = DomainKind::Positive;
};

/// An instance is a set of >= 2 domain elements, stored strictly increasing.
using Instance = std::vector<Int>;

namespace detail {

inline bool in_domain(const Int& v, const DomainInterval& dom) {
    return v >= dom.lo && v <= dom.hi;
}

/// Applies the distinctness policy: under require_distinct the raw generator
/// outputs must be pairwise distinct; otherwise they are deduplicated.
/// Candidates that collapse below two elements never form an instance.
inline std::optional<Instance> admit(std::vector<Int> values, bool require_distinct) {
    std::sort(values.begin(), values.end());
    if (require_distinct) {
        if (std::adjacent_find(values.begin(), values.end()) != values.end()) return std::nullopt;
    } else {
        values.erase(std::unique(values.begin(), values.end()), values.end());
    }
    if (values.size() < 2) return std::nullopt;
    return values;
}

inline bool all_in_domain(std::span<const Int> values, const DomainInterval& dom) {
    for (const Int& v : values) {
        if (!in_domain(v, dom)) return false;
    }
    return true;
}

inline void require_domain_compatible(const LKParams& p, DomainKind kind) {
    if (kind == DomainKind::Positive && p.ell() < 0) {
        throw Error(Errc::DomainIncompatible,
                    "negative ell patterns live in the symmetric domain");
    }
}

/// All strictly increasing value tuples of the given length from the domain.
template <typename Fn>
void for_each_increasing_tuple(const DomainInterval& dom, unsigned length, Fn&& fn) {
    std::vector<Int> tuple(length);
    auto rec = [&](auto&& self, unsigned pos, long long next) -> void {
        if (pos == length) {
            fn(std::span<const Int>(tuple));
            return;
        }
        for (long long v = next; v <= dom.hi; ++v) {
            tuple[pos] = v;
            self(self, pos + 1, v + 1);
        }
    };
    rec(rec, 0, dom.lo);
}

/// All value tuples (repetition allowed) of the given length from the domain.
template <typename Fn>
void for_each_tuple(const DomainInterval& dom, unsigned length, Fn&& fn) {
    std::vector<Int> tuple(length);
    auto rec = [&](auto&& self, unsigned pos) -> void {
        if (pos == length) {
            fn(std::span<const Int>(tuple));
            return;
        }
        for (long long v = dom.lo; v <= dom.hi; ++v) {
            tuple[pos] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
}

/// All injective (ordered, repetition-free) tuples of the given length.
template <typename Fn>
void for_each_injective_tuple(const DomainInterval& dom, unsigned length, Fn&& fn) {
    std::vector<Int> tuple(length);
    std::vector<bool> used(dom.size(), false);
    auto rec = [&](auto&& self, unsigned pos) -> void {
        if (pos == length) {
            fn(std::span<const Int>(tuple));
            return;
        }
        for (long long v = dom.lo; v <= dom.hi; ++v) {
            auto slot = static_cast<std::size_t>(v - dom.lo);
            if (used[slot]) continue;
            used[slot] = true;
            tuple[pos] = v;
            self(self, pos + 1);
            used[slot] = false;
        }
    };
    rec(rec, 0);
}

}  // namespace detail

/**
 * All pattern instances whose every element lies in the instantiated domain,
 * deduplicated, in lexicographic order of the (sorted) element lists.
 */
inline std::vector<Instance> enumerate_instances(const PatternFamilySpec& spec, unsigned n) {
    if (n < 1) throw std::invalid_argument("instance scale must be positive");
    const DomainInterval dom = instantiate_domain(spec.domain, n);
    std::set<Instance> found;

    auto offer = [&](std::vector<Int> values) {
        if (!detail::all_in_domain(values, dom)) return;
        if (auto inst = detail::admit(std::move(values), spec.require_distinct)) {
            found.insert(std::move(*inst));
        }
    };

    if (const auto* st = std::get_if<StarTripleSpec>(&spec.generator)) {
        detail::require_domain_compatible(st->params, spec.domain);
        for (long long a = dom.lo; a <= dom.hi; ++a) {
            for (long long b = a; b <= dom.hi; ++b) {
                Int va(a), vb(b);
                offer({va, vb, star(st->params, va, vb)});
            }
        }
    } else if (const auto* bc = std::get_if<BrauerChainSpec>(&spec.generator)) {
        detail::require_domain_compatible(bc->params, spec.domain);
        for (long long a = dom.lo; a <= dom.hi; ++a) {
            for (long long b = dom.lo; b <= dom.hi; ++b) {
                offer(brauer_chain(bc->params, Int(a), Int(b), bc->chain_length).values);
            }
        }
    } else if (const auto* sd = std::get_if<SymmetricDepthSpec>(&spec.generator)) {
        detail::require_domain_compatible(sd->params, spec.domain);
        if (sd->depth < 1) throw std::invalid_argument("depth must be positive");
        detail::for_each_increasing_tuple(dom, sd->depth, [&](std::span<const Int> xs) {
            offer(symmetric_system(sd->params, xs, xs.size()).values);
        });
    } else if (const auto* ds = std::get_if<DeuberShapeSpec>(&spec.generator)) {
        detail::require_domain_compatible(ds->params, spec.domain);
        detail::for_each_tuple(dom, ds->rows + 1, [&](std::span<const Int> a) {
            auto set = deuber_config(ds->params, a, ds->exponent_cap);
            if (!set.degenerate.empty()) return;  // transforms in {0,1,-1} carry no content
            offer(std::move(set.values));
        });
    } else if (const auto* mt = std::get_if<MillikenTaylorSpec>(&spec.generator)) {
        for (const LKParams& p : mt->params) detail::require_domain_compatible(p, spec.domain);
        if (mt->seq_len < 1) throw std::invalid_argument("sequence length must be positive");
        if (mt->seq_len > dom.size()) return {};

        // positions sharing a parameter pair share one sequence
        const std::size_t m = mt->params.size();
        std::vector<std::size_t> group_of(m);
        std::vector<std::size_t> group_rep;
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t g = group_rep.size();
            for (std::size_t gi = 0; gi < group_rep.size(); ++gi) {
                if (mt->params[group_rep[gi]] == mt->params[j]) {
                    g = gi;
                    break;
                }
            }
            if (g == group_rep.size()) group_rep.push_back(j);
            group_of[j] = g;
        }

        std::vector<std::vector<Int>> group_seq(group_rep.size());
        auto emit_assignment = [&]() {
            std::vector<std::vector<Int>> xseqs(m);
            for (std::size_t j = 0; j < m; ++j) xseqs[j] = group_seq[group_of[j]];
            auto set = milliken_taylor_family(mt->params, mt->combiner, xseqs, mt->seq_len,
                                              mt->max_block_size);
            if (!set.rejects.empty()) return;  // non-integer outputs cannot be colored
            offer(std::move(set.values));
        };
        auto rec = [&](auto&& self, std::size_t g) -> void {
            if (g == group_rep.size()) {
                emit_assignment();
                return;
            }
            detail::for_each_injective_tuple(dom, mt->seq_len, [&](std::span<const Int> seq) {
                group_seq[g].assign(seq.begin(), seq.end());
                self(self, g + 1);
            });
        };
        rec(rec, 0);
    }

    return {found.begin(), found.end()};
}

// ---------------------------------------------------------------------------
// Coloring search

struct SearchBudget {
    std::optional<double> time_limit_seconds;
    std::optional<std::uint64_t> node_limit;
    unsigned workers = 1;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t instances = 0;
    double wall_seconds = 0.0;
};

struct ColoringCertificate {
    unsigned n = 0;
    unsigned r = 0;
    DomainKind domain = DomainKind::Positive;
    std::vector<std::uint8_t> colors;  // per element in domain order, values 1..r
};

namespace detail {

class NaeSolver {
public:
    NaeSolver(std::span<const Instance> instances, const DomainInterval& dom, unsigned r)
        : r_(r), elem_count_(dom.size()) {
        adj_.assign(elem_count_, {});
        insts_.reserve(instances.size());
        for (const Instance& inst : instances) {
            std::vector<std::uint32_t> idx;
            idx.reserve(inst.size());
            for (const Int& v : inst) {
                idx.push_back(static_cast<std::uint32_t>((v - dom.lo).convert_to<long long>()));
            }
            for (std::uint32_t e : idx) adj_[e].push_back(static_cast<std::uint32_t>(insts_.size()));
            insts_.push_back(std::move(idx));
        }
    }

    struct Outcome {
        bool found = false;
        bool aborted = false;
        std::vector<std::uint8_t> coloring;
        std::uint64_t nodes = 0;
    };

    Outcome solve(const SearchBudget& budget) const {
        unsigned split_depth = 0;
        std::size_t task_count = 1;
        while (split_depth < 3 && split_depth + 1 < elem_count_ && task_count * r_ <= 64) {
            ++split_depth;
            task_count *= r_;
        }

        std::vector<TaskResult> results(task_count);
        std::atomic<std::size_t> next_task{0};
        std::atomic<std::size_t> best_found{SIZE_MAX};
        std::atomic<std::uint64_t> global_nodes{0};
        const auto deadline =
            budget.time_limit_seconds
                ? std::optional(std::chrono::steady_clock::now() +
                                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(*budget.time_limit_seconds)))
                : std::optional<std::chrono::steady_clock::time_point>();

        auto worker = [&]() {
            while (true) {
                const std::size_t t = next_task.fetch_add(1, std::memory_order_relaxed);
                if (t >= task_count) break;
                if (t > best_found.load(std::memory_order_relaxed)) {
                    results[t].status = TaskResult::Skipped;
                    continue;
                }
                results[t] = run_task(t, split_depth, budget, deadline, global_nodes, best_found);
                if (results[t].status == TaskResult::Found) {
                    std::size_t cur = best_found.load(std::memory_order_relaxed);
                    while (t < cur &&
                           !best_found.compare_exchange_weak(cur, t, std::memory_order_relaxed)) {
                    }
                }
            }
        };

        const unsigned workers =
            std::max(1u, std::min<unsigned>(std::max(1u, budget.workers),
                                            static_cast<unsigned>(task_count)));
        if (workers == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        Outcome out;
        std::size_t best = SIZE_MAX;
        for (std::size_t t = 0; t < task_count; ++t) {
            if (results[t].status == TaskResult::Found) {
                best = t;
                break;
            }
        }
        if (best != SIZE_MAX) {
            for (std::size_t t = 0; t < best; ++t) {
                if (results[t].status != TaskResult::Refuted) {
                    out.aborted = true;  // budget ran out before the prefix was certified
                    return out;
                }
                out.nodes += results[t].nodes;
            }
            out.nodes += results[best].nodes;
            out.found = true;
            out.coloring = std::move(results[best].coloring);
            return out;
        }
        for (std::size_t t = 0; t < task_count; ++t) {
            if (results[t].status != TaskResult::Refuted) {
                out.aborted = true;
                return out;
            }
            out.nodes += results[t].nodes;
        }
        return out;
    }

private:
    struct TaskResult {
        enum Status { Refuted, Found, Aborted, Skipped };
        Status status = Refuted;
        std::vector<std::uint8_t> coloring;
        std::uint64_t nodes = 0;
    };

    struct TrailRec {
        std::uint32_t inst;
        std::uint32_t forbid_elem;
        std::uint8_t forbid_color;
        std::uint8_t flipped_mono;
        std::uint8_t forbade;
    };

    struct TaskState {
        std::vector<std::uint8_t> color;
        std::vector<std::uint32_t> count;
        std::vector<std::uint8_t> mono;
        std::vector<std::uint8_t> mono_color;
        std::vector<std::uint16_t> forbid;  // element * (r+1) + color
        std::vector<TrailRec> trail;
        std::vector<std::size_t> frames;
    };

    bool forbidden(const TaskState& st, std::size_t elem, std::uint8_t c) const {
        return st.forbid[elem * (r_ + 1) + c] != 0;
    }

    void assign(TaskState& st, std::size_t elem, std::uint8_t c) const {
        st.frames.push_back(st.trail.size());
        st.color[elem] = c;
        for (std::uint32_t i : adj_[elem]) {
            TrailRec rec{i, 0, 0, 0, 0};
            ++st.count[i];
            if (st.mono[i]) {
                if (st.count[i] == 1) {
                    st.mono_color[i] = c;
                } else if (st.mono_color[i] != c) {
                    st.mono[i] = 0;
                    rec.flipped_mono = 1;
                }
                if (st.mono[i] && st.count[i] + 1 == insts_[i].size()) {
                    const std::uint32_t last = insts_[i].back();
                    ++st.forbid[last * (r_ + 1) + st.mono_color[i]];
                    rec.forbade = 1;
                    rec.forbid_elem = last;
                    rec.forbid_color = st.mono_color[i];
                }
            }
            st.trail.push_back(rec);
        }
    }

    void unassign(TaskState& st, std::size_t elem) const {
        const std::size_t start = st.frames.back();
        st.frames.pop_back();
        for (std::size_t k = st.trail.size(); k-- > start;) {
            const TrailRec& rec = st.trail[k];
            --st.count[rec.inst];
            if (rec.flipped_mono) st.mono[rec.inst] = 1;
            if (rec.forbade) --st.forbid[rec.forbid_elem * (r_ + 1) + rec.forbid_color];
        }
        st.trail.resize(start);
        st.color[elem] = 0;
    }

    TaskResult run_task(std::size_t task_index, unsigned split_depth, const SearchBudget& budget,
                        const std::optional<std::chrono::steady_clock::time_point>& deadline,
                        std::atomic<std::uint64_t>& global_nodes,
                        std::atomic<std::size_t>& best_found) const {
        TaskState st;
        st.color.assign(elem_count_, 0);
        st.count.assign(insts_.size(), 0);
        st.mono.assign(insts_.size(), 1);
        st.mono_color.assign(insts_.size(), 0);
        st.forbid.assign(elem_count_ * (r_ + 1), 0);

        TaskResult res;
        enum { FOUND = 1, EXHAUSTED = 0, ABORT = 2 };

        auto note_node = [&]() -> bool {  // false => abort
            ++res.nodes;
            const std::uint64_t g = global_nodes.fetch_add(1, std::memory_order_relaxed) + 1;
            if (budget.node_limit && g > *budget.node_limit) return false;
            if ((res.nodes & 1023u) == 0) {
                if (deadline && std::chrono::steady_clock::now() >= *deadline) return false;
                if (task_index > best_found.load(std::memory_order_relaxed)) return false;
            }
            return true;
        };

        // pinned prefix: element 0 gets color 1, elements 1..split_depth get
        // the task's digits (most significant first => tasks in lex order)
        std::vector<std::uint8_t> prefix(split_depth + 1, 1);
        std::size_t t = task_index;
        for (unsigned q = split_depth; q >= 1; --q) {
            prefix[q] = static_cast<std::uint8_t>(t % r_ + 1);
            t /= r_;
        }
        for (std::size_t e = 0; e < prefix.size() && e < elem_count_; ++e) {
            if (forbidden(st, e, prefix[e])) return res;  // Refuted
            if (!note_node()) {
                res.status = TaskResult::Aborted;
                return res;
            }
            assign(st, e, prefix[e]);
        }

        auto dfs = [&](auto&& self, std::size_t e) -> int {
            if (e == elem_count_) return FOUND;
            for (std::uint8_t c = 1; c <= r_; ++c) {
                if (forbidden(st, e, c)) continue;
                if (!note_node()) return ABORT;
                assign(st, e, c);
                const int sub = self(self, e + 1);
                if (sub == FOUND) return FOUND;
                unassign(st, e);
                if (sub == ABORT) return ABORT;
            }
            return EXHAUSTED;
        };

        const int outcome = dfs(dfs, std::min<std::size_t>(prefix.size(), elem_count_));
        if (outcome == FOUND) {
            res.status = TaskResult::Found;
            res.coloring = st.color;
        } else if (outcome == ABORT) {
            res.status = TaskResult::Aborted;
        }
        return res;
    }

    unsigned r_;
    std::size_t elem_count_;
    std::vector<std::vector<std::uint32_t>> insts_;
    std::vector<std::vector<std::uint32_t>> adj_;
};

inline void check_color_count(unsigned r) {
    if (r < 1 || r > 250) throw std::invalid_argument("color count must be in [1, 250]");
}

}  // namespace detail

/**
 * Lexicographically least r-coloring of the instantiated domain at scale n
 * avoiding all monochromatic instances, or nullopt when exhaustive search
 * refutes every coloring. Throws on budget exhaustion.
 */
inline std::optional<ColoringCertificate> find_avoiding_coloring(const PatternFamilySpec& spec,
                                                                 unsigned n, unsigned r,
                                                                 const SearchBudget& budget = {},
                                                                 SearchStats* stats = nullptr) {
    detail::check_color_count(r);
    const auto instances = enumerate_instances(spec, n);
    const DomainInterval dom = instantiate_domain(spec.domain, n);
    detail::NaeSolver solver(instances, dom, r);
    const auto outcome = solver.solve(budget);
    if (stats) {
        stats->nodes += outcome.nodes;
        stats->instances += instances.size();
    }
    if (outcome.aborted) {
        throw Error(Errc::BudgetExhausted, "coloring search ran out of budget");
    }
    if (!outcome.found) return std::nullopt;
    return ColoringCertificate{n, r, spec.domain, outcome.coloring};
}

struct SearchReport {
    PatternFamilySpec spec;
    unsigned r = 2;
    bool threshold_found = false;
    unsigned bound = 0;  // minimal n when found, else the largest completed n
    std::optional<ColoringCertificate> certificate_at;  // bound-1 when found, else bound
    SearchStats stats;
    bool budget_exhausted = false;
};

/**
 * Scans n upward. Instances at scale n are a subset of those at n+1, so the
 * first n admitting no avoiding coloring is the minimal threshold; if every
 * n <= n_max admits one, reports no-threshold-up-to with the last certificate.
 */
inline SearchReport min_ramsey_threshold(const PatternFamilySpec& spec, unsigned r, unsigned n_max,
                                         const SearchBudget& budget = {}) {
    detail::check_color_count(r);
    if (n_max < 1) throw std::invalid_argument("n_max must be positive");

    SearchReport report{spec, r, false, 0, std::nullopt, SearchStats{}, false};
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    std::optional<ColoringCertificate> prev;
    for (unsigned n = 1; n <= n_max; ++n) {
        SearchBudget step = budget;
        if (budget.time_limit_seconds) {
            step.time_limit_seconds = *budget.time_limit_seconds - elapsed();
            if (*step.time_limit_seconds <= 0) step.time_limit_seconds = 0.0;
        }
        if (budget.node_limit) {
            step.node_limit = *budget.node_limit > report.stats.nodes
                                  ? *budget.node_limit - report.stats.nodes
                                  : 0;
        }

        const auto instances = enumerate_instances(spec, n);
        const DomainInterval dom = instantiate_domain(spec.domain, n);
        detail::NaeSolver solver(instances, dom, r);
        const auto outcome = solver.solve(step);
        report.stats.instances += instances.size();
        report.stats.nodes += outcome.nodes;

        if (outcome.aborted) {
            report.budget_exhausted = true;
            report.bound = n - 1;
            report.certificate_at = std::move(prev);
            report.stats.wall_seconds = elapsed();
            return report;
        }
        if (!outcome.found) {
            report.threshold_found = true;
            report.bound = n;
            report.certificate_at = std::move(prev);
            report.stats.wall_seconds = elapsed();
            return report;
        }
        prev = ColoringCertificate{n, r, spec.domain, outcome.coloring};
    }
    report.bound = n_max;
    report.certificate_at = std::move(prev);
    report.stats.wall_seconds = elapsed();
    return report;
}

/// Checks a certificate against a fresh enumeration of the instances (no
/// search-time state is reused). True iff no instance is monochromatic.
inline bool verify_certificate(const PatternFamilySpec& spec, const ColoringCertificate& cert) {
    if (cert.n < 1 || cert.r < 1) {
        throw Error(Errc::MalformedCertificate, "bad scale or color count");
    }
    if (cert.domain != spec.domain) {
        throw Error(Errc::MalformedCertificate, "certificate domain does not match the spec");
    }
    const DomainInterval dom = instantiate_domain(cert.domain, cert.n);
    if (cert.colors.size() != dom.size()) {
        throw Error(Errc::MalformedCertificate, "color sequence length does not match the domain");
    }
    for (std::uint8_t c : cert.colors) {
        if (c < 1 || c > cert.r) {
            throw Error(Errc::MalformedCertificate, "color out of range");
        }
    }

    for (const Instance& inst : enumerate_instances(spec, cert.n)) {
        const auto color_of = [&](const Int& v) {
            return cert.colors[static_cast<std::size_t>((v - dom.lo).convert_to<long long>())];
        };
        const std::uint8_t first = color_of(inst[0]);
        bool mono = true;
        for (std::size_t i = 1; i < inst.size() && mono; ++i) {
            mono = color_of(inst[i]) == first;
        }
        if (mono) return false;
    }
    return true;
}

}  // namespace lkram
