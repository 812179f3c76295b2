#pragma once

/**
 * @file laws.hpp
 *
 * Randomized checker for the algebraic laws of the star operations:
 * associativity, commutativity, conjugation through T, the two evaluation
 * routes agreeing, special-element identities, region closure,
 * cancellativity, and the power law. Sampling is seeded and deterministic.
 * A fault-injection switch perturbs the operation so harness failures are
 * themselves testable.
 */

#include "lkram/lk_algebra.hpp"
#include "lkram/numeric.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace lkram {

struct LawReport {
    std::string law;
    std::uint64_t samples = 0;
    bool pass = true;
    bool skipped = false;  // not applicable for this parameter kind
    std::string counterexample;
};

struct LawSuiteOptions {
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    long long magnitude = 1000000;  // samples drawn from [-magnitude, magnitude]
    bool corrupt_star = false;      // fault injection for harness self-tests
};

inline std::vector<LawReport> run_law_suite(const LKParams& p, const LawSuiteOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<long long> dist(-opt.magnitude, opt.magnitude);
    auto draw = [&]() { return Int(dist(rng)); };

    auto op = [&](const Int& a, const Int& b) {
        Int v = star(p, a, b);
        if (opt.corrupt_star) v += 1;
        return v;
    };

    const auto specials = special_elements(p);
    std::vector<LawReport> out;

    auto run = [&](const std::string& name, bool applicable,
                   const std::function<std::string()>& one_sample) {
        LawReport rep;
        rep.law = name;
        if (!applicable) {
            rep.skipped = true;
            out.push_back(std::move(rep));
            return;
        }
        for (std::uint64_t i = 0; i < opt.samples; ++i) {
            ++rep.samples;
            std::string cx = one_sample();
            if (!cx.empty()) {
                rep.pass = false;
                rep.counterexample = std::move(cx);
                break;
            }
        }
        out.push_back(std::move(rep));
    };

    auto triple_str = [](const Int& a, const Int& b, const Int& c) {
        return "(a,b,c)=(" + a.str() + "," + b.str() + "," + c.str() + ")";
    };

    run("associativity", true, [&]() -> std::string {
        Int a = draw(), b = draw(), c = draw();
        if (op(op(a, b), c) != op(a, op(b, c))) return triple_str(a, b, c);
        return {};
    });

    run("commutativity", true, [&]() -> std::string {
        Int a = draw(), b = draw();
        if (op(a, b) != op(b, a)) return "(a,b)=(" + a.str() + "," + b.str() + ")";
        return {};
    });

    run("conjugation", p.kind() != OpKind::Sum, [&]() -> std::string {
        Int a = draw(), b = draw();
        if (transform(p, op(a, b)) != transform(p, a) * transform(p, b)) {
            return "(a,b)=(" + a.str() + "," + b.str() + ")";
        }
        return {};
    });

    run("oracle_equivalence", p.kind() == OpKind::General, [&]() -> std::string {
        std::uniform_int_distribution<std::size_t> len(1, 8);
        std::vector<Int> xs(len(rng));
        for (Int& x : xs) x = draw();
        Int folded = xs[0];
        for (std::size_t i = 1; i < xs.size(); ++i) folded = op(folded, xs[i]);
        if (folded != symmetric_poly_eval(p, xs)) {
            std::ostringstream os;
            os << "xs=[";
            for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i].str();
            os << "]";
            return os.str();
        }
        return {};
    });

    run("zero_absorbs", specials.zero.has_value(), [&]() -> std::string {
        Int a = draw();
        if (op(*specials.zero, a) != *specials.zero) return "a=" + a.str();
        return {};
    });

    run("identity_neutral", specials.identity.has_value(), [&]() -> std::string {
        Int a = draw();
        if (op(*specials.identity, a) != a) return "a=" + a.str();
        return {};
    });

    run("second_unit_involution", specials.second_unit.has_value(), [&]() -> std::string {
        if (op(*specials.second_unit, *specials.second_unit) != *specials.identity) {
            return "u'=" + specials.second_unit->str();
        }
        return {};
    });

    const bool general = p.kind() == OpKind::General;
    std::vector<Region> regions;
    if (general) {
        regions = {Region::no_zero(), Region::no_zero_no_u2(), Region::no_zero_no_u2_no_u()};
        if (p.ell() > 0) {
            regions.push_back(Region::right_of_zero());
            regions.push_back(Region::at_least_shifted(2));
        }
    }
    run("region_closure", general, [&]() -> std::string {
        Int a = draw(), b = draw();
        for (const Region& reg : regions) {
            if (region_member(p, reg, a) && region_member(p, reg, b) &&
                !region_member(p, reg, op(a, b))) {
                return "(a,b)=(" + a.str() + "," + b.str() + ") region " +
                       std::to_string(static_cast<int>(reg.tag));
            }
        }
        return {};
    });

    run("cancellativity", general, [&]() -> std::string {
        Int a = draw();
        if (specials.zero && a == *specials.zero) a += 1;
        Int b = draw(), b2 = draw();
        if (b == b2) b2 += 1;
        if (op(a, b) == op(a, b2)) return triple_str(a, b, b2);
        return {};
    });

    run("power_law", p.kind() != OpKind::Sum, [&]() -> std::string {
        std::uniform_int_distribution<unsigned> ndist(specials.identity ? 0u : 1u, 12u);
        Int a = draw();
        unsigned n = ndist(rng);
        Int lhs = (n == 0) ? *specials.identity : a;
        for (unsigned i = 1; i < n; ++i) lhs = op(lhs, a);
        if (transform(p, lhs) != pow_int(transform(p, a), n)) {
            return "a=" + a.str() + " n=" + std::to_string(n);
        }
        return {};
    });

    return out;
}

}  // namespace lkram
