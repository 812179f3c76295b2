#pragma once

/**
 * @file poly_text.hpp
 *
 * Text format for polynomials: terms `c*z1^a1*...*zm^am` joined by `+`/`-`,
 * with rational coefficients written `p/q`. Example: `-3*z1 + 2*z2*z3`.
 * Parsing is exact; serialize_polynomial re-emits a canonical form that
 * parses back to the same polynomial.
 */

#include "lkram/error.hpp"
#include "lkram/numeric.hpp"
#include "lkram/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

namespace lkram {

namespace detail {

class PolyScanner {
public:
    explicit PolyScanner(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool done() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Int read_unsigned() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a number");
        return Int(std::string(text_.substr(start, pos_ - start)));
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) +
                                    ": " + what);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the textual polynomial format. The result arity is the largest
/// variable index seen (at least min_arity, so callers can pin the ambient
/// variable count of e.g. an all-constant input).
inline Polynomial parse_polynomial(std::string_view text, std::size_t min_arity = 0) {
    detail::PolyScanner sc(text);

    struct RawTerm {
        Rat coeff;
        std::vector<std::pair<std::size_t, unsigned>> powers;  // (1-based var, exponent)
    };
    std::vector<RawTerm> raw;
    std::size_t arity = min_arity;

    bool first = true;
    while (!sc.done()) {
        int sign = 1;
        if (sc.consume('+')) {
            sign = 1;
        } else if (sc.consume('-')) {
            sign = -1;
        } else if (!first) {
            sc.fail("expected '+' or '-' between terms");
        }
        first = false;

        RawTerm term;
        term.coeff = sign;
        bool any_factor = false;
        do {
            char c = sc.peek();
            if (c == 'z' || c == 'Z') {
                sc.consume(c);
                Int idx = sc.read_unsigned();
                if (idx < 1) sc.fail("variable indices start at z1");
                if (idx > 64) sc.fail("variable index too large");
                auto var = static_cast<std::size_t>(idx.convert_to<unsigned>());
                unsigned exp = 1;
                if (sc.consume('^')) {
                    Int e = sc.read_unsigned();
                    if (e > 4096) sc.fail("exponent too large");
                    exp = e.convert_to<unsigned>();
                }
                term.powers.emplace_back(var, exp);
                arity = std::max(arity, var);
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                Int num = sc.read_unsigned();
                if (sc.consume('/')) {
                    Int den = sc.read_unsigned();
                    if (den.is_zero()) sc.fail("zero denominator");
                    term.coeff *= Rat(num, den);
                } else {
                    term.coeff *= Rat(num);
                }
            } else {
                sc.fail("expected a coefficient or a variable factor");
            }
            any_factor = true;
        } while (sc.consume('*'));
        if (!any_factor) sc.fail("empty term");
        raw.push_back(std::move(term));
    }
    if (first) sc.fail("empty polynomial text");

    Polynomial p(arity);
    for (auto& term : raw) {
        MultiIndex idx(arity, 0u);
        for (auto [var, exp] : term.powers) idx[var - 1] += exp;
        p.add_term(std::move(idx), std::move(term.coeff));
    }
    return p;
}

inline std::string serialize_polynomial(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [idx, coeff] : p.terms()) {
        const bool negative = coeff < 0;
        Rat mag = negative ? Rat(-coeff) : coeff;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }

        std::string mono;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "z" + std::to_string(i + 1);
            if (idx[i] != 1) mono += "^" + std::to_string(idx[i]);
        }

        if (mono.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += to_string(mag) + "*" + mono;
        }
    }
    return out;
}

}  // namespace lkram
