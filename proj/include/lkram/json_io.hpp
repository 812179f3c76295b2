#pragma once

/**
 * @file json_io.hpp
 *
 * JSON emission and parsing for pattern sets, search reports, and coloring
 * certificates. Field order is fixed (ordered_json) and every integer is a
 * decimal string, so equal inputs produce byte-identical documents. Reports
 * deliberately carry no wall-clock field; timing goes to human output only.
 */

#include "lkram/error.hpp"
#include "lkram/numeric.hpp"
#include "lkram/pattern_gen.hpp"
#include "lkram/poly_text.hpp"
#include "lkram/ramsey_search.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace lkram {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson lk_json(const LKParams& p) {
    OrderedJson j = OrderedJson::object();
    j["ell"] = p.ell().str();
    j["k"] = p.k().str();
    j["kind"] = op_kind_name(p.kind());
    return j;
}

inline OrderedJson int_array_json(std::span<const Int> values) {
    OrderedJson arr = OrderedJson::array();
    for (const Int& v : values) arr.push_back(v.str());
    return arr;
}

inline OrderedJson provenance_json(const Provenance& prov) {
    OrderedJson j = OrderedJson::object();
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SubsetProvenance>) {
                OrderedJson idx = OrderedJson::array();
                for (std::size_t i : p.indices) idx.push_back(std::to_string(i));
                j["indices"] = std::move(idx);
            } else if constexpr (std::is_same_v<T, DeuberProvenance>) {
                j["j"] = std::to_string(p.j);
                OrderedJson nu = OrderedJson::array();
                for (unsigned e : p.exponents) nu.push_back(std::to_string(e));
                j["nu"] = std::move(nu);
            } else if constexpr (std::is_same_v<T, BrauerProvenance>) {
                switch (p.role) {
                    case BrauerProvenance::Role::Base: j["role"] = "a"; break;
                    case BrauerProvenance::Role::Multiplier: j["role"] = "b"; break;
                    case BrauerProvenance::Role::Chain:
                        j["role"] = "c";
                        j["j"] = std::to_string(p.link);
                        break;
                }
            } else if constexpr (std::is_same_v<T, BlockProvenance>) {
                OrderedJson blocks = OrderedJson::array();
                for (const auto& block : p.blocks) {
                    OrderedJson b = OrderedJson::array();
                    for (std::size_t i : block) b.push_back(std::to_string(i));
                    blocks.push_back(std::move(b));
                }
                j["blocks"] = std::move(blocks);
            }
        },
        prov);
    return j;
}

inline OrderedJson pattern_json(const PatternValueSet& set, OrderedJson params) {
    OrderedJson j = OrderedJson::object();
    j["generator"] = set.generator;
    j["params"] = std::move(params);
    j["values"] = int_array_json(set.values);
    OrderedJson prov = OrderedJson::array();
    for (const Provenance& p : set.provenance) prov.push_back(provenance_json(p));
    j["provenance"] = std::move(prov);
    j["distinct"] = set.distinct;
    OrderedJson rejects = OrderedJson::array();
    for (const RejectedTuple& rt : set.rejects) {
        OrderedJson r = provenance_json(Provenance(rt.blocks));
        r["value"] = to_string(rt.value);
        rejects.push_back(std::move(r));
    }
    j["rejects"] = std::move(rejects);
    OrderedJson degen = OrderedJson::array();
    for (std::size_t d : set.degenerate) degen.push_back(std::to_string(d));
    j["degenerate"] = std::move(degen);
    return j;
}

inline OrderedJson spec_json(const PatternFamilySpec& spec) {
    OrderedJson j = OrderedJson::object();
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, StarTripleSpec>) {
                j["generator"] = "startriple";
                j["lk"] = lk_json(g.params);
            } else if constexpr (std::is_same_v<T, BrauerChainSpec>) {
                j["generator"] = "brauer";
                j["lk"] = lk_json(g.params);
                j["L"] = std::to_string(g.chain_length);
            } else if constexpr (std::is_same_v<T, SymmetricDepthSpec>) {
                j["generator"] = "symmetric";
                j["lk"] = lk_json(g.params);
                j["depth"] = std::to_string(g.depth);
            } else if constexpr (std::is_same_v<T, DeuberShapeSpec>) {
                j["generator"] = "deuber";
                j["lk"] = lk_json(g.params);
                j["m"] = std::to_string(g.rows);
                j["L"] = std::to_string(g.exponent_cap);
            } else if constexpr (std::is_same_v<T, MillikenTaylorSpec>) {
                j["generator"] = "mt";
                OrderedJson lks = OrderedJson::array();
                for (const LKParams& p : g.params) lks.push_back(lk_json(p));
                j["lks"] = std::move(lks);
                j["f"] = g.combiner.description();
                j["seq_len"] = std::to_string(g.seq_len);
                j["max_block_size"] = std::to_string(g.max_block_size);
            }
        },
        spec.generator);
    j["require_distinct"] = spec.require_distinct;
    j["domain"] = domain_kind_name(spec.domain);
    return j;
}

inline OrderedJson certificate_json(const ColoringCertificate& cert) {
    OrderedJson j = OrderedJson::object();
    j["type"] = "coloring_certificate";
    j["N"] = std::to_string(cert.n);
    j["r"] = std::to_string(cert.r);
    j["domain"] = domain_kind_name(cert.domain);
    OrderedJson colors = OrderedJson::array();
    for (std::uint8_t c : cert.colors) colors.push_back(std::to_string(c));
    j["colors"] = std::move(colors);
    return j;
}

inline ColoringCertificate parse_certificate(const std::string& text) {
    OrderedJson j;
    try {
        j = OrderedJson::parse(text);
    } catch (const std::exception& e) {
        throw Error(Errc::MalformedCertificate, std::string("bad JSON: ") + e.what());
    }
    auto read_uint = [&](const char* key) -> unsigned {
        if (!j.contains(key) || !j[key].is_string()) {
            throw Error(Errc::MalformedCertificate, std::string("missing field ") + key);
        }
        try {
            const unsigned long v = std::stoul(j[key].get<std::string>());
            if (v > 1u << 24) throw std::out_of_range("too large");
            return static_cast<unsigned>(v);
        } catch (const std::exception&) {
            throw Error(Errc::MalformedCertificate, std::string("bad numeric field ") + key);
        }
    };
    ColoringCertificate cert;
    cert.n = read_uint("N");
    cert.r = read_uint("r");
    if (!j.contains("domain") || !j["domain"].is_string()) {
        throw Error(Errc::MalformedCertificate, "missing domain");
    }
    const std::string dom = j["domain"].get<std::string>();
    if (dom == "positive") {
        cert.domain = DomainKind::Positive;
    } else if (dom == "symmetric") {
        cert.domain = DomainKind::Symmetric;
    } else {
        throw Error(Errc::MalformedCertificate, "unknown domain " + dom);
    }
    if (!j.contains("colors") || !j["colors"].is_array()) {
        throw Error(Errc::MalformedCertificate, "missing colors");
    }
    for (const auto& c : j["colors"]) {
        if (!c.is_string()) throw Error(Errc::MalformedCertificate, "colors must be strings");
        try {
            const unsigned long v = std::stoul(c.get<std::string>());
            if (v < 1 || v > 250) throw std::out_of_range("color out of range");
            cert.colors.push_back(static_cast<std::uint8_t>(v));
        } catch (const std::exception&) {
            throw Error(Errc::MalformedCertificate, "bad color entry");
        }
    }
    return cert;
}

inline OrderedJson search_report_json(const SearchReport& report) {
    OrderedJson j = OrderedJson::object();
    j["type"] = "search_report";
    j["spec"] = spec_json(report.spec);
    j["r"] = std::to_string(report.r);
    OrderedJson result = OrderedJson::object();
    result["kind"] = report.threshold_found ? "threshold" : "no_threshold_up_to";
    result["n"] = std::to_string(report.bound);
    j["result"] = std::move(result);
    j["certificate_at"] =
        report.certificate_at ? certificate_json(*report.certificate_at) : OrderedJson(nullptr);
    OrderedJson stats = OrderedJson::object();
    stats["nodes"] = std::to_string(report.stats.nodes);
    stats["instances"] = std::to_string(report.stats.instances);
    j["stats"] = std::move(stats);
    j["budget_exhausted"] = report.budget_exhausted;
    return j;
}

}  // namespace lkram
