/**
 * @file lkram.cpp
 *
 * Command-line front end: evaluation of star products, law checking,
 * pattern emission, polynomial condition checks, monochromaticity threshold
 * search, and certificate verification. JSON on stdout is the machine
 * contract; human summaries are secondary.
 *
 * Exit codes: 0 success, 1 property violation, 2 usage or parse error,
 * 3 internal oracle mismatch, 4 budget exhausted.
 */

#include "lkram/error.hpp"
#include "lkram/json_io.hpp"
#include "lkram/laws.hpp"
#include "lkram/lk_algebra.hpp"
#include "lkram/pattern_gen.hpp"
#include "lkram/poly_text.hpp"
#include "lkram/polyring.hpp"
#include "lkram/ramsey_search.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;
constexpr int kExitBudget = 4;

using lkram::Int;
using lkram::LKParams;
using lkram::OrderedJson;

Int parse_int(const std::string& text) {
    try {
        return Int(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

LKParams parse_lk(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw std::invalid_argument("--lk expects 'ell,k'");
    return LKParams::validate(parse_int(parts[0]), parse_int(parts[1]));
}

std::vector<Int> parse_int_list(const std::string& text) {
    std::vector<Int> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_int(part));
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

std::vector<LKParams> parse_lk_list(const std::string& text) {
    std::vector<LKParams> out;
    for (const auto& part : split(text, ';')) {
        const auto nums = split(part, ',');
        if (nums.size() != 2) throw std::invalid_argument("--lks expects 'e1,k1;e2,k2;...'");
        out.push_back(LKParams::validate(parse_int(nums[0]), parse_int(nums[1])));
    }
    if (out.empty()) throw std::invalid_argument("empty parameter list");
    return out;
}

std::vector<std::vector<Int>> parse_seq_list(const std::string& text) {
    std::vector<std::vector<Int>> out;
    for (const auto& part : split(text, ';')) out.push_back(parse_int_list(part));
    return out;
}

void emit(const OrderedJson& j) { std::cout << j.dump() << "\n"; }

struct GlobalOpts {
    bool json = false;
    unsigned workers = 1;
    double time_limit = 0.0;  // 0 = unlimited
    std::uint64_t node_limit = 0;
    std::uint64_t seed = 0;
};

lkram::SearchBudget make_budget(const GlobalOpts& g) {
    lkram::SearchBudget b;
    if (g.time_limit > 0) b.time_limit_seconds = g.time_limit;
    if (g.node_limit > 0) b.node_limit = g.node_limit;
    b.workers = g.workers;
    return b;
}

// ---------------------------------------------------------------------------

int cmd_eval(const GlobalOpts& g, const std::string& lk, const std::string& xs_text) {
    const LKParams p = parse_lk(lk);
    const std::vector<Int> xs = parse_int_list(xs_text);
    const Int value = lkram::iterated_star(p, xs);

    std::optional<Int> sym;
    if (p.kind() == lkram::OpKind::General) {
        sym = lkram::symmetric_poly_eval(p, xs);
        if (*sym != value) {
            std::cerr << "internal oracle mismatch: iterated_star=" << value.str()
                      << " symmetric_poly_eval=" << sym->str() << "\n";
            return kExitInternal;
        }
    }

    if (g.json) {
        OrderedJson j = OrderedJson::object();
        j["command"] = "eval";
        j["lk"] = lkram::lk_json(p);
        j["xs"] = lkram::int_array_json(xs);
        j["value"] = value.str();
        j["symmetric_value"] = sym ? OrderedJson(sym->str()) : OrderedJson(nullptr);
        emit(j);
    } else {
        std::cout << value.str() << "\n";
        if (sym) std::cout << "symmetric check: " << sym->str() << " (match)\n";
    }
    return kExitOk;
}

int cmd_laws(const GlobalOpts& g, const std::string& lk, std::uint64_t samples, bool corrupt) {
    const LKParams p = parse_lk(lk);
    lkram::LawSuiteOptions opt;
    opt.samples = samples;
    opt.seed = g.seed;
    opt.corrupt_star = corrupt;
    const auto reports = lkram::run_law_suite(p, opt);

    bool any_fail = false;
    if (g.json) {
        OrderedJson arr = OrderedJson::array();
        for (const auto& rep : reports) {
            OrderedJson j = OrderedJson::object();
            j["law"] = rep.law;
            j["samples"] = std::to_string(rep.samples);
            j["pass"] = rep.pass;
            j["skipped"] = rep.skipped;
            j["counterexample"] = rep.counterexample;
            arr.push_back(std::move(j));
            any_fail = any_fail || (!rep.pass && !rep.skipped);
        }
        OrderedJson j = OrderedJson::object();
        j["command"] = "laws";
        j["lk"] = lkram::lk_json(p);
        j["laws"] = std::move(arr);
        emit(j);
    } else {
        for (const auto& rep : reports) {
            if (rep.skipped) {
                std::cout << rep.law << ": skipped (not applicable)\n";
            } else if (rep.pass) {
                std::cout << rep.law << ": pass (" << rep.samples << " samples)\n";
            } else {
                std::cout << rep.law << ": FAIL at " << rep.counterexample << "\n";
                any_fail = true;
            }
        }
    }
    if (samples == 0) std::cerr << "warning: 0 samples requested, pass is vacuous\n";
    return any_fail ? kExitViolation : kExitOk;
}

int cmd_check_poly(const GlobalOpts&, const std::string& poly_text, const std::string& mode,
                   unsigned bound) {
    const lkram::Polynomial p = lkram::parse_polynomial(poly_text);

    OrderedJson j = OrderedJson::object();
    j["command"] = "check-poly";
    j["mode"] = mode;
    j["polynomial"] = lkram::serialize_polynomial(p);

    std::optional<std::vector<Int>> scaling;
    if (mode == "dagger") {
        j["sufficient"] = lkram::check_dagger_sufficient(p);
        j["scale"] = nullptr;
    } else if (mode == "ddagger") {
        const auto n = lkram::check_ddagger_sufficient(p);
        j["sufficient"] = n.has_value();
        j["scale"] = n ? OrderedJson(n->str()) : OrderedJson(nullptr);
        scaling = std::vector<Int>(p.arity(), n ? *n : Int(1));
    } else {
        throw std::invalid_argument("--mode must be dagger or ddagger");
    }

    if (p.arity() == 0) {
        j["witness"] = nullptr;  // constant polynomial: nothing to probe
        emit(j);
        return kExitOk;
    }
    try {
        const auto w = lkram::witness_thresholds(p, bound, scaling);
        auto node_json = [](const lkram::ThresholdNode& node, auto&& self) -> OrderedJson {
            OrderedJson nj = OrderedJson::object();
            nj["threshold"] = std::to_string(node.threshold);
            OrderedJson kids = OrderedJson::array();
            for (const auto& child : node.children) kids.push_back(self(child, self));
            nj["children"] = std::move(kids);
            return nj;
        };
        OrderedJson wj = OrderedJson::object();
        wj["verified_bound"] = std::to_string(w.verified_bound);
        wj["scaling"] =
            w.scaling ? lkram::int_array_json(*w.scaling) : OrderedJson(nullptr);
        wj["thresholds"] = node_json(w.root, node_json);
        wj["replay"] = lkram::replay_witness(p, w);
        j["witness"] = std::move(wj);
    } catch (const lkram::BoundExhaustedError& e) {
        OrderedJson cx = OrderedJson::array();
        for (unsigned v : e.counterexample()) cx.push_back(std::to_string(v));
        OrderedJson wj = OrderedJson::object();
        wj["bound_exhausted"] = std::move(cx);
        j["witness"] = std::move(wj);
    }
    emit(j);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// pattern subcommands

int cmd_pattern_symmetric(const GlobalOpts&, const std::string& lk, const std::string& xs_text,
                          unsigned max_size) {
    const LKParams p = parse_lk(lk);
    const auto xs = parse_int_list(xs_text);
    const auto set = lkram::symmetric_system(p, xs, max_size);
    OrderedJson params = OrderedJson::object();
    params["lk"] = lkram::lk_json(p);
    params["xs"] = lkram::int_array_json(xs);
    params["max_size"] = std::to_string(max_size);
    emit(lkram::pattern_json(set, std::move(params)));
    return kExitOk;
}

int cmd_pattern_deuber(const GlobalOpts&, const std::string& lk, const std::string& a_text,
                       unsigned level_cap, bool strict) {
    const LKParams p = parse_lk(lk);
    const auto a = parse_int_list(a_text);
    const auto set = lkram::deuber_config(p, a, level_cap, strict);
    OrderedJson params = OrderedJson::object();
    params["lk"] = lkram::lk_json(p);
    params["a"] = lkram::int_array_json(a);
    params["L"] = std::to_string(level_cap);
    emit(lkram::pattern_json(set, std::move(params)));
    return kExitOk;
}

int cmd_pattern_brauer(const GlobalOpts&, const std::string& lk, const std::string& a_text,
                       const std::string& b_text, unsigned length) {
    const LKParams p = parse_lk(lk);
    const Int a = parse_int(a_text);
    const Int b = parse_int(b_text);
    const auto set = lkram::brauer_chain(p, a, b, length);
    OrderedJson params = OrderedJson::object();
    params["lk"] = lkram::lk_json(p);
    params["a"] = a.str();
    params["b"] = b.str();
    params["L"] = std::to_string(length);
    emit(lkram::pattern_json(set, std::move(params)));
    return kExitOk;
}

int cmd_pattern_mt(const GlobalOpts&, const std::string& lks, const std::string& f_text,
                   const std::string& xs_text, unsigned bound, unsigned max_block) {
    const auto ps = parse_lk_list(lks);
    const auto f = lkram::CombinerFn::from_polynomial(
        lkram::parse_polynomial(f_text, ps.size()));
    const auto xseqs = parse_seq_list(xs_text);
    const auto set = lkram::milliken_taylor_family(ps, f, xseqs, bound,
                                                   max_block == 0 ? bound : max_block);
    OrderedJson params = OrderedJson::object();
    OrderedJson lkarr = OrderedJson::array();
    for (const auto& p : ps) lkarr.push_back(lkram::lk_json(p));
    params["lks"] = std::move(lkarr);
    params["f"] = f.description();
    OrderedJson seqs = OrderedJson::array();
    for (const auto& seq : xseqs) seqs.push_back(lkram::int_array_json(seq));
    params["xs"] = std::move(seqs);
    params["bound"] = std::to_string(bound);
    emit(lkram::pattern_json(set, std::move(params)));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// search / verify shape flags

struct ShapeFlags {
    std::string lk;
    std::string lks;
    std::string f;
    unsigned chain_length = 1;
    unsigned depth = 2;
    unsigned rows = 1;
    unsigned exponent_cap = 1;
    unsigned seq_len = 2;
    unsigned max_block = 1;
    bool no_distinct = false;
    bool symmetric_domain = false;
};

void add_shape_options(CLI::App* sub, const std::string& shape, ShapeFlags& flags) {
    if (shape == "mt") {
        sub->add_option("--lks", flags.lks, "parameter pairs 'e1,k1;e2,k2;...'")->required();
        sub->add_option("--f", flags.f, "combining polynomial, e.g. '-3*z1+2*z2*z3'")->required();
        sub->add_option("--seq-len", flags.seq_len, "sequence prefix length");
        sub->add_option("--max-block-size", flags.max_block, "largest block size");
    } else {
        sub->add_option("--lk", flags.lk, "parameter pair 'ell,k'")->required();
        if (shape == "brauer") sub->add_option("--L", flags.chain_length, "chain length");
        if (shape == "symmetric") sub->add_option("--depth", flags.depth, "sequence elements per instance");
        if (shape == "deuber") {
            sub->add_option("--m", flags.rows, "number of configuration rows");
            sub->add_option("--L", flags.exponent_cap, "exponent cap");
        }
    }
    sub->add_flag("--no-distinct", flags.no_distinct, "allow colliding generator outputs (deduplicated)");
    sub->add_flag("--signed", flags.symmetric_domain, "search the symmetric domain [-N..N]");
}

lkram::PatternFamilySpec build_spec(const std::string& shape, const ShapeFlags& flags) {
    lkram::PatternFamilySpec::Generator gen = [&]() -> lkram::PatternFamilySpec::Generator {
        if (shape == "startriple") return lkram::StarTripleSpec{parse_lk(flags.lk)};
        if (shape == "brauer") {
            return lkram::BrauerChainSpec{parse_lk(flags.lk), flags.chain_length};
        }
        if (shape == "symmetric") return lkram::SymmetricDepthSpec{parse_lk(flags.lk), flags.depth};
        if (shape == "deuber") {
            return lkram::DeuberShapeSpec{parse_lk(flags.lk), flags.rows, flags.exponent_cap};
        }
        if (shape == "mt") {
            auto ps = parse_lk_list(flags.lks);
            auto f = lkram::CombinerFn::from_polynomial(
                lkram::parse_polynomial(flags.f, ps.size()));
            return lkram::MillikenTaylorSpec{std::move(ps), std::move(f), flags.seq_len,
                                             flags.max_block};
        }
        throw std::invalid_argument("unknown shape " + shape);
    }();
    return lkram::PatternFamilySpec{std::move(gen), !flags.no_distinct,
                                    flags.symmetric_domain ? lkram::DomainKind::Symmetric
                                                           : lkram::DomainKind::Positive};
}

int cmd_search(const GlobalOpts& g, const std::string& shape, const ShapeFlags& flags, unsigned r,
               unsigned n_max) {
    const auto spec = build_spec(shape, flags);
    const auto report = lkram::min_ramsey_threshold(spec, r, n_max, make_budget(g));
    if (g.json) {
        emit(lkram::search_report_json(report));
    } else {
        if (report.threshold_found) {
            std::cout << "threshold: " << report.bound << "\n";
        } else {
            std::cout << "no threshold up to " << report.bound << "\n";
        }
        if (report.certificate_at) {
            std::cout << "certificate at N=" << report.certificate_at->n << "\n";
        }
        std::cout << "nodes: " << report.stats.nodes << ", instances: " << report.stats.instances
                  << ", wall: " << report.stats.wall_seconds << "s\n";
        if (report.budget_exhausted) std::cout << "budget exhausted; bound is partial\n";
    }
    return report.budget_exhausted ? kExitBudget : kExitOk;
}

int cmd_verify(const GlobalOpts& g, const std::string& shape, const ShapeFlags& flags,
               const std::string& cert_path) {
    std::ifstream in(cert_path);
    if (!in) throw std::invalid_argument("cannot open certificate file " + cert_path);
    std::stringstream buf;
    buf << in.rdbuf();

    const auto spec = build_spec(shape, flags);
    lkram::ColoringCertificate cert;
    const OrderedJson doc = [&] {
        try {
            return OrderedJson::parse(buf.str());
        } catch (const std::exception& e) {
            throw lkram::Error(lkram::Errc::MalformedCertificate,
                               std::string("bad JSON: ") + e.what());
        }
    }();
    // accept either a bare certificate or a search report wrapping one
    if (doc.contains("type") && doc["type"] == "search_report") {
        if (!doc.contains("certificate_at") || doc["certificate_at"].is_null()) {
            throw lkram::Error(lkram::Errc::MalformedCertificate,
                               "search report carries no certificate");
        }
        cert = lkram::parse_certificate(doc["certificate_at"].dump());
    } else {
        cert = lkram::parse_certificate(buf.str());
    }

    const bool ok = lkram::verify_certificate(spec, cert);
    if (g.json) {
        OrderedJson j = OrderedJson::object();
        j["command"] = "verify";
        j["valid"] = ok;
        emit(j);
    } else {
        std::cout << (ok ? "certificate valid" : "certificate INVALID") << "\n";
    }
    return ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    GlobalOpts g;

    CLI::App app{"exact star-operation algebra, pattern generators, and coloring-threshold search"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", g.json, "machine-readable JSON output");
    app.add_option("--workers", g.workers, "search worker threads")->check(CLI::Range(1u, 64u));
    app.add_option("--time-limit", g.time_limit, "search time limit in seconds");
    app.add_option("--node-limit", g.node_limit, "search node limit");
    app.add_option("--seed", g.seed, "seed for sampled law checks");

    int rc = kExitOk;
    auto run = [&rc](auto&& fn) {
        return [&rc, fn = std::forward<decltype(fn)>(fn)]() { rc = fn(); };
    };

    // eval
    std::string eval_lk, eval_xs;
    auto* eval = app.add_subcommand("eval", "evaluate an iterated star product");
    eval->add_option("--lk", eval_lk, "parameter pair 'ell,k'")->required();
    eval->add_option("--xs", eval_xs, "comma-separated inputs")->required();
    eval->callback(run([&]() { return cmd_eval(g, eval_lk, eval_xs); }));

    // laws
    std::string laws_lk;
    std::uint64_t laws_samples = 10000;
    bool laws_corrupt = false;
    auto* laws = app.add_subcommand("laws", "run the algebraic law suite");
    laws->add_option("--lk", laws_lk, "parameter pair 'ell,k'")->required();
    laws->add_option("--samples", laws_samples, "samples per law");
    laws->add_flag("--selftest-corrupt", laws_corrupt, "harness self-test: perturb the operation")
        ->group("");
    laws->callback(run([&]() { return cmd_laws(g, laws_lk, laws_samples, laws_corrupt); }));

    // pattern
    auto* pattern = app.add_subcommand("pattern", "emit a pattern family as JSON");
    pattern->require_subcommand(1);

    std::string psym_lk, psym_xs;
    unsigned psym_max = 3;
    auto* psym = pattern->add_subcommand("symmetric", "symmetric system over a finite sequence");
    psym->add_option("--lk", psym_lk)->required();
    psym->add_option("--xs", psym_xs, "comma-separated injective sequence")->required();
    psym->add_option("--max-size", psym_max, "largest index subset size");
    psym->callback(run([&]() { return cmd_pattern_symmetric(g, psym_lk, psym_xs, psym_max); }));

    std::string pdeu_lk, pdeu_a;
    unsigned pdeu_L = 1;
    bool pdeu_strict = false;
    auto* pdeu = pattern->add_subcommand("deuber", "Deuber-style configuration");
    pdeu->add_option("--lk", pdeu_lk)->required();
    pdeu->add_option("--a", pdeu_a, "comma-separated elements a0,...,am")->required();
    pdeu->add_option("--L", pdeu_L, "exponent cap");
    pdeu->add_flag("--strict", pdeu_strict, "error on degenerate elements");
    pdeu->callback(run([&]() { return cmd_pattern_deuber(g, pdeu_lk, pdeu_a, pdeu_L, pdeu_strict); }));

    std::string pbr_lk, pbr_a, pbr_b;
    unsigned pbr_L = 1;
    auto* pbr = pattern->add_subcommand("brauer", "Brauer-style chain");
    pbr->add_option("--lk", pbr_lk)->required();
    pbr->add_option("--a", pbr_a)->required();
    pbr->add_option("--b", pbr_b)->required();
    pbr->add_option("--L", pbr_L, "chain length");
    pbr->callback(run([&]() { return cmd_pattern_brauer(g, pbr_lk, pbr_a, pbr_b, pbr_L); }));

    std::string pmt_lks, pmt_f, pmt_xs;
    unsigned pmt_bound = 3, pmt_block = 0;
    auto* pmt = pattern->add_subcommand("mt", "Milliken-Taylor family over ordered blocks");
    pmt->add_option("--lks", pmt_lks, "parameter pairs 'e1,k1;e2,k2;...'")->required();
    pmt->add_option("--f", pmt_f, "combining polynomial")->required();
    pmt->add_option("--xs", pmt_xs, "semicolon-separated sequences, one per pair")->required();
    pmt->add_option("--bound", pmt_bound, "index bound");
    pmt->add_option("--max-block-size", pmt_block, "largest block size (default: bound)");
    pmt->callback(run([&]() { return cmd_pattern_mt(g, pmt_lks, pmt_f, pmt_xs, pmt_bound, pmt_block); }));

    // check-poly
    std::string cp_text, cp_mode = "dagger";
    unsigned cp_bound = 10;
    auto* cp = app.add_subcommand("check-poly", "polynomial positivity condition checks");
    cp->add_option("polynomial", cp_text, "polynomial text, e.g. '-3*z1+2*z2*z3'")->required();
    cp->add_option("--mode", cp_mode, "dagger or ddagger");
    cp->add_option("--bound", cp_bound, "witness probe bound")->check(CLI::Range(1u, 40u));
    cp->callback(run([&]() { return cmd_check_poly(g, cp_text, cp_mode, cp_bound); }));

    // search / verify share the shape grammar
    const std::vector<std::string> shapes = {"startriple", "brauer", "symmetric", "deuber", "mt"};

    auto* search = app.add_subcommand("search", "minimal monochromaticity threshold search");
    search->require_subcommand(1);
    std::vector<ShapeFlags> search_flags(shapes.size());
    std::vector<unsigned> search_r(shapes.size(), 2);
    std::vector<unsigned> search_nmax(shapes.size(), 10);
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        auto* sub = search->add_subcommand(shapes[i]);
        add_shape_options(sub, shapes[i], search_flags[i]);
        sub->add_option("-r,--colors", search_r[i], "number of colors")->required();
        sub->add_option("--n-max", search_nmax[i], "largest scale to scan")->required();
        sub->callback(run([&, i]() {
            return cmd_search(g, shapes[i], search_flags[i], search_r[i], search_nmax[i]);
        }));
    }

    auto* verify = app.add_subcommand("verify", "check an avoiding-coloring certificate");
    verify->require_subcommand(1);
    std::vector<ShapeFlags> verify_flags(shapes.size());
    std::vector<std::string> verify_cert(shapes.size());
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        auto* sub = verify->add_subcommand(shapes[i]);
        add_shape_options(sub, shapes[i], verify_flags[i]);
        sub->add_option("--certificate", verify_cert[i], "certificate or report JSON file")
            ->required();
        sub->callback(run([&, i]() {
            return cmd_verify(g, shapes[i], verify_flags[i], verify_cert[i]);
        }));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const lkram::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == lkram::Errc::BudgetExhausted ? kExitBudget : kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return rc;
}
