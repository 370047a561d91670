#pragma once

// Command-line front end. run() parses arguments, dispatches to the library
// and writes JSON (or CSV for audits) to `out`; diagnostics go to `err`.
//
// Exit codes: 0 success, 1 usage error, 2 computation error, 3 audit failure.

#include "huffhyp/audit.hpp"
#include "huffhyp/curves.hpp"
#include "huffhyp/hyp.hpp"
#include "huffhyp/properties.hpp"
#include "huffhyp/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace huffhyp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitComputation = 2;
inline constexpr int kExitAuditFail = 3;

using Json = nlohmann::ordered_json;

/// Integer (reduced mod p) or coefficient tuple "c0,c1,...".
inline FieldElement parse_element(const FieldCtx& f, const std::string& text)
{
    std::vector<std::int64_t> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size()) {
            throw std::invalid_argument("bad field element '" + text + "'");
        }
        parts.push_back(v);
    }
    if (parts.empty()) {
        throw std::invalid_argument("bad field element '" + text + "'");
    }
    if (parts.size() == 1) {
        return f.from_int(parts[0]);
    }
    return f.from_coeffs(parts);
}

inline Json element_json(const FieldCtx& f, FieldElement x)
{
    if (f.is_prime_field()) {
        return x.code;
    }
    return f.to_string(x);
}

inline Json canonical_json(const GroupRingElement& e)
{
    const CanonicalForm c = e.canonical();
    const auto z = c.embed();
    Json j;
    j["canonical"] = c.to_string();
    j["re"] = static_cast<double>(z.real());
    j["im"] = static_cast<double>(z.imag());
    return j;
}

inline std::vector<std::uint32_t> default_lemma_fields() { return {3, 5, 7, 9, 11, 13, 25, 27, 49}; }

struct Options {
    std::int64_t p = 0;
    std::int64_t r = 1;
    std::string lambda;
    std::string x;
    std::string a;
    std::string b;
    std::string d2;
    std::string model;
    std::string source;
    std::string target;
    std::vector<std::int64_t> top;
    std::vector<std::int64_t> bottom;
    std::int64_t char_a = 0;
    std::int64_t char_b = 0;
    std::vector<std::string> identities;
    bool all = false;
    std::uint32_t qmax = 13;
    std::vector<std::uint32_t> qs;
    std::string provenance;
    std::string format = "json";
    unsigned jobs = 1;
    std::uint64_t seed = 20240101;
    std::uint64_t qcap = 0;
};

inline int cmd_field(const Options& o, std::ostream& out)
{
    const FieldCtx f = make_field(o.p, o.r);
    Json j;
    j["p"] = f.p();
    j["r"] = f.r();
    j["q"] = f.q();
    j["modulus"] = f.modulus();
    j["generator"] = element_json(f, f.gen());
    j["phi_minus1"] = phi_at_minus1(f);
    out << j.dump() << '\n';
    return kExitOk;
}

inline int cmd_eval2f1(const Options& o, std::ostream& out)
{
    const FieldCtx f = make_field(o.p, o.r);
    const FieldElement l = parse_element(f, o.lambda);
    const Rat v = two_f_one(f, l);
    Json j;
    j["q"] = f.q();
    j["lambda"] = element_json(f, l);
    j["value"] = to_string(v);
    j["decimal"] = static_cast<double>(to_long_double(v));
    out << j.dump() << '\n';
    return kExitOk;
}

inline int cmd_evalnfn(const Options& o, std::ostream& out)
{
    const FieldCtx f = make_field(o.p, o.r);
    HypSpec spec;
    for (auto t : o.top) {
        spec.top.emplace_back(f, t);
    }
    for (auto t : o.bottom) {
        spec.bottom.emplace_back(f, t);
    }
    spec.x = parse_element(f, o.x);
    const Rat v = hyp_eval(spec);
    Json j;
    j["q"] = f.q();
    Json top = Json::array();
    for (const auto& c : spec.top) {
        top.push_back(c.index());
    }
    Json bottom = Json::array();
    for (const auto& c : spec.bottom) {
        bottom.push_back(c.index());
    }
    j["top"] = std::move(top);
    j["bottom"] = std::move(bottom);
    j["x"] = element_json(f, spec.x);
    j["value"] = to_string(v);
    j["decimal"] = static_cast<double>(to_long_double(v));
    out << j.dump() << '\n';
    return kExitOk;
}

inline int cmd_count(const Options& o, std::ostream& out)
{
    const FieldCtx f = make_field(o.p, o.r);
    const Model m = parse_model(o.model);
    CurveCount c;
    if (m == Model::edwards) {
        if (o.d2.empty()) {
            throw std::invalid_argument("--d2 is required for the edwards model");
        }
        c.affine = count_edwards_affine(f, {parse_element(f, o.d2)});
        c.total = c.affine;
    } else {
        if (o.a.empty() || o.b.empty()) {
            throw std::invalid_argument("--a and --b are required for model " + o.model);
        }
        const FieldElement a = parse_element(f, o.a);
        const FieldElement b = parse_element(f, o.b);
        switch (m) {
        case Model::general_huff:
            c = count_general_huff(f, {a, b});
            break;
        case Model::huff:
            c = count_huff(f, {a, b});
            break;
        default:
            c = count_weierstrass(f, {a, b});
            break;
        }
    }
    Json j;
    j["affine"] = c.affine;
    j["at_infinity"] = c.at_infinity;
    j["total"] = c.total;
    out << j.dump() << '\n';
    return kExitOk;
}

inline int cmd_map(const Options& o, std::ostream& out)
{
    const FieldCtx f = make_field(o.p, o.r);
    const MapReport r =
        map_points(f, parse_model(o.source), parse_model(o.target), parse_element(f, o.a), parse_element(f, o.b));
    Json j;
    j["source_points"] = r.source_points;
    j["mapped"] = r.mapped;
    j["exceptional_source"] = r.exceptional_source;
    j["exceptional_target"] = r.exceptional_target;
    j["injective"] = r.injective;
    j["images_on_target"] = r.images_on_target;
    out << j.dump() << '\n';
    return kExitOk;
}

inline int cmd_special(const Options& o, std::ostream& out)
{
    if (o.p < 3 || !is_prime(static_cast<std::uint64_t>(o.p))) {
        throw std::invalid_argument("--p must be an odd prime");
    }
    Json j;
    j["p"] = o.p;
    if (o.p % 4 == 1) {
        const TwoSquares ts = cornacchia(o.p);
        j["x"] = ts.x;
        j["y"] = ts.y;
    } else {
        j["x"] = nullptr;
        j["y"] = nullptr;
    }
    j["two_f_one_minus1"] = to_string(ono_value_minus1(o.p));
    const FieldCtx f = make_field(o.p, 1);
    j["engine"] = to_string(two_f_one(f, f.minus_one()));
    out << j.dump() << '\n';
    return kExitOk;
}

inline int cmd_charsum(const Options& o, std::ostream& out)
{
    const FieldCtx f = make_field(o.p, o.r);
    const Character a(f, o.char_a);
    const Character b(f, o.char_b);
    Json j;
    j["q"] = f.q();
    j["n"] = f.order();
    j["A"] = a.index();
    j["B"] = b.index();
    j["jacobi"] = canonical_json(jacobi(a, b));
    j["binomial"] = canonical_json(binom(a, b));
    out << j.dump() << '\n';
    return kExitOk;
}

inline int cmd_audit(const Options& o, std::ostream& out)
{
    const ReportFormat format = parse_report_format(o.format);
    std::optional<Provenance> prov;
    if (!o.provenance.empty()) {
        prov = parse_provenance(o.provenance);
    }
    AuditOptions opts;
    opts.jobs = o.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.jobs;

    std::vector<std::uint32_t> qs = o.qs;
    if (qs.empty()) {
        if (o.qmax > field_cap()) {
            throw std::invalid_argument("--qmax exceeds the field cap " + std::to_string(field_cap()));
        }
        for (const auto& pp : odd_prime_powers(o.qmax)) {
            qs.push_back(pp.q);
        }
    }
    std::vector<IdentityReport> reports;
    BundleCache cache;
    if (o.all) {
        for (const auto& id : registry()) {
            if (!prov || id.provenance == *prov) {
                reports.push_back(audit_identity(id, qs, cache, opts));
            }
        }
    } else {
        for (const auto& name : o.identities) {
            const Identity& id = find_identity(name);
            if (!prov || id.provenance == *prov) {
                reports.push_back(audit_identity(id, qs, cache, opts));
            }
        }
    }
    emit(out, reports, format);
    for (const auto& r : reports) {
        if (!r.pass()) {
            return kExitAuditFail;
        }
    }
    return kExitOk;
}

inline int cmd_lemmas(const Options& o, std::ostream& out)
{
    const std::vector<std::uint32_t> qs = o.qs.empty() ? default_lemma_fields() : o.qs;
    validate_field_sizes(qs);
    Json arr = Json::array();
    bool ok = true;
    for (auto q : qs) {
        const PrimePower pp = decompose_prime_power(q);
        const FieldCtx f = make_field(pp.p, pp.r);
        const LemmaSuite suite(f);
        for (const auto& res : suite.run_all(o.seed)) {
            Json j;
            j["property"] = res.name;
            j["q"] = res.q;
            j["checks"] = res.checks;
            j["failures"] = res.failures;
            j["pass"] = res.pass();
            if (!res.pass()) {
                j["first_failure"] = res.first_failure;
            }
            ok = ok && res.pass();
            arr.push_back(std::move(j));
        }
    }
    out << arr.dump() << '\n';
    return ok ? kExitOk : kExitAuditFail;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact Gaussian hypergeometric series, curve point counts and identity audits over F_q"};
    app.name("huffhyp");
    app.require_subcommand(1);
    Options o;
    app.add_option("--qcap", o.qcap, std::string("Override the field size cap (also via ") + kFieldCapEnv + ")");

    auto add_field = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "Characteristic (odd prime)")->required();
        sub->add_option("--r", o.r, "Extension degree")->capture_default_str();
    };

    auto* field = app.add_subcommand("field", "Print modulus and generator of F_q");
    add_field(field);

    auto* eval = app.add_subcommand("eval2f1", "Evaluate 2F1(phi,phi;eps|lambda)");
    add_field(eval);
    eval->add_option("--lambda", o.lambda, "Argument (integer or c0,c1,...)")->required();

    auto* nfn = app.add_subcommand("evalnfn", "Evaluate a general series from character indices");
    add_field(nfn);
    nfn->add_option("--top", o.top, "Indices j of A_0..A_n (chi_j(gen^k) = zeta^{jk})")->required()->delimiter(',');
    nfn->add_option("--bottom", o.bottom, "Indices of B_1..B_n")->delimiter(',');
    nfn->add_option("--x", o.x, "Argument")->required();

    auto* count = app.add_subcommand("count", "Count points on a curve by enumeration");
    add_field(count);
    count->add_option("--model", o.model, "ghuff | huff | weier | edwards")->required();
    count->add_option("--a", o.a, "Parameter a");
    count->add_option("--b", o.b, "Parameter b");
    count->add_option("--d2", o.d2, "Edwards parameter d^2");

    auto* map = app.add_subcommand("map", "Apply a birational map point by point");
    add_field(map);
    map->add_option("--source", o.source, "ghuff | huff | weier | edwards")->required();
    map->add_option("--target", o.target, "ghuff | huff | weier | edwards")->required();
    map->add_option("--a", o.a, "Parameter a")->required();
    map->add_option("--b", o.b, "Parameter b")->required();

    auto* special = app.add_subcommand("special", "Two-square decomposition and 2F1(-1) over F_p");
    special->add_option("--p", o.p, "Odd prime")->required();

    auto* charsum = app.add_subcommand("charsum", "Jacobi sum and binomial symbol of two characters");
    add_field(charsum);
    charsum->add_option("--a", o.char_a, "Index of A")->required();
    charsum->add_option("--b", o.char_b, "Index of B")->required();

    auto* audit = app.add_subcommand("audit", "Audit registered identities");
    auto* by_id = audit->add_option("--identity", o.identities, "Identity id (repeatable)");
    auto* all = audit->add_flag("--all", o.all, "Audit every identity");
    by_id->excludes(all);
    audit->add_option("--qmax", o.qmax, "Sweep all odd prime powers up to this bound")->capture_default_str();
    audit->add_option("--q", o.qs, "Explicit field sizes (overrides --qmax)")->delimiter(',');
    audit->add_option("--provenance", o.provenance, "printed | corrected | greene | ono");
    audit->add_option("--format", o.format, "json | csv")->capture_default_str();
    audit->add_option("--jobs", o.jobs, "Worker threads (0 = hardware)")->capture_default_str();

    auto* lemmas = app.add_subcommand("lemmas", "Run the character-sum property suite");
    lemmas->add_option("--q", o.qs, "Field sizes")->delimiter(',');
    lemmas->add_option("--seed", o.seed, "Seed for random test functions")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (audit->parsed() && !o.all && o.identities.empty()) {
            throw CLI::ValidationError("audit", "one of --identity or --all is required");
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitUsage;
    }

    if (o.qcap > 0) {
        ::setenv(kFieldCapEnv, std::to_string(o.qcap).c_str(), 1);
    }

    try {
        if (field->parsed()) {
            return cmd_field(o, out);
        }
        if (eval->parsed()) {
            return cmd_eval2f1(o, out);
        }
        if (nfn->parsed()) {
            return cmd_evalnfn(o, out);
        }
        if (count->parsed()) {
            return cmd_count(o, out);
        }
        if (map->parsed()) {
            return cmd_map(o, out);
        }
        if (special->parsed()) {
            return cmd_special(o, out);
        }
        if (charsum->parsed()) {
            return cmd_charsum(o, out);
        }
        if (audit->parsed()) {
            return cmd_audit(o, out);
        }
        if (lemmas->parsed()) {
            return cmd_lemmas(o, out);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}

}  // namespace huffhyp::cli
