#pragma once

#include "qpot/cli/document.hpp"
#include "qpot/pbwengine/gr_oracle.hpp"
#include "qpot/pbwengine/reconstruct.hpp"
#include "qpot/vacualgebra/filtered.hpp"
#include "qpot/zoo/fit.hpp"
#include "qpot/zoo/instances.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qpot::cli {

using Json = nlohmann::ordered_json;

enum class Format { Text, Json };

struct Options {
    std::optional<std::size_t> degree;  // truncation bound
    std::optional<std::size_t> slack;   // gr oracle slack, default N
    std::uint64_t seed = kDefaultFitSeed;
    FitMode mode = FitMode::PerGeneratorLine;
};

enum ExitCode { kOk = 0, kNegative = 1, kInputError = 2 };

struct Report {
    Json body;
    int exit_code = kOk;
};

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"derive", "check-pbw", "reconstruct", "check-cy",
                                                "hilbert", "fit-potential", "zoo"};
    return names;
}

namespace detail {

template <class F>
std::string str(const F& f, const Quiver& q, const Element<F>& x) {
    return print_raw(q, from_element(f, x));
}

template <class F>
Json potential_lines(const F& f, const Quiver& q, const Potential<F>& w) {
    Json out = Json::array();
    for (const auto& [p, c] : w.terms()) out.push_back(to_rational(f, c).get_str() + " * " + path_to_string(q, p));
    return out;
}

inline std::size_t need_degree(const Options& o, const std::string& cmd) {
    if (!o.degree) throw InputError(cmd + " needs --degree");
    return *o.degree;
}

template <class F>
Potential<F> need_potential(const F& f, const Document& d, const std::string& cmd) {
    if (!d.potential) throw InputError(cmd + " needs a potential block");
    auto w = to_potential(f, *d.potential);
    if (w.is_zero()) throw InputError(cmd + " needs a nonzero potential");
    return w;
}

template <class F>
std::pair<Potential<F>, Potential<F>> split_potential(const Potential<F>& w) {
    auto top = w.component(static_cast<std::size_t>(w.degree()));
    return {top, w - top};
}

template <class F>
Deformation<F> load_deformation(const F& f, const Document& d, const std::string& cmd) {
    const Quiver& q = d.quiver;
    if (!d.deformation) {
        auto [top, lower] = split_potential(need_potential(f, d, cmd));
        if (lower.is_zero()) throw InputError(cmd + " needs a deformation block or lower-degree potential terms");
        return deformation_from_potential(q, top, lower);
    }
    std::vector<Element<F>> phi;
    for (const auto& x : *d.deformation) phi.push_back(to_element(f, x));
    if (d.potential) {
        auto w = need_potential(f, d, cmd);
        if (!w.is_homogeneous())
            throw InputError("with a deformation block the potential must be homogeneous (the top part W_{N+1})");
        return Deformation<F>(q, w, std::move(phi));
    }
    if (!d.relations || !d.relations_keyed)
        throw InputError(cmd + " needs a potential or arrow-keyed relations next to the deformation");
    std::vector<Element<F>> rels;
    for (const auto& x : *d.relations) rels.push_back(to_element(f, x));
    std::size_t n = 0;
    for (const auto& r : rels)
        if (!r.is_zero()) n = static_cast<std::size_t>(r.degree());
    return Deformation<F>(RelationSet<F>(f, q, n, std::move(rels), true), std::move(phi));
}

template <class F>
Json condition_json(const F& f, const Quiver& q, const ConditionResult<F>& c) {
    Json j;
    j["holds"] = c.holds;
    if (!c.evaluated) j["evaluated"] = false;
    if (c.witness) j["witness"] = str(f, q, *c.witness);
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

template <class F>
Report derive(const F& f, const Document& d) {
    const Quiver& q = d.quiver;
    auto w = need_potential(f, d, "derive");
    auto [top, lower] = split_potential(w);
    if (top.degree() < 3) throw InputError("the top part of the potential must have degree at least 3");
    auto def = deformation_from_potential(q, top, lower);
    Document out{d.field, q, from_potential(f, top), std::vector<RawElement>{}, std::vector<RawElement>{}, true};
    for (int a = 0; a < q.arrow_count(); ++a) {
        out.deformation->push_back(from_element(f, def.phi(a)));
        out.relations->push_back(from_element(f, def.base().relations()[a]));
    }
    Report r;
    r.body["command"] = "derive";
    r.body["field"] = d.field.name();
    r.body["N"] = def.degree();
    r.body["relation_span_dim"] = def.base().span_dim();
    r.body["document"] = print_document(out);
    return r;
}

template <class F>
Report check_pbw(const F& f, const Document& d, const Options& o) {
    const Quiver& q = d.quiver;
    auto def = load_deformation(f, d, "check-pbw");
    auto rep = check_conditions(def, o.degree);
    std::size_t n = def.degree();
    Report r;
    Json& b = r.body;
    b["command"] = "check-pbw";
    b["field"] = d.field.name();
    b["N"] = n;
    b["intersection_dim"] = rep.intersection_dim;
    Json conds;
    conds["PBW1"] = condition_json(f, q, rep.pbw1);
    conds["PBW2"] = condition_json(f, q, rep.pbw2);
    Json p3 = Json::array();
    for (std::size_t k = 0; k < rep.pbw3.size(); ++k) {
        Json c = condition_json(f, q, rep.pbw3[k]);
        Json row;
        row["j"] = k + 1;
        for (auto& [key, v] : c.items()) row[key] = v;
        p3.push_back(row);
    }
    conds["PBW3"] = p3;
    conds["PBW4"] = condition_json(f, q, rep.pbw4);
    b["conditions"] = conds;
    b["pbw"] = rep.passes();

    Json p2;
    p2["holds"] = rep.pbw2prime.holds;
    Json res;
    for (std::size_t e = 0; e < rep.residues.size(); ++e) res[q.vertex_name(static_cast<int>(e))] = str(f, q, rep.residues[e]);
    p2["residues"] = res;
    bool char_ok = !char_divides_factorial(f, static_cast<long long>(n));
    p2["characteristic_coprime_to_N_factorial"] = char_ok;
    if (rep.passes() && char_ok)
        p2["derives_from_potential"] = rep.pbw2prime.holds;
    else if (!rep.pbw2prime.holds)
        p2["derives_from_potential"] = false;
    else
        p2["derives_from_potential"] = nullptr;
    b["pbw2prime"] = p2;

    Json qual;
    bool ok = rep.passes();
    if (rep.base_cy) {
        qual["base_cy"] = *rep.base_cy;
        qual["base_cy_detail"] = rep.base_cy_detail;
        qual["truncation"] = *o.degree;
        ok = ok && *rep.base_cy;
        auto g = gr_oracle(def, *o.degree, o.slack);
        Json gj;
        gj["slack"] = g.slack;
        gj["violation_certified"] = g.violation_certified;
        if (g.violation_certified) gj["first_violation"] = g.first_violation;
        Json rows = Json::array();
        for (const auto& x : g.degrees) {
            Json row;
            row["degree"] = x.degree;
            row["upper_bound"] = x.upper_bound;
            row["graded"] = x.graded_cumulative;
            rows.push_back(row);
        }
        gj["degrees"] = rows;
        b["gr_oracle"] = gj;
        ok = ok && !g.violation_certified;
    } else {
        qual["base_cy"] = "not checked; pass --degree to check the base and run the gr oracle";
    }
    qual["koszul"] = "PBW1-4 characterise PBW deformations of N-Koszul bases; CY-3 bases are N-Koszul";
    b["qualifiers"] = qual;
    r.exit_code = ok ? kOk : kNegative;
    return r;
}

template <class F>
Report reconstruct(const F& f, const Document& d) {
    const Quiver& q = d.quiver;
    if (!d.deformation) throw InputError("reconstruct needs a deformation block");
    if (!d.potential) throw InputError("reconstruct needs the top potential");
    auto def = load_deformation(f, d, "reconstruct");
    Report r;
    r.body["command"] = "reconstruct";
    r.body["field"] = d.field.name();
    r.body["N"] = def.degree();
    try {
        auto w = reconstruct_potential(def);
        r.body["potential"] = potential_lines(f, q, w);
        r.body["round_trip"] = true;
        Document out{d.field, q, from_potential(f, *def.top() + w), std::nullopt, std::nullopt, false};
        r.body["document"] = print_document(out);
    } catch (const ReconstructionError& e) {
        Json err;
        err["kind"] = ReconstructionError::kind_name(e.kind());
        err["message"] = e.what();
        r.body["error"] = err;
        r.exit_code = kNegative;
    }
    return r;
}

template <class F>
Report check_cy(const F& f, const Document& d, const Options& o) {
    const Quiver& q = d.quiver;
    std::size_t deg = need_degree(o, "check-cy");
    auto w = need_potential(f, d, "check-cy");
    if (w.is_zero()) throw InputError("check-cy needs a nonzero potential");
    auto top = w.component(static_cast<std::size_t>(w.degree()));
    auto rep = cy_check(q, top, deg);
    std::optional<FilteredCompositeReport<F>> filtered;
    if (!w.is_homogeneous()) filtered = filtered_composites(q, w);
    bool ok = rep.consistent && (!filtered || filtered->certified);
    Report r;
    Json& b = r.body;
    b["command"] = "check-cy";
    b["field"] = d.field.name();
    b["N"] = static_cast<std::size_t>(w.degree() - 1);
    b["consistent"] = ok;
    if (!rep.consistent)
        b["failure"] = rep.failure;
    else if (!ok)
        b["failure"] = filtered->failure;
    b["composites_vanish"] = rep.exactness.composites_vanish;
    if (filtered) {
        Json fc;
        fc["certified"] = filtered->certified;
        fc["generators_checked"] = filtered->checked;
        b["filtered_complex"] = fc;
    }
    b["relation_span_dim"] = rep.relation_span_dim;
    b["relations_independent"] = rep.relations_independent;
    b["theta_two_sided"] = rep.theta_two_sided;
    b["theta_injective"] = rep.theta_injective;
    b["intersection_dim"] = rep.intersection_dim;
    b["theta_spans_intersection"] = rep.theta_spans_intersection;
    b["hilbert"] = rep.hilbert;
    Json rows = Json::array();
    for (const auto& x : rep.exactness.degrees) {
        Json row;
        row["degree"] = x.degree;
        row["dims"] = std::vector<std::size_t>(x.dims, x.dims + 5);
        row["homology"] = std::vector<std::size_t>(x.homology, x.homology + 5);
        rows.push_back(row);
    }
    b["exactness"] = rows;
    Json qual;
    qual["truncation"] = deg;
    qual["complex"] = "left module complex; exact through degree D implies the bimodule complex is too";
    qual["scope"] = "exactness is verified only in internal degrees up to the truncation";
    if (filtered)
        qual["filtered"] = "exactness is checked for the top-degree part; the full potential is checked for composites only";
    b["qualifiers"] = qual;
    r.exit_code = ok ? kOk : kNegative;
    return r;
}

template <class F>
RelationSet<F> load_relations(const F& f, const Document& d, const std::string& cmd) {
    const Quiver& q = d.quiver;
    if (d.relations) {
        std::vector<Element<F>> rels;
        for (const auto& x : *d.relations) rels.push_back(to_element(f, x));
        std::size_t n = 0;
        for (const auto& x : rels)
            if (!x.is_zero()) n = static_cast<std::size_t>(x.degree());
        if (n == 0) throw InputError(cmd + ": all relations are zero");
        return RelationSet<F>(f, q, n, std::move(rels), d.relations_keyed);
    }
    auto w = need_potential(f, d, cmd);
    if (!w.is_homogeneous()) throw InputError(cmd + " needs a homogeneous potential or a relations block");
    return RelationSet<F>::from_potential(q, w);
}

template <class F>
Report hilbert(const F& f, const Document& d, const Options& o) {
    std::size_t deg = need_degree(o, "hilbert");
    auto rels = load_relations(f, d, "hilbert");
    TruncatedAlgebra<F> t(rels, deg);
    Report r;
    r.body["command"] = "hilbert";
    r.body["field"] = d.field.name();
    r.body["N"] = rels.degree();
    r.body["truncation"] = deg;
    r.body["series"] = t.hilbert_series();
    r.body["groebner_basis_size"] = t.groebner_basis().size();
    return r;
}

template <class F>
Report fit(const F& f, const Document& d, const Options& o) {
    const Quiver& q = d.quiver;
    if (!d.relations) throw InputError("fit-potential needs a relations block");
    std::vector<Element<F>> rels;
    for (const auto& x : *d.relations) rels.push_back(to_element(f, x));
    if (o.mode == FitMode::PerGeneratorLine && !d.relations_keyed)
        throw InputError("per-line fitting needs relations keyed by arrows (rel <arrow> = ...)");
    auto res = fit_potential(q, rels, o.mode, o.seed);
    Report r;
    Json& b = r.body;
    b["command"] = "fit-potential";
    b["field"] = d.field.name();
    b["mode"] = fit_mode_name(o.mode);
    b["feasible"] = res.feasible;
    b["candidate_dim"] = res.candidate_dim;
    if (o.mode == FitMode::WholeSpan) {
        b["target_rank"] = res.target_rank;
        b["best_rank"] = res.best_rank;
        b["seeds"] = res.seeds;
        b["sampling_field"] = "F " + std::to_string(kFitPrime);
    }
    if (res.potential) {
        b["potential"] = potential_lines(f, q, *res.potential);
        Document out{d.field, q, from_potential(f, *res.potential), std::nullopt, d.relations, d.relations_keyed};
        b["document"] = print_document(out);
    }
    r.exit_code = res.feasible ? kOk : kNegative;
    return r;
}

template <class F>
Document instance_document(const FieldSpec& spec, const F& f, const ExampleInstance<F>& inst) {
    Document d{spec, inst.quiver, std::nullopt, std::nullopt, std::vector<RawElement>{}, true};
    if (inst.potential) d.potential = from_potential(f, *inst.potential);
    for (const auto& r : inst.relations) d.relations->push_back(from_element(f, r));
    return d;
}

template <class F>
Document deformation_document(const FieldSpec& spec, const F& f, const Deformation<F>& def) {
    Document d{spec, def.quiver(), from_potential(f, *def.top()), std::vector<RawElement>{}, std::nullopt, false};
    for (const auto& x : def.phi()) d.deformation->push_back(from_element(f, x));
    return d;
}

inline long long int_arg(const std::vector<std::string>& args, std::size_t i, long long fallback) {
    if (i >= args.size()) return fallback;
    try {
        std::size_t used = 0;
        long long v = std::stoll(args[i], &used);
        if (used != args[i].size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw InputError("expected an integer, got '" + args[i] + "'");
    }
}

inline mpq_class rational_arg(const std::vector<std::string>& args, std::size_t i, long long fallback) {
    if (i >= args.size()) return mpq_class(mpz_class(std::to_string(fallback)));
    auto v = parse_coefficient(args[i]);
    if (!v) throw InputError("expected a rational number, got '" + args[i] + "'");
    return *v;
}

}  // namespace detail

inline const std::vector<std::pair<std::string, std::string>>& zoo_names() {
    static const std::vector<std::pair<std::string, std::string>> names{
        {"yang-mills", "[s=2]"},
        {"cubic-type-a", "[a=1] [b=2]"},
        {"antisymmetriser", "[n=3]"},
        {"cyclic", "[k=3] [l=2]"},
        {"cyclic-deformation", "[k=3] [l=2]"},
        {"two-vertex", "[N=3]"},
        {"two-vertex-deformation", "[which=1] (characteristic 2 for 1 and 2, 3 for 3)"},
        {"one-loop-cubic", ""},
    };
    return names;
}

// Builds a named example. characteristic 0 means Q; nullopt picks the example's natural field.
inline Report run_zoo(const std::string& name, const std::vector<std::string>& args,
                      std::optional<std::uint64_t> characteristic = std::nullopt) {
    using detail::int_arg;
    Report r;
    r.body["command"] = "zoo";
    r.body["name"] = name;
    if (name == "list") {
        Json list = Json::array();
        for (const auto& [n, params] : zoo_names()) list.push_back(params.empty() ? n : n + " " + params);
        r.body["examples"] = list;
        return r;
    }
    std::uint64_t p = characteristic.value_or(0);
    if (name == "two-vertex-deformation" && !characteristic) p = int_arg(args, 0, 1) == 3 ? 3 : 2;
    FieldSpec spec = p == 0 ? FieldSpec::rationals() : FieldSpec::prime(p);
    return with_field(spec, [&](auto f) -> Report {
        using F = decltype(f);
        auto from_q = [&](const mpq_class& v) { return f.from_rational(v); };
        Document doc;
        Json facts;
        auto take = [&](const ExampleInstance<F>& inst) {
            doc = detail::instance_document(spec, f, inst);
            for (const auto& [k, v] : inst.facts) facts[k] = v;
            facts["scale"] = to_rational(f, inst.scale).get_str();
        };
        if (name == "yang-mills") {
            take(yang_mills(f, static_cast<int>(int_arg(args, 0, 2))));
        } else if (name == "cubic-type-a") {
            take(cubic_type_a(f, from_q(detail::rational_arg(args, 0, 1)), from_q(detail::rational_arg(args, 1, 2))));
        } else if (name == "antisymmetriser") {
            take(antisymmetriser(f, static_cast<int>(int_arg(args, 0, 3))));
        } else if (name == "cyclic") {
            take(cyclic_quiver(f, static_cast<int>(int_arg(args, 0, 3)), static_cast<int>(int_arg(args, 1, 2))));
        } else if (name == "cyclic-deformation") {
            int k = static_cast<int>(int_arg(args, 0, 3)), l = static_cast<int>(int_arg(args, 1, 2));
            doc = detail::deformation_document(spec, f, cyclic_deformation(f, k, l));
            facts["k"] = std::to_string(k);
            facts["l"] = std::to_string(l);
        } else if (name == "two-vertex") {
            take(two_vertex(f, static_cast<int>(int_arg(args, 0, 3))));
        } else if (name == "two-vertex-deformation") {
            int which = static_cast<int>(int_arg(args, 0, 1));
            doc = detail::deformation_document(spec, f, two_vertex_deformation(f, which));
            facts["which"] = std::to_string(which);
        } else if (name == "one-loop-cubic") {
            take(one_loop_cubic(f));
        } else {
            throw InputError("unknown example '" + name + "' (try 'zoo list')");
        }
        Report out;
        out.body["command"] = "zoo";
        out.body["name"] = name;
        out.body["field"] = spec.name();
        out.body["facts"] = facts;
        out.body["document"] = print_document(doc);
        return out;
    });
}

// Runs one command on a parsed document. Input problems raise InputError; the caller maps
// them to kInputError.
inline Report run(const std::string& command, const Document& doc, const Options& opt) {
    return with_field(doc.field, [&](auto f) -> Report {
        if (command == "derive") return detail::derive(f, doc);
        if (command == "check-pbw") return detail::check_pbw(f, doc, opt);
        if (command == "reconstruct") return detail::reconstruct(f, doc);
        if (command == "check-cy") return detail::check_cy(f, doc, opt);
        if (command == "hilbert") return detail::hilbert(f, doc, opt);
        if (command == "fit-potential") return detail::fit(f, doc, opt);
        throw InputError("unknown command '" + command + "'");
    });
}

inline Report error_report(const std::string& command, const std::string& kind, const std::string& message,
                           int code) {
    Report r;
    r.body["command"] = command;
    Json err;
    err["kind"] = kind;
    err["message"] = message;
    r.body["error"] = err;
    r.exit_code = code;
    return r;
}

namespace detail {

inline std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "undetermined";
    return v.dump();
}

inline bool is_flat(const Json& v) {
    if (!v.is_array()) return !v.is_object();
    for (const auto& x : v)
        if (x.is_array() || x.is_object() || (x.is_string() && x.get<std::string>().find(' ') != std::string::npos))
            return false;
    return true;
}

inline void render(std::string& out, const Json& v, const std::string& indent) {
    for (const auto& [key, val] : v.items()) {
        if (val.is_array() && is_flat(val)) {
            out += indent + key + ":";
            for (const auto& x : val) out += " " + scalar_text(x);
            if (val.empty()) out += " []";
            out += "\n";
        } else if (val.is_object()) {
            out += indent + key + ":\n";
            render(out, val, indent + "  ");
        } else if (val.is_array()) {
            out += indent + key + ":\n";
            for (const auto& x : val) {
                if (!x.is_object() && !x.is_array()) {
                    out += indent + "  - " + scalar_text(x) + "\n";
                    continue;
                }
                out += indent + "  -\n";
                if (x.is_object())
                    render(out, x, indent + "    ");
                else
                    out += indent + "    " + scalar_text(x) + "\n";
            }
        } else {
            out += indent + key + ": " + scalar_text(val) + "\n";
        }
    }
}

}  // namespace detail

// Text output. A report carrying a document prints the document last, preceded by the other
// entries as comments, so the text can be fed back in as input.
inline std::string render(const Report& r, Format fmt) {
    if (fmt == Format::Json) return r.body.dump(2) + "\n";
    if (!r.body.contains("document")) {
        std::string out;
        detail::render(out, r.body, "");
        return out;
    }
    Json rest = r.body;
    rest.erase("document");
    std::string head, out;
    detail::render(head, rest, "");
    std::istringstream in(head);
    for (std::string line; std::getline(in, line);) out += "# " + line + "\n";
    return out + r.body["document"].get<std::string>();
}

}  // namespace qpot::cli
