#pragma once

#include "qpot/potentials/potential.hpp"

#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qpot::cli {

// Field-free linear combination; coefficients are reduced into the document's field on use.
using RawElement = std::map<Path, mpq_class>;

struct Document {
    FieldSpec field;
    Quiver quiver;
    std::optional<RawElement> potential;              // keys are canonical cycle representatives
    std::optional<std::vector<RawElement>> deformation;  // phi per arrow
    std::optional<std::vector<RawElement>> relations;
    bool relations_keyed = false;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg)
        : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

namespace detail {

struct Token {
    std::string text;
    std::size_t col;
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

inline bool valid_name(const std::string& s) {
    static const std::regex re("[A-Za-z0-9_.']+");
    return std::regex_match(s, re);
}

inline std::optional<mpq_class> parse_coefficient(const std::string& s) {
    static const std::regex re("[+-]?[0-9]+(/[0-9]+)?");
    if (!std::regex_match(s, re)) return std::nullopt;
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num), d(1);
    if (slash != std::string::npos) d = mpz_class(s.substr(slash + 1));
    if (d == 0) return std::nullopt;
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

inline void add_raw(RawElement& x, const Path& p, const mpq_class& c) {
    auto [it, fresh] = x.emplace(p, c);
    if (!fresh) it->second += c;
    if (it->second == 0) x.erase(it);
}

class ElementParser {
public:
    ElementParser(const Quiver& q, std::size_t line) : q_(q), line_(line) {}

    Path path(const std::vector<Token>& toks) const {
        if (toks.size() == 1 && toks[0].text.rfind("e[", 0) == 0 && toks[0].text.back() == ']') {
            auto name = toks[0].text.substr(2, toks[0].text.size() - 3);
            if (!q_.has_vertex(name)) throw ParseError(line_, toks[0].col, "unknown vertex '" + name + "'");
            return vertex_path(q_.vertex_index(name));
        }
        std::vector<int> word;
        for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
            if (!q_.has_arrow(it->text)) throw ParseError(line_, it->col, "unknown arrow '" + it->text + "'");
            int a = q_.arrow_index(it->text);
            if (!word.empty() && q_.target(word.back()) != q_.source(a))
                throw ParseError(line_, it->col,
                                 "arrow '" + it->text + "' cannot follow '" + q_.arrow(word.back()).name + "'");
            word.push_back(a);
        }
        return make_path(q_, word);
    }

    RawElement element(const std::vector<Token>& toks) const {
        RawElement out;
        if (toks.empty()) throw ParseError(line_, 1, "missing element");
        if (toks.size() == 1 && toks[0].text == "0") return out;
        std::size_t i = 0;
        bool first = true;
        while (i < toks.size()) {
            mpq_class sign = 1;
            if (toks[i].text == "+" || toks[i].text == "-") {
                if (toks[i].text == "-") sign = -1;
                ++i;
            } else if (!first) {
                throw ParseError(line_, toks[i].col, "expected '+' or '-' before '" + toks[i].text + "'");
            }
            first = false;
            if (i >= toks.size()) throw ParseError(line_, toks.back().col, "missing term after sign");
            mpq_class coeff = 1;
            if (i + 1 < toks.size() && toks[i + 1].text == "*") {
                auto c = parse_coefficient(toks[i].text);
                if (!c) throw ParseError(line_, toks[i].col, "bad coefficient '" + toks[i].text + "'");
                coeff = *c;
                i += 2;
            }
            std::vector<Token> ptoks;
            while (i < toks.size() && toks[i].text != "+" && toks[i].text != "-" && toks[i].text != "*")
                ptoks.push_back(toks[i++]);
            if (ptoks.empty()) {
                std::size_t col = i < toks.size() ? toks[i].col : toks.back().col;
                throw ParseError(line_, col, "missing path");
            }
            add_raw(out, path(ptoks), sign * coeff);
        }
        return out;
    }

private:
    const Quiver& q_;
    std::size_t line_;
};

}  // namespace detail

inline Document parse_document(std::string_view text) {
    using detail::Token;
    std::optional<FieldSpec> field;
    std::vector<std::string> vertices;
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    std::optional<Quiver> quiver;
    Document doc;
    enum class Block { None, Potential, Deformation, Relations } block = Block::None;
    std::optional<bool> keyed;
    std::vector<std::optional<RawElement>> phi, keyed_rels;
    std::vector<RawElement> loose_rels;
    std::size_t last_line = 0, header_line = 0;

    auto build_quiver = [&](std::size_t line) {
        if (quiver) return;
        if (!field) throw ParseError(line, 1, "missing 'field' line");
        try {
            quiver = Quiver::from_names(vertices, arrows);
        } catch (const InputError& e) {
            throw ParseError(header_line ? header_line : line, 1, e.what());
        }
        phi.assign(quiver->arrow_count(), std::nullopt);
        keyed_rels.assign(quiver->arrow_count(), std::nullopt);
    };

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = detail::tokenize(raw);
        if (toks.empty()) continue;
        last_line = lineno;
        const std::string& kw = toks[0].text;
        auto need = [&](bool ok, std::size_t col, const std::string& msg) {
            if (!ok) throw ParseError(lineno, col, msg);
        };
        if (kw == "field") {
            need(!field, 1, "duplicate 'field' line");
            need(!quiver, 1, "'field' must come before the blocks");
            if (toks.size() == 2 && toks[1].text == "Q") {
                field = FieldSpec::rationals();
            } else {
                need(toks.size() == 3 && toks[1].text == "F", toks.size() > 1 ? toks[1].col : 1,
                     "expected 'field Q' or 'field F <p>'");
                auto p = detail::parse_coefficient(toks[2].text);
                need(p && p->get_den() == 1 && *p > 1 && p->get_num().fits_ulong_p(), toks[2].col, "bad characteristic");
                try {
                    field = FieldSpec::prime(p->get_num().get_ui());
                } catch (const InputError& e) {
                    throw ParseError(lineno, toks[2].col, e.what());
                }
            }
            block = Block::None;
            continue;
        }
        if (kw == "vertex" || kw == "arrow") {
            need(!quiver, 1, "vertices and arrows must be declared before the blocks");
            header_line = lineno;
            if (kw == "vertex") {
                need(toks.size() == 2, 1, "expected 'vertex <id>'");
                need(detail::valid_name(toks[1].text), toks[1].col, "bad vertex name '" + toks[1].text + "'");
                vertices.push_back(toks[1].text);
            } else {
                need(toks.size() == 6 && toks[2].text == ":" && toks[4].text == "->", 1,
                     "expected 'arrow <id> : <source> -> <target>'");
                need(detail::valid_name(toks[1].text), toks[1].col, "bad arrow name '" + toks[1].text + "'");
                arrows.emplace_back(toks[1].text, toks[3].text, toks[5].text);
            }
            continue;
        }
        if (kw == "potential" || kw == "deformation" || kw == "relations") {
            need(toks.size() == 1, toks.size() > 1 ? toks[1].col : 1, "unexpected text after '" + kw + "'");
            build_quiver(lineno);
            if (kw == "potential") {
                need(!doc.potential, 1, "duplicate potential block");
                doc.potential.emplace();
                block = Block::Potential;
            } else if (kw == "deformation") {
                need(block != Block::Deformation && !doc.deformation, 1, "duplicate deformation block");
                doc.deformation.emplace();
                block = Block::Deformation;
            } else {
                need(!doc.relations, 1, "duplicate relations block");
                doc.relations.emplace();
                block = Block::Relations;
            }
            continue;
        }
        need(block != Block::None, 1, "unknown directive '" + kw + "'");
        const Quiver& q = *quiver;
        detail::ElementParser ep(q, lineno);
        if (block == Block::Potential) {
            auto x = ep.element(toks);
            for (const auto& [p, c] : x) {
                if (p.src != p.tgt) {
                    // point at the first token of the offending term
                    throw ParseError(lineno, toks[0].col, "potential term '" + path_to_string(q, p) + "' is not a cycle");
                }
                detail::add_raw(*doc.potential, class_of(q, p), c);
            }
            continue;
        }
        if (block == Block::Deformation) {
            need(kw == "phi", 1, "expected 'phi <arrow> = <element>'");
            need(toks.size() >= 4 && toks[2].text == "=", 1, "expected 'phi <arrow> = <element>'");
            need(q.has_arrow(toks[1].text), toks[1].col, "unknown arrow '" + toks[1].text + "'");
            int a = q.arrow_index(toks[1].text);
            need(!phi[a], toks[1].col, "phi of '" + toks[1].text + "' given twice");
            auto x = ep.element({toks.begin() + 3, toks.end()});
            for (const auto& [p, c] : x)
                need(p.src == q.target(a) && p.tgt == q.source(a), toks[3].col,
                     "phi(" + toks[1].text + ") must run from " + q.vertex_name(q.target(a)) + " to " +
                         q.vertex_name(q.source(a)) + ", got '" + path_to_string(q, p) + "'");
            phi[a] = std::move(x);
            continue;
        }
        need(kw == "rel", 1, "expected 'rel [<arrow>] = <element>'");
        need(toks.size() >= 3, 1, "expected 'rel [<arrow>] = <element>'");
        bool this_keyed = toks[1].text != "=";
        need(!keyed || *keyed == this_keyed, 1, "relations must be either all keyed by arrows or none");
        keyed = this_keyed;
        if (this_keyed) {
            need(toks.size() >= 4 && toks[2].text == "=", 1, "expected 'rel <arrow> = <element>'");
            need(q.has_arrow(toks[1].text), toks[1].col, "unknown arrow '" + toks[1].text + "'");
            int a = q.arrow_index(toks[1].text);
            need(!keyed_rels[a], toks[1].col, "relation of '" + toks[1].text + "' given twice");
            keyed_rels[a] = ep.element({toks.begin() + 3, toks.end()});
        } else {
            loose_rels.push_back(ep.element({toks.begin() + 2, toks.end()}));
        }
    }
    build_quiver(last_line + 1);
    doc.field = *field;
    doc.quiver = *quiver;
    if (doc.deformation)
        for (auto& x : phi) doc.deformation->push_back(x.value_or(RawElement{}));
    if (doc.relations) {
        doc.relations_keyed = keyed.value_or(false);
        if (doc.relations_keyed)
            for (auto& x : keyed_rels) doc.relations->push_back(x.value_or(RawElement{}));
        else
            *doc.relations = std::move(loose_rels);
    }
    return doc;
}

inline std::string print_raw(const Quiver& q, const RawElement& x) {
    if (x.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [p, c] : x) {
        if (first) {
            s += c.get_str();
        } else {
            s += c < 0 ? " - " : " + ";
            s += mpq_class(abs(c)).get_str();
        }
        s += " * " + path_to_string(q, p);
        first = false;
    }
    return s;
}

inline std::string print_document(const Document& d) {
    const Quiver& q = d.quiver;
    std::string s = "field " + d.field.name() + "\n";
    for (int v = 0; v < q.vertex_count(); ++v) s += "vertex " + q.vertex_name(v) + "\n";
    for (const auto& a : q.arrows())
        s += "arrow " + a.name + " : " + q.vertex_name(a.source) + " -> " + q.vertex_name(a.target) + "\n";
    if (d.potential) {
        s += "potential\n";
        if (d.potential->empty()) s += "  0\n";
        for (const auto& [p, c] : *d.potential) s += "  " + c.get_str() + " * " + path_to_string(q, p) + "\n";
    }
    if (d.deformation) {
        s += "deformation\n";
        for (int a = 0; a < q.arrow_count(); ++a)
            s += "  phi " + q.arrow(a).name + " = " + print_raw(q, (*d.deformation)[a]) + "\n";
    }
    if (d.relations) {
        s += "relations\n";
        for (std::size_t i = 0; i < d.relations->size(); ++i) {
            s += "  rel ";
            if (d.relations_keyed) s += q.arrow(static_cast<int>(i)).name + " ";
            s += "= " + print_raw(q, (*d.relations)[i]) + "\n";
        }
    }
    return s;
}

// Conversions between document data and field-typed values.

inline mpq_class to_rational(const Rationals&, const mpq_class& v) { return v; }
inline mpq_class to_rational(const PrimeField&, std::uint64_t v) { return mpq_class(mpz_class(std::to_string(v))); }

template <class F>
Element<F> to_element(const F& f, const RawElement& x) {
    Element<F> out(f);
    for (const auto& [p, c] : x) out.add_term(p, f.from_rational(c));
    return out;
}

template <class F>
Potential<F> to_potential(const F& f, const RawElement& x) {
    Potential<F> out(f);
    for (const auto& [p, c] : x) out.add_class(p, f.from_rational(c));
    return out;
}

template <class F>
RawElement from_element(const F& f, const Element<F>& x) {
    RawElement out;
    for (const auto& [p, c] : x.terms()) out.emplace(p, to_rational(f, c));
    return out;
}

template <class F>
RawElement from_potential(const F& f, const Potential<F>& w) {
    RawElement out;
    for (const auto& [p, c] : w.terms()) out.emplace(p, to_rational(f, c));
    return out;
}

}  // namespace qpot::cli
