#pragma once

#include "qpot/quiverpath/path.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace qpot {

// A finite linear combination of paths. Zero coefficients are never stored.
template <class F>
class Element {
public:
    using value_type = typename F::value_type;
    using Terms = std::map<Path, value_type>;

    explicit Element(F f) : f_(std::move(f)) {}
    Element(F f, const Path& p) : f_(std::move(f)) { terms_.emplace(p, f_.one()); }
    Element(F f, const Path& p, value_type c) : f_(std::move(f)) { add_term(p, std::move(c)); }

    const F& field() const { return f_; }
    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    value_type coefficient(const Path& p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? f_.zero() : it->second;
    }

    void add_term(const Path& p, const value_type& c) {
        if (F::is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(p, c);
        if (fresh) return;
        it->second = f_.add(it->second, c);
        if (F::is_zero(it->second)) terms_.erase(it);
    }

    Element& operator+=(const Element& o) {
        for (const auto& [p, c] : o.terms_) add_term(p, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        for (const auto& [p, c] : o.terms_) add_term(p, f_.neg(c));
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    Element operator-() const { return scaled(f_.neg(f_.one())); }

    Element scaled(const value_type& c) const {
        Element out(f_);
        if (F::is_zero(c)) return out;
        for (const auto& [p, x] : terms_) out.terms_.emplace(p, f_.mul(c, x));
        return out;
    }

    // Path algebra product: (*this) * o, with o applied first.
    Element operator*(const Element& o) const {
        Element out(f_);
        for (const auto& [p, x] : terms_)
            for (const auto& [q, y] : o.terms_)
                if (composable(p, q)) out.add_term(compose(p, q), f_.mul(x, y));
        return out;
    }

    // -1 for zero
    long degree() const { return terms_.empty() ? -1 : static_cast<long>(terms_.rbegin()->first.length()); }
    long low_degree() const { return terms_.empty() ? -1 : static_cast<long>(terms_.begin()->first.length()); }
    bool is_homogeneous() const { return terms_.empty() || degree() == low_degree(); }

    Element component(std::size_t d) const {
        Element out(f_);
        for (const auto& [p, x] : terms_)
            if (p.length() == d) out.terms_.emplace(p, x);
        return out;
    }

    // Common (source, target) of all terms when there is one.
    std::optional<std::pair<int, int>> endpoints() const {
        if (terms_.empty()) return std::nullopt;
        auto e = std::make_pair(terms_.begin()->first.src, terms_.begin()->first.tgt);
        for (const auto& [p, x] : terms_)
            if (p.src != e.first || p.tgt != e.second) return std::nullopt;
        return e;
    }
    bool endpoint_homogeneous() const { return terms_.empty() || endpoints().has_value(); }

    // e_t * this * e_s
    Element corner(int s, int t) const {
        Element out(f_);
        for (const auto& [p, x] : terms_)
            if (p.src == s && p.tgt == t) out.terms_.emplace(p, x);
        return out;
    }

    bool operator==(const Element& o) const { return terms_ == o.terms_; }

private:
    F f_;
    Terms terms_;
};

template <class F>
Element<F> arrow_element(const F& f, const Quiver& q, int a) {
    return Element<F>(f, arrow_path(q, a));
}

template <class F>
Element<F> vertex_element(const F& f, int v) {
    return Element<F>(f, vertex_path(v));
}

// Terms in canonical order, coefficient then path written right to left.
template <class F>
std::string to_string(const Quiver& q, const Element<F>& x) {
    if (x.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [p, c] : x.terms()) {
        if (!first) s += " + ";
        first = false;
        s += F::to_string(c) + " * " + path_to_string(q, p);
    }
    return s;
}

// Removes the first-applied arrow b from every term ending in it on the right.
template <class F>
Element<F> strip_right(const Quiver& q, const Element<F>& x, int b) {
    Element<F> out(x.field());
    for (const auto& [p, c] : x.terms())
        if (!p.trivial() && p.arrows.front() == b) out.add_term(subpath(q, p, 1, p.length()), c);
    return out;
}

// Removes the last-applied arrow b from every term starting with it on the left.
template <class F>
Element<F> strip_left(const Quiver& q, const Element<F>& x, int b) {
    Element<F> out(x.field());
    for (const auto& [p, c] : x.terms())
        if (!p.trivial() && p.arrows.back() == b) out.add_term(subpath(q, p, 0, p.length() - 1), c);
    return out;
}

// Elements of kQ (x) kQ written as sums of u (x) v.
template <class F>
class TensorElement {
public:
    using value_type = typename F::value_type;
    using Key = std::pair<Path, Path>;

    explicit TensorElement(F f) : f_(std::move(f)) {}

    const F& field() const { return f_; }
    const std::map<Key, value_type>& terms() const& { return terms_; }
    std::map<Key, value_type> terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Path& u, const Path& v, const value_type& c) {
        if (F::is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(Key{u, v}, c);
        if (fresh) return;
        it->second = f_.add(it->second, c);
        if (F::is_zero(it->second)) terms_.erase(it);
    }

    TensorElement& operator+=(const TensorElement& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }

    TensorElement swapped() const {
        TensorElement out(f_);
        for (const auto& [k, c] : terms_) out.terms_.emplace(Key{k.second, k.first}, c);
        return out;
    }

    bool operator==(const TensorElement& o) const { return terms_ == o.terms_; }

private:
    F f_;
    std::map<Key, value_type> terms_;
};

template <class F>
std::string to_string(const Quiver& q, const TensorElement<F>& x) {
    if (x.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : x.terms()) {
        if (!first) s += " + ";
        first = false;
        s += F::to_string(c) + " * " + path_to_string(q, k.first) + " (x) " + path_to_string(q, k.second);
    }
    return s;
}

// Sum over occurrences p = u a v of u (x) v.
template <class F>
TensorElement<F> double_derivative(const Quiver& q, const Element<F>& x, int a) {
    TensorElement<F> out(x.field());
    for (const auto& [p, c] : x.terms())
        for (std::size_t k = 0; k < p.length(); ++k)
            if (p.arrows[k] == a) out.add_term(subpath(q, p, k + 1, p.length()), subpath(q, p, 0, k), c);
    return out;
}

}  // namespace qpot
