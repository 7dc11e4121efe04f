#pragma once

#include "qpot/quiverpath/element.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace qpot {

// Lexicographically least rotation of a cycle (storage order).
inline Path canonical_rotation(const Quiver& q, const Path& cycle) {
    if (!cycle.is_cycle()) throw MathError("not a cycle: " + path_to_string(q, cycle));
    Path best = cycle;
    for (std::size_t r = 1; r < cycle.length(); ++r) {
        Path c = rotate(q, cycle, r);
        if (c.arrows < best.arrows) best = std::move(c);
    }
    return best;
}

// The class of a cycle is represented by its canonical rotation.
inline Path class_of(const Quiver& q, const Path& cycle) { return canonical_rotation(q, cycle); }

struct PrimitiveDecomposition {
    Path root;  // sigma = root^power
    std::size_t power;
};

inline PrimitiveDecomposition primitive_decomposition(const Quiver& q, const Path& cycle) {
    if (!cycle.is_cycle()) throw MathError("not a cycle: " + path_to_string(q, cycle));
    std::size_t j = cycle.length();
    if (j == 0) return {cycle, 1};
    for (std::size_t t = 1; t <= j; ++t) {
        if (j % t) continue;
        if (rotate(q, cycle, t).arrows == cycle.arrows) return {subpath(q, cycle, 0, t), j / t};
    }
    return {cycle, 1};
}

// All cycle classes of length j, in canonical order.
inline std::vector<Path> cycle_classes(const Quiver& q, std::size_t j) {
    std::set<Path> out;
    for (const auto& p : paths_of_length(q, j))
        if (p.is_cycle()) out.insert(class_of(q, p));
    return {out.begin(), out.end()};
}

inline std::size_t potential_dim(const Quiver& q, std::size_t j) { return cycle_classes(q, j).size(); }

// Elements of kQ / [kQ, kQ]: combinations of cycle classes.
template <class F>
class Potential {
public:
    using value_type = typename F::value_type;

    explicit Potential(F f) : f_(std::move(f)) {}

    const F& field() const { return f_; }
    const std::map<Path, value_type>& terms() const& { return terms_; }
    std::map<Path, value_type> terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }

    // cls must already be a canonical representative
    void add_class(const Path& cls, const value_type& c) {
        if (F::is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(cls, c);
        if (fresh) return;
        it->second = f_.add(it->second, c);
        if (F::is_zero(it->second)) terms_.erase(it);
    }

    void add_cycle(const Quiver& q, const Path& cycle, const value_type& c) { add_class(class_of(q, cycle), c); }

    Potential& operator+=(const Potential& o) {
        for (const auto& [p, c] : o.terms_) add_class(p, c);
        return *this;
    }
    Potential& operator-=(const Potential& o) {
        for (const auto& [p, c] : o.terms_) add_class(p, f_.neg(c));
        return *this;
    }
    friend Potential operator+(Potential a, const Potential& b) { return a += b; }
    friend Potential operator-(Potential a, const Potential& b) { return a -= b; }

    Potential scaled(const value_type& c) const {
        Potential out(f_);
        for (const auto& [p, x] : terms_) out.add_class(p, f_.mul(c, x));
        return out;
    }

    long degree() const { return terms_.empty() ? -1 : static_cast<long>(terms_.rbegin()->first.length()); }
    bool is_homogeneous() const {
        return terms_.empty() || terms_.begin()->first.length() == terms_.rbegin()->first.length();
    }

    Potential component(std::size_t j) const {
        Potential out(f_);
        for (const auto& [p, x] : terms_)
            if (p.length() == j) out.terms_.emplace(p, x);
        return out;
    }

    bool operator==(const Potential& o) const { return terms_ == o.terms_; }

private:
    F f_;
    std::map<Path, value_type> terms_;
};

template <class F>
std::string to_string(const Quiver& q, const Potential<F>& w) {
    if (w.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [p, c] : w.terms()) {
        if (!first) s += " + ";
        first = false;
        s += F::to_string(c) + " * " + path_to_string(q, p);
    }
    return s;
}

// Image of x in kQ / [kQ, kQ]; every term must be a cycle.
template <class F>
Potential<F> project_to_potential(const Quiver& q, const Element<F>& x) {
    Potential<F> w(x.field());
    for (const auto& [p, c] : x.terms()) {
        if (!p.is_cycle()) throw MathError("project_to_potential: term is not a cycle: " + path_to_string(q, p));
        w.add_cycle(q, p, c);
    }
    return w;
}

// Sum of all rotations of each class, counted with multiplicity.
template <class F>
Element<F> cyclic_symmetrize(const Quiver& q, const Potential<F>& w) {
    Element<F> out(w.field());
    for (const auto& [p, c] : w.terms())
        for (std::size_t r = 0; r < p.length(); ++r) out.add_term(rotate(q, p, r), c);
    return out;
}

// Sum of the distinct rotations of a cycle.
template <class F>
Element<F> cyclic_symmetrize_prime(const F& f, const Quiver& q, const Path& cycle) {
    auto dec = primitive_decomposition(q, cycle);
    Element<F> out(f);
    for (std::size_t r = 0; r < dec.root.length(); ++r) out.add_term(rotate(q, cycle, r), f.one());
    return out;
}

template <class F>
Element<F> cyclic_derivative(const Quiver& q, const Potential<F>& w, int a) {
    return strip_right(q, cyclic_symmetrize(q, w), a);
}

template <class F>
std::vector<Element<F>> all_cyclic_derivatives(const Quiver& q, const Potential<F>& w) {
    auto sym = cyclic_symmetrize(q, w);
    std::vector<Element<F>> out;
    for (int a = 0; a < q.arrow_count(); ++a) out.push_back(strip_right(q, sym, a));
    return out;
}

}  // namespace qpot
