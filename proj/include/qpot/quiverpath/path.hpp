#pragma once

#include "qpot/quiverpath/quiver.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace qpot {

// A path stored in application order: arrows[0] is applied first.
// Written right to left, arrows.back() is the leftmost letter.
struct Path {
    int src = 0;
    int tgt = 0;
    std::vector<int> arrows;

    std::size_t length() const { return arrows.size(); }
    bool trivial() const { return arrows.empty(); }
    bool is_cycle() const { return src == tgt; }

    // canonical order: length, then lexicographic on arrow indices
    std::strong_ordering operator<=>(const Path& o) const {
        if (auto c = arrows.size() <=> o.arrows.size(); c != 0) return c;
        if (auto c = arrows <=> o.arrows; c != 0) return c;
        if (auto c = src <=> o.src; c != 0) return c;
        return tgt <=> o.tgt;
    }
    bool operator==(const Path&) const = default;
};

struct PathHash {
    std::size_t operator()(const Path& p) const {
        std::size_t h = std::hash<int>{}(p.src) * 1000003u ^ std::hash<int>{}(p.tgt);
        for (int a : p.arrows) h = h * 1000003u ^ static_cast<std::size_t>(a + 1);
        return h;
    }
};

inline Path vertex_path(int v) { return Path{v, v, {}}; }
inline Path arrow_path(const Quiver& q, int a) { return Path{q.source(a), q.target(a), {a}}; }

// Storage-order word to path; throws on a non-composable word.
inline Path make_path(const Quiver& q, const std::vector<int>& word) {
    if (word.empty()) throw InputError("make_path: empty word needs a vertex");
    for (std::size_t i = 1; i < word.size(); ++i)
        if (q.target(word[i - 1]) != q.source(word[i])) throw InputError("arrows do not compose");
    return Path{q.source(word.front()), q.target(word.back()), word};
}

// later * earlier, i.e. earlier is applied first; nullopt-free: throws if not composable
inline bool composable(const Path& later, const Path& earlier) { return earlier.tgt == later.src; }

inline Path compose(const Path& later, const Path& earlier) {
    if (!composable(later, earlier)) throw MathError("compose: paths are not composable");
    Path p{earlier.src, later.tgt, earlier.arrows};
    p.arrows.insert(p.arrows.end(), later.arrows.begin(), later.arrows.end());
    return p;
}

// Sub-path of storage positions [from, to).
inline Path subpath(const Quiver& q, const Path& p, std::size_t from, std::size_t to) {
    if (from == to) {
        int v = from == 0 ? p.src : q.target(p.arrows[from - 1]);
        return vertex_path(v);
    }
    return Path{q.source(p.arrows[from]), q.target(p.arrows[to - 1]),
                std::vector<int>(p.arrows.begin() + from, p.arrows.begin() + to)};
}

// Rotation of a cycle starting at storage position r.
inline Path rotate(const Quiver& q, const Path& cycle, std::size_t r) {
    if (cycle.trivial() || r == 0) return cycle;
    std::vector<int> w(cycle.arrows.begin() + r, cycle.arrows.end());
    w.insert(w.end(), cycle.arrows.begin(), cycle.arrows.begin() + r);
    int v = q.source(w.front());
    return Path{v, v, std::move(w)};
}

// Written right to left, separated by spaces; trivial paths print as e[v].
inline std::string path_to_string(const Quiver& q, const Path& p) {
    if (p.trivial()) return "e[" + q.vertex_name(p.src) + "]";
    std::string s;
    for (std::size_t i = p.arrows.size(); i-- > 0;) {
        s += q.arrow(p.arrows[i]).name;
        if (i) s += ' ';
    }
    return s;
}

// All paths of the given length, in canonical order.
inline std::vector<Path> paths_of_length(const Quiver& q, std::size_t len) {
    std::vector<Path> cur;
    if (len == 0) {
        for (int v = 0; v < q.vertex_count(); ++v) cur.push_back(vertex_path(v));
        return cur;
    }
    for (int a = 0; a < q.arrow_count(); ++a) cur.push_back(arrow_path(q, a));
    for (std::size_t l = 1; l < len; ++l) {
        std::vector<Path> next;
        for (const auto& p : cur)
            for (int a = 0; a < q.arrow_count(); ++a)
                if (q.source(a) == p.tgt) {
                    Path n = p;
                    n.arrows.push_back(a);
                    n.tgt = q.target(a);
                    next.push_back(std::move(n));
                }
        cur = std::move(next);
    }
    return cur;
}

inline std::vector<Path> paths_between(const Quiver& q, std::size_t len, int from, int to) {
    std::vector<Path> out;
    for (auto& p : paths_of_length(q, len))
        if (p.src == from && p.tgt == to) out.push_back(std::move(p));
    return out;
}

}  // namespace qpot

namespace qpot {

// Parses a path written right to left ("a3 a4 a1"), or "e[v]" for a trivial path.
inline Path parse_path(const Quiver& q, const std::string& text) {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : text) {
        if (ch == ' ' || ch == '\t') {
            if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    if (toks.empty()) throw InputError("empty path");
    if (toks.size() == 1 && toks[0].size() > 3 && toks[0].rfind("e[", 0) == 0 && toks[0].back() == ']')
        return vertex_path(q.vertex_index(toks[0].substr(2, toks[0].size() - 3)));
    std::vector<int> word;
    for (auto it = toks.rbegin(); it != toks.rend(); ++it) word.push_back(q.arrow_index(*it));
    return make_path(q, word);
}

}  // namespace qpot
