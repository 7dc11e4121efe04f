#pragma once

#include "qpot/exactalg/field.hpp"

#include <map>
#include <numeric>
#include <tuple>
#include <string>
#include <vector>

namespace qpot {

struct Arrow {
    std::string name;
    int source;
    int target;
};

// Vertices and arrows are indexed by declaration order.
class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
        if (vertices_.empty()) throw InputError("quiver has no vertices");
        if (arrows_.empty()) throw InputError("quiver has no arrows");
        for (int v = 0; v < static_cast<int>(vertices_.size()); ++v)
            if (!vertex_index_.emplace(vertices_[v], v).second) throw InputError("duplicate vertex '" + vertices_[v] + "'");
        for (int a = 0; a < static_cast<int>(arrows_.size()); ++a) {
            const auto& ar = arrows_[a];
            if (ar.source < 0 || ar.source >= vertex_count() || ar.target < 0 || ar.target >= vertex_count())
                throw InputError("arrow '" + ar.name + "' has an unknown endpoint");
            if (vertex_index_.count(ar.name)) throw InputError("arrow '" + ar.name + "' clashes with a vertex name");
            if (!arrow_index_.emplace(ar.name, a).second) throw InputError("duplicate arrow '" + ar.name + "'");
        }
    }

    // Builder form using names for the endpoints.
    static Quiver from_names(std::vector<std::string> vertices,
                             const std::vector<std::tuple<std::string, std::string, std::string>>& arrows) {
        std::map<std::string, int> idx;
        for (int v = 0; v < static_cast<int>(vertices.size()); ++v) idx[vertices[v]] = v;
        std::vector<Arrow> out;
        for (const auto& [name, s, t] : arrows) {
            auto si = idx.find(s), ti = idx.find(t);
            if (si == idx.end() || ti == idx.end()) throw InputError("arrow '" + name + "' has an unknown endpoint");
            out.push_back({name, si->second, ti->second});
        }
        return Quiver(std::move(vertices), std::move(out));
    }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::string& vertex_name(int v) const { return vertices_.at(v); }
    const Arrow& arrow(int a) const { return arrows_.at(a); }
    const std::vector<Arrow>& arrows() const& { return arrows_; }
    std::vector<Arrow> arrows() && { return std::move(arrows_); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    int source(int a) const { return arrows_[a].source; }
    int target(int a) const { return arrows_[a].target; }

    int vertex_index(const std::string& name) const {
        auto it = vertex_index_.find(name);
        if (it == vertex_index_.end()) throw InputError("unknown vertex '" + name + "'");
        return it->second;
    }
    int arrow_index(const std::string& name) const {
        auto it = arrow_index_.find(name);
        if (it == arrow_index_.end()) throw InputError("unknown arrow '" + name + "'");
        return it->second;
    }
    bool has_arrow(const std::string& name) const { return arrow_index_.count(name) != 0; }
    bool has_vertex(const std::string& name) const { return vertex_index_.count(name) != 0; }

    // arrows with the given target (e Q1) and source (Q1 e)
    std::vector<int> arrows_into(int e) const {
        std::vector<int> out;
        for (int a = 0; a < arrow_count(); ++a)
            if (target(a) == e) out.push_back(a);
        return out;
    }
    std::vector<int> arrows_out_of(int e) const {
        std::vector<int> out;
        for (int a = 0; a < arrow_count(); ++a)
            if (source(a) == e) out.push_back(a);
        return out;
    }

    bool is_connected() const {
        std::vector<int> parent(vertex_count());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& a : arrows_) parent[find(a.source)] = find(a.target);
        for (int v = 0; v < vertex_count(); ++v)
            if (find(v) != find(0)) return false;
        return true;
    }

    bool operator==(const Quiver& o) const {
        if (vertices_ != o.vertices_ || arrows_.size() != o.arrows_.size()) return false;
        for (std::size_t i = 0; i < arrows_.size(); ++i)
            if (arrows_[i].name != o.arrows_[i].name || arrows_[i].source != o.arrows_[i].source ||
                arrows_[i].target != o.arrows_[i].target)
                return false;
        return true;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> vertex_index_;
    std::map<std::string, int> arrow_index_;
};

// A quiver with one vertex "v" and one loop per name.
inline Quiver loops_quiver(const std::vector<std::string>& names) {
    std::vector<Arrow> arrows;
    for (const auto& n : names) arrows.push_back({n, 0, 0});
    return Quiver({"v"}, std::move(arrows));
}

}  // namespace qpot
