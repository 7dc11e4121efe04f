#pragma once

#include "qpot/vacualgebra/relations.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace qpot {

using Word = std::vector<int>;

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = w.size();
        for (int a : w) h = h * 1000003u ^ static_cast<std::size_t>(a + 1);
        return h;
    }
};

// A = kQ / (R) in degrees 0..D, computed from a homogeneous Groebner basis.
// Leading words are the lexicographically smallest ones, so the normal form of a
// word is its reduction modulo the canonical RREF of I_d.
template <class F>
class TruncatedAlgebra {
public:
    using value_type = typename F::value_type;
    using Combo = std::vector<std::pair<Word, value_type>>;  // sorted by word

    TruncatedAlgebra(const RelationSet<F>& rels, std::size_t max_degree)
        : f_(rels.field()), q_(rels.quiver()), n_(rels.degree()), max_degree_(max_degree) {
        standard_.resize(max_degree_ + 1);
        std_index_.resize(max_degree_ + 1);
        cache_.resize(max_degree_ + 1);
        for (int v = 0; v < q_.vertex_count(); ++v) standard_[0].push_back(vertex_path(v));
        for (std::size_t d = 1; d <= max_degree_; ++d) {
            extend_basis(rels, d);
            enumerate_standard(d);
        }
    }

    const F& field() const { return f_; }
    const Quiver& quiver() const { return q_; }
    std::size_t relation_degree() const { return n_; }
    std::size_t max_degree() const { return max_degree_; }

    std::size_t dim(std::size_t d) const { return standard_.at(d).size(); }
    std::vector<std::size_t> hilbert_series() const {
        std::vector<std::size_t> out;
        for (const auto& s : standard_) out.push_back(s.size());
        return out;
    }

    // Standard words of degree d in canonical order; they form a basis of A_d.
    const std::vector<Path>& standard_words(std::size_t d) const { return standard_.at(d); }

    std::size_t standard_index(const Path& p) const {
        if (p.trivial()) return static_cast<std::size_t>(p.src);
        const auto& m = std_index_.at(p.length());
        auto it = m.find(p.arrows);
        if (it == m.end()) throw MathError("not a standard word");
        return it->second;
    }

    bool is_standard(const Word& w) const { return !find_tip(w).has_value(); }

    // Normal form of a path as a sparse vector over standard_words(len).
    SparseVec<F> normal_form_vec(const Path& p) const {
        if (p.length() > max_degree_) throw MathError("normal form requested beyond the truncation degree");
        if (p.trivial()) return {{static_cast<std::uint32_t>(p.src), f_.one()}};
        SparseVec<F> out;
        const auto& idx = std_index_[p.length()];
        if (is_standard(p.arrows)) {
            out.emplace_back(idx.at(p.arrows), f_.one());
            return out;
        }
        Combo c;
        {
            std::lock_guard<std::mutex> lock(*mutex_);
            c = nf(p.arrows);
        }
        for (const auto& [w, x] : c) out.emplace_back(idx.at(w), x);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    Element<F> normal_form(const Element<F>& x) const {
        Element<F> out(f_);
        for (const auto& [p, c] : x.terms())
            for (const auto& [i, y] : normal_form_vec(p)) out.add_term(standard_[p.length()][i], f_.mul(c, y));
        return out;
    }

    bool in_ideal(const Element<F>& x) const { return normal_form(x).is_zero(); }

    std::vector<Element<F>> groebner_basis() const {
        std::vector<Element<F>> out;
        for (const auto& g : gb_) {
            Element<F> e(f_, make_path(q_, g.tip));
            for (const auto& [w, c] : g.tail) e.add_term(make_path(q_, w), c);
            out.push_back(std::move(e));
        }
        return out;
    }

    // I_d in canonical RREF over PathBasis::of_degree(d): rows w - NF(w).
    Subspace<F> ideal_component(std::size_t d) const {
        PathBasis basis = PathBasis::of_degree(q_, d);
        std::vector<Vec<F>> rows;
        for (const auto& p : basis.paths()) {
            if (p.trivial() || is_standard(p.arrows)) continue;
            Element<F> e(f_, p);
            e -= normal_form(Element<F>(f_, p));
            rows.push_back(basis.to_vector(e));
        }
        return Subspace<F>::span(f_, basis.size(), std::move(rows));
    }

private:
    struct GbElement {
        Word tip;
        Combo tail;  // g = tip + tail
    };

    std::optional<std::pair<std::size_t, std::size_t>> find_tip(const Word& w) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t len : tip_lengths_) {
                if (i + len > w.size()) break;
                Word sub(w.begin() + i, w.begin() + i + len);
                auto it = tips_.find(sub);
                if (it != tips_.end()) return std::make_pair(i, it->second);
            }
        return std::nullopt;
    }

    static void accumulate(const F& f, std::map<Word, value_type>& acc, const Word& w, const value_type& c) {
        if (F::is_zero(c)) return;
        auto [it, fresh] = acc.emplace(w, c);
        if (fresh) return;
        it->second = f.add(it->second, c);
        if (F::is_zero(it->second)) acc.erase(it);
    }

    // caller holds mutex_ (or is the constructor)
    Combo nf(const Word& w) const {
        auto hit = find_tip(w);
        if (!hit) return {{w, f_.one()}};
        auto& cache = cache_[w.size()];
        if (auto it = cache.find(w); it != cache.end()) return it->second;
        auto [pos, gi] = *hit;
        const auto& g = gb_[gi];
        std::map<Word, value_type> acc;
        for (const auto& [s, c] : g.tail) {
            Word nw(w.begin(), w.begin() + pos);
            nw.insert(nw.end(), s.begin(), s.end());
            nw.insert(nw.end(), w.begin() + pos + g.tip.size(), w.end());
            auto neg = f_.neg(c);
            for (const auto& [u, x] : nf(nw)) accumulate(f_, acc, u, f_.mul(neg, x));
        }
        Combo out(acc.begin(), acc.end());
        cache.emplace(w, out);
        return out;
    }

    Combo reduce_combo(const std::map<Word, value_type>& x) const {
        std::map<Word, value_type> acc;
        for (const auto& [w, c] : x)
            for (const auto& [u, y] : nf(w)) accumulate(f_, acc, u, f_.mul(c, y));
        return Combo(acc.begin(), acc.end());
    }

    void extend_basis(const RelationSet<F>& rels, std::size_t d) {
        std::vector<std::map<Word, value_type>> cands;
        if (d == n_)
            for (const auto& r : rels.relations()) {
                if (r.is_zero()) continue;
                std::map<Word, value_type> m;
                for (const auto& [p, c] : r.terms()) m.emplace(p.arrows, c);
                cands.push_back(std::move(m));
            }
        // overlaps tip1 = u s, tip2 = s v with |u s v| = d
        for (std::size_t i = 0; i < gb_.size(); ++i) {
            const auto& t1 = gb_[i].tip;
            for (std::size_t s = 1; s < t1.size(); ++s) {
                std::size_t l2 = d - t1.size() + s;
                if (l2 <= s || l2 >= d) continue;
                Word sfx(t1.end() - s, t1.end());
                auto it = by_prefix_.find(sfx);
                if (it == by_prefix_.end()) continue;
                for (std::size_t j : it->second) {
                    const auto& t2 = gb_[j].tip;
                    if (t2.size() != l2) continue;
                    Word u(t1.begin(), t1.end() - s);
                    Word v(t2.begin() + s, t2.end());
                    std::map<Word, value_type> sp;
                    auto add_ext = [&](const Word& left, const Word& mid, const Word& right, const value_type& c) {
                        Word w = left;
                        w.insert(w.end(), mid.begin(), mid.end());
                        w.insert(w.end(), right.begin(), right.end());
                        accumulate(f_, sp, w, c);
                    };
                    add_ext({}, t1, v, f_.one());
                    for (const auto& [w, c] : gb_[i].tail) add_ext({}, w, v, c);
                    add_ext(u, t2, {}, f_.neg(f_.one()));
                    for (const auto& [w, c] : gb_[j].tail) add_ext(u, w, {}, f_.neg(c));
                    cands.push_back(std::move(sp));
                }
            }
        }
        std::vector<Combo> reduced;
        std::set<Word> words;
        for (const auto& c : cands) {
            auto r = reduce_combo(c);
            if (r.empty()) continue;
            for (const auto& [w, x] : r) words.insert(w);
            reduced.push_back(std::move(r));
        }
        cache_[d].clear();
        if (reduced.empty()) return;
        std::vector<Word> cols(words.begin(), words.end());
        std::map<Word, std::uint32_t> col_of;
        for (std::uint32_t k = 0; k < cols.size(); ++k) col_of.emplace(cols[k], k);
        EchelonBuilder<F> eb(f_, cols.size());
        for (const auto& r : reduced) {
            SparseVec<F> v;
            for (const auto& [w, x] : r) v.emplace_back(col_of.at(w), x);
            eb.add(std::move(v));
        }
        for (const auto& row : eb.rref()) {
            GbElement g{cols[row.front().first], {}};
            for (std::size_t k = 1; k < row.size(); ++k) g.tail.emplace_back(cols[row[k].first], row[k].second);
            std::size_t gi = gb_.size();
            tips_.emplace(g.tip, gi);
            for (std::size_t p = 1; p < g.tip.size(); ++p) by_prefix_[Word(g.tip.begin(), g.tip.begin() + p)].push_back(gi);
            gb_.push_back(std::move(g));
        }
        if (std::find(tip_lengths_.begin(), tip_lengths_.end(), d) == tip_lengths_.end()) tip_lengths_.push_back(d);
    }

    void enumerate_standard(std::size_t d) {
        auto& out = standard_[d];
        for (const auto& p : standard_[d - 1]) {
            for (int a = 0; a < q_.arrow_count(); ++a) {
                if (q_.source(a) != p.tgt) continue;
                Word w = p.arrows;
                w.push_back(a);
                bool ok = true;
                for (std::size_t len : tip_lengths_) {
                    if (len > w.size()) break;
                    if (tips_.count(Word(w.end() - len, w.end()))) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                Path np{p.src, q_.target(a), std::move(w)};
                out.push_back(std::move(np));
            }
        }
        auto& idx = std_index_[d];
        idx.reserve(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) idx.emplace(out[i].arrows, static_cast<std::uint32_t>(i));
    }

    F f_;
    Quiver q_;
    std::size_t n_;
    std::size_t max_degree_;
    std::vector<GbElement> gb_;
    std::unordered_map<Word, std::size_t, WordHash> tips_;
    std::unordered_map<Word, std::vector<std::size_t>, WordHash> by_prefix_;
    std::vector<std::size_t> tip_lengths_;  // increasing
    std::vector<std::vector<Path>> standard_;
    std::vector<std::unordered_map<Word, std::uint32_t, WordHash>> std_index_;
    mutable std::vector<std::unordered_map<Word, Combo, WordHash>> cache_;
    std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

template <class F>
TruncatedAlgebra<F> build_graded(const RelationSet<F>& rels, std::size_t max_degree) {
    return TruncatedAlgebra<F>(rels, max_degree);
}

}  // namespace qpot
