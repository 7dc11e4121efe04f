#pragma once

#include "qpot/pbwengine/deformation.hpp"

#include <vector>

namespace qpot {

struct GrDegree {
    std::size_t degree;
    std::size_t filtration_dim;  // dim F^d kQ
    std::size_t ideal_dim;       // dim (J_E meet F^d), E = d + slack
    std::size_t upper_bound;     // >= dim F^d A'
    std::size_t graded_cumulative;  // sum_{i <= d} dim A_i
    bool violation;                 // upper_bound < graded_cumulative
};

struct GrOracleReport {
    std::size_t slack = 0;
    std::vector<GrDegree> degrees;
    bool violation_certified = false;
    std::size_t first_violation = 0;
};

// Independent PBW test: J_E is spanned by u p_a v with |u| + N + |v| <= E, and
// dim F^d - dim(J_E meet F^d) bounds dim F^d A' from above. A bound below the
// graded dimension certifies that A' is not a PBW deformation.
template <class F>
GrOracleReport gr_oracle(const Deformation<F>& def, std::size_t max_degree, std::optional<std::size_t> slack = {}) {
    const Quiver& q = def.quiver();
    const F& f = def.field();
    std::size_t n = def.degree();
    GrOracleReport rep;
    rep.slack = slack.value_or(n);
    TruncatedAlgebra<F> graded(def.base(), max_degree);
    auto p = def.relations();

    std::vector<std::vector<Path>> by_len;
    std::size_t cumulative = 0, fdim = 0;
    for (std::size_t d = 0; d <= max_degree; ++d) {
        cumulative += graded.dim(d);
        fdim += paths_of_length(q, d).size();
        std::size_t e = d + rep.slack;
        while (by_len.size() <= e) by_len.push_back(paths_of_length(q, by_len.size()));
        PathBasis basis = PathBasis::filtration_descending(q, e);
        std::size_t low_start = basis.size() - fdim;  // first column of degree <= d
        EchelonBuilder<F> eb(f, basis.size());
        if (e >= n) {
            std::size_t room = e - n;
            for (int a = 0; a < q.arrow_count(); ++a) {
                for (std::size_t lu = 0; lu <= room; ++lu)
                    for (const auto& u : by_len[lu]) {
                        if (u.src != q.source(a)) continue;
                        Element<F> up = Element<F>(f, u) * p[a];
                        for (std::size_t lv = 0; lv + lu <= room; ++lv)
                            for (const auto& v : by_len[lv]) {
                                if (v.tgt != q.target(a)) continue;
                                eb.add(basis.to_sparse(up * Element<F>(f, v)));
                            }
                    }
            }
        }
        std::size_t in_low = 0;
        for (auto c : eb.pivots())
            if (c >= low_start) ++in_low;
        GrDegree g{d, fdim, in_low, fdim - in_low, cumulative, fdim - in_low < cumulative};
        if (g.violation && !rep.violation_certified) {
            rep.violation_certified = true;
            rep.first_violation = d;
        }
        rep.degrees.push_back(g);
    }
    return rep;
}

}  // namespace qpot
