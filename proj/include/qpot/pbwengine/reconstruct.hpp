#pragma once

#include "qpot/pbwengine/conditions.hpp"

#include <map>
#include <optional>
#include <string>

namespace qpot {

class ReconstructionError : public MathError {
public:
    enum class Kind { Pbw2PrimeViolated, CharacteristicDividesFactorial, LambdaInconsistent, RoundTripFailed };

    ReconstructionError(Kind kind, const std::string& msg) : MathError(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::Pbw2PrimeViolated: return "pbw2prime-violated";
            case Kind::CharacteristicDividesFactorial: return "characteristic-divides-factorial";
            case Kind::LambdaInconsistent: return "lambda-inconsistent";
            default: return "round-trip-failed";
        }
    }

private:
    Kind kind_;
};

// phi_{j-1}(r_a) = sum_q lambda_{a,q} q; lambda is constant along the pairs (a, q)
// with cl(a q) fixed iff the degree-j part of (PBW2') holds.
template <class F>
struct LambdaTable {
    std::size_t j = 0;
    std::map<Path, typename F::value_type> lambda;  // per cycle class, zero entries omitted
    struct Clash {
        Path cls;
        int arrow1;
        Path q1;
        typename F::value_type value1;
        int arrow2;
        Path q2;
        typename F::value_type value2;
    };
    std::optional<Clash> clash;
};

template <class F>
LambdaTable<F> lambda_table(const Deformation<F>& def, std::size_t j) {
    const Quiver& q = def.quiver();
    const F& f = def.field();
    if (j < 1 || j > def.degree()) throw MathError("lambda_table: j out of range");
    LambdaTable<F> t;
    t.j = j;
    struct Seen {
        int arrow;
        Path q;
        typename F::value_type value;
    };
    std::map<Path, Seen> first;
    for (int a = 0; a < q.arrow_count(); ++a) {
        Element<F> ph = def.phi(a, j - 1);
        for (const auto& path : paths_between(q, j - 1, q.target(a), q.source(a))) {
            auto lam = ph.coefficient(path);
            Path cyc = compose(arrow_path(q, a), path);
            Path cls = class_of(q, cyc);
            auto [it, fresh] = first.emplace(cls, Seen{a, path, lam});
            if (fresh) {
                if (!F::is_zero(lam)) t.lambda.emplace(cls, lam);
                continue;
            }
            if (it->second.value != lam && !t.clash)
                t.clash = typename LambdaTable<F>::Clash{cls, it->second.arrow, it->second.q, it->second.value, a, path, lam};
        }
    }
    return t;
}

// Returns W' = W_N + ... + W_1 with phi(d_a W) = -d_a W'.
template <class F>
Potential<F> reconstruct_potential(const Deformation<F>& def) {
    const Quiver& q = def.quiver();
    const F& f = def.field();
    std::size_t n = def.degree();
    auto residues = pbw2prime_residues(def);
    for (std::size_t e = 0; e < residues.size(); ++e)
        if (!residues[e].is_zero())
            throw ReconstructionError(ReconstructionError::Kind::Pbw2PrimeViolated,
                                      "(PBW2') fails at vertex " + q.vertex_name(static_cast<int>(e)) +
                                          ": residue " + to_string(q, residues[e]));
    if (char_divides_factorial(f, static_cast<long long>(n)))
        throw ReconstructionError(ReconstructionError::Kind::CharacteristicDividesFactorial,
                                  "characteristic " + std::to_string(f.characteristic()) + " divides N! for N = " +
                                      std::to_string(n));
    if (!def.top()) throw InputError("reconstruction needs the top potential");

    Potential<F> w(f);
    for (std::size_t j = 1; j <= n; ++j) {
        auto t = lambda_table(def, j);
        if (t.clash) {
            const auto& c = *t.clash;
            throw ReconstructionError(
                ReconstructionError::Kind::LambdaInconsistent,
                "lambda is not constant on the class of " + path_to_string(q, c.cls) + " (degree " + std::to_string(j) +
                    "): " + q.arrow(c.arrow1).name + " / " + path_to_string(q, c.q1) + " -> " + F::to_string(c.value1) +
                    ", " + q.arrow(c.arrow2).name + " / " + path_to_string(q, c.q2) + " -> " + F::to_string(c.value2));
        }
        // W_j = -(1/j) sum over classes of lambda * c'(sigma), projected; c'(sigma) projects to (j/m) sigma
        auto inv_j = f.inv(f.from_int(static_cast<long long>(j)));
        for (const auto& [cls, lam] : t.lambda) {
            auto proj = project_to_potential(q, cyclic_symmetrize_prime(f, q, cls));
            w += proj.scaled(f.neg(f.mul(inv_j, lam)));
        }
    }
    auto back = deformation_from_potential(q, *def.top(), w);
    if (!(back.phi() == def.phi()))
        throw ReconstructionError(ReconstructionError::Kind::RoundTripFailed,
                                  "reconstructed potential does not reproduce phi");
    return w;
}

}  // namespace qpot
