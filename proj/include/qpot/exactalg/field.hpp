#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace qpot {

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The rationals, backed by GMP.
struct Rationals {
    using value_type = mpq_class;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const { return mpq_class(mpz_class(std::to_string(v))); }
    value_type from_rational(const mpq_class& q) const { return q; }

    value_type parse(std::string_view s) const {
        mpq_class q;
        if (s.empty() || q.set_str(std::string(s), 10) != 0)
            throw InputError("bad rational literal '" + std::string(s) + "'");
        if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(s) + "'");
        q.canonicalize();
        return q;
    }

    static bool is_zero(const value_type& a) { return sgn(a) == 0; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type sub(const value_type& a, const value_type& b) { return a - b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static value_type neg(const value_type& a) { return -a; }
    static value_type inv(const value_type& a) {
        if (is_zero(a)) throw MathError("division by zero");
        return 1 / a;
    }
    // a -= c*b, the hot path of elimination
    static void submul(value_type& a, const value_type& c, const value_type& b) { a -= c * b; }

    static std::string to_string(const value_type& a) { return a.get_str(); }

    std::uint64_t characteristic() const { return 0; }
    std::string name() const { return "Q"; }
    bool operator==(const Rationals&) const = default;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Z/p for a prime p < 2^32, chosen at runtime.
class PrimeField {
public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p >= (std::uint64_t{1} << 32) || !is_prime(p))
            throw InputError("field characteristic " + std::to_string(p) + " is not a prime below 2^32");
    }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        return static_cast<value_type>(r < 0 ? r + static_cast<long long>(p_) : r);
    }
    value_type from_mpz(const mpz_class& z) const {
        mpz_class r = z % mpz_class(std::to_string(p_));
        if (r < 0) r += mpz_class(std::to_string(p_));
        return std::stoull(r.get_str());
    }
    value_type from_rational(const mpq_class& q) const {
        value_type d = from_mpz(q.get_den());
        if (d == 0) throw MathError("denominator " + q.get_den().get_str() + " vanishes mod " + std::to_string(p_));
        return mul(from_mpz(q.get_num()), inv(d));
    }
    value_type parse(std::string_view s) const { return from_rational(Rationals{}.parse(s)); }

    static bool is_zero(value_type a) { return a == 0; }
    value_type add(value_type a, value_type b) const { return (a + b) % p_; }
    value_type sub(value_type a, value_type b) const { return (a + p_ - b) % p_; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type inv(value_type a) const {
        if (a == 0) throw MathError("division by zero");
        value_type r = 1, b = a, e = p_ - 2;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    void submul(value_type& a, value_type c, value_type b) const { a = sub(a, mul(c, b)); }

    static std::string to_string(value_type a) { return std::to_string(a); }

    std::uint64_t characteristic() const { return p_; }
    std::string name() const { return "F " + std::to_string(p_); }
    bool operator==(const PrimeField&) const = default;

private:
    std::uint64_t p_;
};

// Runtime description of a field, used by front ends to pick an instantiation.
struct FieldSpec {
    std::uint64_t characteristic = 0;  // 0 means Q

    static FieldSpec rationals() { return {}; }
    static FieldSpec prime(std::uint64_t p) {
        PrimeField check(p);
        (void)check;
        return {p};
    }
    std::string name() const { return characteristic == 0 ? "Q" : "F " + std::to_string(characteristic); }
    bool operator==(const FieldSpec&) const = default;
};

template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.characteristic == 0) return fn(Rationals{});
    return fn(PrimeField(spec.characteristic));
}

template <class F>
bool char_divides_factorial(const F& field, long long n) {
    std::uint64_t p = field.characteristic();
    return p != 0 && static_cast<std::uint64_t>(n) >= p;
}

}  // namespace qpot
