#pragma once

#include "qpot/exactalg/field.hpp"

#include <random>

namespace qpot {

inline Rationals::value_type random_element(const Rationals& f, std::mt19937_64& rng, long long bound = 5) {
    std::uniform_int_distribution<long long> d(-bound, bound);
    return f.from_int(d(rng));
}

inline PrimeField::value_type random_element(const PrimeField& f, std::mt19937_64& rng, long long = 0) {
    std::uniform_int_distribution<std::uint64_t> d(0, f.characteristic() - 1);
    return d(rng);
}

}  // namespace qpot
