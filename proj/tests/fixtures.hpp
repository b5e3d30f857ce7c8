#pragma once

#include <initializer_list>
#include <vector>

#include "hypermw/arrangement.hpp"
#include "hypermw/verify.hpp"

namespace fixture {

using namespace hypermw;

inline Arrangement make(Field f, std::size_t dim, std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<Row> rs;
    for (const auto& r : rows) {
        Row x;
        for (long v : r) x.push_back(Scalar(f, v));
        rs.push_back(x);
    }
    return Arrangement::from_rows(f, dim, rs);
}

inline Unit unit(Field f, long lambda, std::initializer_list<std::pair<int, long>> exps) {
    Unit u{Scalar(f, lambda), {}};
    for (auto [i, e] : exps) u.exponents[i] = e;
    return u;
}

/// Named arrangements over each test field followed by `random` seeded cases.
inline std::vector<NamedArrangement> corpus(std::size_t random, std::uint64_t first_seed = 1) {
    std::vector<NamedArrangement> out;
    for (Field f : {Field::prime(3), Field::prime(5), Field::prime(7), Field::prime(11), Field::rationals()})
        for (auto& n : standard_corpus(f)) out.push_back({n.name + "/" + f.to_string(), n.arrangement});
    for (std::size_t i = 0; i < random; ++i)
        out.push_back({"seed" + std::to_string(first_seed + i), case_arrangement(first_seed + i)});
    return out;
}

} // namespace fixture
