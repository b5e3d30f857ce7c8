#pragma once

// Dense row reduction over a Field.

#include <cstddef>
#include <vector>

#include "hypermw/scalar.hpp"

namespace hypermw {

using Row = std::vector<Scalar>;
using Matrix = std::vector<Row>;

struct Echelon {
    Matrix rows;                      // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;  // pivot column per row
};

Echelon row_reduce(Field f, Matrix m, std::size_t cols);

std::size_t rank(Field f, const Matrix& m, std::size_t cols);

/// Basis of { x : m x = 0 }, each vector of length `cols`.
Matrix kernel(Field f, const Matrix& m, std::size_t cols);

} // namespace hypermw
