#include "hypermw/linalg.hpp"

namespace hypermw {

Echelon row_reduce(Field f, Matrix m, std::size_t cols) {
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        Scalar inv = m[r][c].inv();
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Scalar k = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= k * m[r][j];
        }
        e.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    e.rows = std::move(m);
    (void)f;
    return e;
}

std::size_t rank(Field f, const Matrix& m, std::size_t cols) {
    return row_reduce(f, m, cols).pivots.size();
}

Matrix kernel(Field f, const Matrix& m, std::size_t cols) {
    auto e = row_reduce(f, m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    Matrix out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Row v(cols, Scalar::zero(f));
        v[free] = Scalar::one(f);
        for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace hypermw
