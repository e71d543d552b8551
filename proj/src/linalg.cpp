#include "covlab/linalg.hpp"

#include <algorithm>

namespace covlab {

std::vector<int> rref(MatrixF& m) {
    const auto& f = m.spec;
    const int nr = m.row_count();
    const int nc = m.col_count();
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int pivot = -1;
        for (int r = row; r < nr; ++r) {
            if (!f.is_zero(m.rows[r][col])) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(m.rows[row], m.rows[pivot]);
        Element inv_p = f.inv(m.rows[row][col]);
        for (int c = col; c < nc; ++c) m.rows[row][c] = f.mul(m.rows[row][c], inv_p);
        for (int r = 0; r < nr; ++r) {
            if (r == row || f.is_zero(m.rows[r][col])) continue;
            Element factor = m.rows[r][col];
            for (int c = col; c < nc; ++c)
                m.rows[r][c] = f.sub(m.rows[r][c], f.mul(factor, m.rows[row][c]));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(MatrixF m) {
    return static_cast<int>(rref(m).size());
}

std::vector<std::vector<Element>> kernel_basis(const MatrixF& m, int ncols) {
    const auto& f = m.spec;
    MatrixF work = m;
    std::vector<int> pivots = rref(work);

    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Element>> basis;
    for (int free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Element> v(ncols, f.zero());
        v[free_col] = f.one();
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = f.neg(work.rows[r][free_col]);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace covlab
