#pragma once

#include <vector>

#include "covlab/ffield.hpp"

namespace covlab {

// Dense matrix over a finite field. Rows of equal length; entries owned.
struct MatrixF {
    FieldSpec spec;
    std::vector<std::vector<Element>> rows;

    int row_count() const { return static_cast<int>(rows.size()); }
    int col_count() const { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }
};

// Reduced row echelon form in place; returns the pivot column per row rank.
std::vector<int> rref(MatrixF& m);

int rank(MatrixF m);

// Deterministic kernel basis: one vector per free column in ascending column
// order, with 1 in the free position. ncols taken from the matrix; a matrix
// with zero rows needs the column count passed explicitly.
std::vector<std::vector<Element>> kernel_basis(const MatrixF& m, int ncols);

} // namespace covlab
