#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace agdec {

// Dense matrix over a finite field. Small exact linear algebra for the code
// builders: row-reduce, solve, kernel, rank. Nothing here is performance
// critical (dimensions are O(n + g)).
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> a; // row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    Elem& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    Elem at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// In-place reduced row echelon form; returns pivot column per pivot row.
inline std::vector<std::size_t> rref(const Field& F, Matrix& M) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < M.cols && row < M.rows; ++col) {
        std::size_t sel = row;
        while (sel < M.rows && M.at(sel, col) == 0) ++sel;
        if (sel == M.rows) continue;
        for (std::size_t j = 0; j < M.cols; ++j) std::swap(M.a[row * M.cols + j], M.a[sel * M.cols + j]);
        const Elem inv = F.inv(M.at(row, col));
        for (std::size_t j = col; j < M.cols; ++j) M.at(row, j) = F.mul(inv, M.at(row, j));
        for (std::size_t i = 0; i < M.rows; ++i) {
            if (i == row) continue;
            const Elem f = M.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < M.cols; ++j)
                M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t mat_rank(const Field& F, Matrix M) { return rref(F, M).size(); }

// Solve M x = b. Returns nullopt when inconsistent; otherwise one solution
// (free variables set to zero).
inline std::optional<std::vector<Elem>> mat_solve(const Field& F, const Matrix& M,
                                                  const std::vector<Elem>& b) {
    if (b.size() != M.rows) throw std::invalid_argument("rhs length mismatch");
    Matrix aug(M.rows, M.cols + 1);
    for (std::size_t i = 0; i < M.rows; ++i) {
        for (std::size_t j = 0; j < M.cols; ++j) aug.at(i, j) = M.at(i, j);
        aug.at(i, M.cols) = b[i];
    }
    auto pivots = rref(F, aug);
    if (!pivots.empty() && pivots.back() == M.cols) return std::nullopt; // pivot in rhs column
    std::vector<Elem> x(M.cols, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, M.cols);
    return x;
}

// Basis of the null space {x : M x = 0}, one vector per free column.
inline std::vector<std::vector<Elem>> mat_kernel(const Field& F, Matrix M) {
    auto pivots = rref(F, M);
    std::vector<bool> is_pivot(M.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Elem>> basis;
    for (std::size_t freec = 0; freec < M.cols; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<Elem> v(M.cols, 0);
        v[freec] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = F.neg(M.at(r, freec));
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace agdec
