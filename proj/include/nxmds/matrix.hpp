#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nxmds/field.hpp"

namespace nxmds {

/// Dense row-major matrix of field symbols. The field is supplied to the
/// algebra routines rather than stored, since all matrices of one system
/// share a field.
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Elem& at(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Elem at(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<Elem> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<const Elem> data() const noexcept { return data_; }
    std::span<Elem> data() noexcept { return data_; }

    bool is_zero() const noexcept;
    bool row_is_zero(std::size_t r) const noexcept;

    /// Rows [first, first + count) as a new matrix.
    Matrix slice_rows(std::size_t first, std::size_t count) const;
    void set_rows(std::size_t first, const Matrix& block);

    static Matrix random(const Field& F, std::size_t rows, std::size_t cols, Rng& rng);

    friend bool operator==(const Matrix&, const Matrix&) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

namespace linalg {

Matrix multiply(const Field& F, const Matrix& a, const Matrix& b);
Matrix add(const Field& F, const Matrix& a, const Matrix& b);
Matrix sub(const Field& F, const Matrix& a, const Matrix& b);
std::vector<Elem> multiply(const Field& F, const Matrix& a, std::span<const Elem> x);
Elem dot(const Field& F, std::span<const Elem> a, std::span<const Elem> b) noexcept;

/// Row rank by Gaussian elimination.
std::size_t rank(const Field& F, Matrix a);

/// Some solution of a x = b, or nullopt if the system is inconsistent.
std::optional<std::vector<Elem>> solve(const Field& F, Matrix a, std::vector<Elem> b);

/// Inverse of a square matrix, or nullopt if singular.
std::optional<Matrix> invert(const Field& F, const Matrix& a);

}  // namespace linalg

}  // namespace nxmds
