#include "nxmds/matrix.hpp"

#include <algorithm>
#include <utility>

#include "nxmds/error.hpp"
#include "nxmds/rng.hpp"

namespace nxmds {

bool Matrix::is_zero() const noexcept {
    for (Elem e : data_)
        if (e.value != 0) return false;
    return true;
}

bool Matrix::row_is_zero(std::size_t r) const noexcept {
    for (Elem e : row(r))
        if (e.value != 0) return false;
    return true;
}

Matrix Matrix::slice_rows(std::size_t first, std::size_t count) const {
    if (first + count > rows_) throw Error(ErrorCode::ShapeMismatch, "row slice out of range");
    Matrix out(count, cols_);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_), count * cols_, out.data_.begin());
    return out;
}

void Matrix::set_rows(std::size_t first, const Matrix& block) {
    if (block.cols_ != cols_ || first + block.rows_ > rows_)
        throw Error(ErrorCode::ShapeMismatch, "row block does not fit");
    std::copy(block.data_.begin(), block.data_.end(), data_.begin() + static_cast<std::ptrdiff_t>(first * cols_));
}

Matrix Matrix::random(const Field& F, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(rows, cols);
    for (auto& e : m.data_) e = F.random(rng);
    return m;
}

namespace linalg {

Matrix multiply(const Field& F, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "matrix product dimensions");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = out.row(i);
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const Elem c = a.at(i, l);
            if (c.value == 0) continue;
            auto src = b.row(l);
            for (std::size_t j = 0; j < b.cols(); ++j) dst[j] = F.add(dst[j], F.mul(c, src[j]));
        }
    }
    return out;
}

Matrix add(const Field& F, const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "matrix sum dimensions");
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) out.data()[i] = F.add(a.data()[i], b.data()[i]);
    return out;
}

Matrix sub(const Field& F, const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::ShapeMismatch, "matrix difference dimensions");
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) out.data()[i] = F.sub(a.data()[i], b.data()[i]);
    return out;
}

std::vector<Elem> multiply(const Field& F, const Matrix& a, std::span<const Elem> x) {
    if (a.cols() != x.size()) throw Error(ErrorCode::ShapeMismatch, "matrix-vector dimensions");
    std::vector<Elem> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(F, a.row(i), x);
    return out;
}

Elem dot(const Field& F, std::span<const Elem> a, std::span<const Elem> b) noexcept {
    Elem acc = F.zero();
    for (std::size_t i = 0; i < a.size(); ++i) acc = F.add(acc, F.mul(a[i], b[i]));
    return acc;
}

namespace {

// Reduces a (and b alongside, if given) to row echelon form; returns pivot columns.
std::vector<std::size_t> eliminate(const Field& F, Matrix& a, std::vector<Elem>* b) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t sel = row;
        while (sel < a.rows() && a.at(sel, col).value == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != row) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(row, j));
            if (b) std::swap((*b)[sel], (*b)[row]);
        }
        const Elem inv = F.inv(a.at(row, col));
        for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) = F.mul(a.at(row, j), inv);
        if (b) (*b)[row] = F.mul((*b)[row], inv);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row) continue;
            const Elem f = a.at(r, col);
            if (f.value == 0) continue;
            for (std::size_t j = col; j < a.cols(); ++j) a.at(r, j) = F.sub(a.at(r, j), F.mul(f, a.at(row, j)));
            if (b) (*b)[r] = F.sub((*b)[r], F.mul(f, (*b)[row]));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const Field& F, Matrix a) { return eliminate(F, a, nullptr).size(); }

std::optional<std::vector<Elem>> solve(const Field& F, Matrix a, std::vector<Elem> b) {
    if (b.size() != a.rows()) throw Error(ErrorCode::ShapeMismatch, "right-hand side length");
    const auto pivots = eliminate(F, a, &b);
    for (std::size_t r = pivots.size(); r < a.rows(); ++r)
        if (b[r].value != 0) return std::nullopt;
    std::vector<Elem> x(a.cols(), F.zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r];
    return x;
}

std::optional<Matrix> invert(const Field& F, const Matrix& a) {
    if (a.rows() != a.cols()) throw Error(ErrorCode::ShapeMismatch, "inverse of non-square matrix");
    const std::size_t n = a.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = F.one();
    }
    const auto pivots = eliminate(F, aug, nullptr);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

}  // namespace linalg

}  // namespace nxmds
