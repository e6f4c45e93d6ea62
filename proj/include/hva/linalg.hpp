#ifndef HVA_LINALG_HPP
#define HVA_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hva/error.hpp"
#include "hva/rational.hpp"

namespace hva {

/// Row vector of rationals with a fixed dimension k >= 1.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::vector<Rational> entries) : entries_(std::move(entries)) {}
    Vector(std::initializer_list<Rational> entries) : entries_(entries) {}

    static Vector ones(std::size_t k) { return Vector(std::vector<Rational>(k, Rational(1))); }

    std::size_t dim() const noexcept { return entries_.size(); }
    const Rational& operator[](std::size_t i) const { return entries_[i]; }
    Rational& operator[](std::size_t i) { return entries_[i]; }
    std::span<const Rational> entries() const noexcept { return entries_; }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    friend bool operator==(const Vector&, const Vector&) = default;

    /// Space-separated rational text form, e.g. "2 3" or "1/2 1".
    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) out += ' ';
            out += entries_[i].str();
        }
        return out;
    }

private:
    std::vector<Rational> entries_;
};

/// Structural (not numeric) order, for ordered containers of vectors.
struct VectorLess {
    bool operator()(const Vector& a, const Vector& b) const {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        StructuralLess less;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            if (less(a[i], b[i])) return true;
            if (less(b[i], a[i])) return false;
        }
        return false;
    }
};

/// Square k x k rational matrix, row-major. `at(i, j)` is row i, column j
/// (0-based).
class Matrix {
public:
    Matrix() = default;

    explicit Matrix(std::size_t k) : k_(k), cells_(k * k) {}

    Matrix(std::initializer_list<std::initializer_list<Rational>> rows) : k_(rows.size()) {
        cells_.reserve(k_ * k_);
        for (const auto& row : rows) {
            if (row.size() != k_) throw InvalidArgument("matrix literal is not square");
            cells_.insert(cells_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t k) {
        Matrix m(k);
        for (std::size_t i = 0; i < k; ++i) m.at(i, i) = Rational(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        Matrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) {
                throw InvalidArgument("matrix row " + std::to_string(i + 1) + " has " +
                                      std::to_string(rows[i].size()) + " entries, expected " +
                                      std::to_string(rows.size()));
            }
            for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t dim() const noexcept { return k_; }
    const Rational& at(std::size_t i, std::size_t j) const { return cells_[i * k_ + j]; }
    Rational& at(std::size_t i, std::size_t j) { return cells_[i * k_ + j]; }
    std::span<const Rational> cells() const noexcept { return cells_; }

    bool is_identity() const { return *this == identity(k_); }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    /// Rows joined by "; ", e.g. "1 0; 1 1".
    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < k_; ++i) {
            if (i) out += "; ";
            for (std::size_t j = 0; j < k_; ++j) {
                if (j) out += ' ';
                out += at(i, j).str();
            }
        }
        return out;
    }

private:
    std::size_t k_ = 0;
    std::vector<Rational> cells_;
};

/// v * M with v on the left: result_j = sum_i v_i * M(i, j).
inline Vector vec_mat_mul(const Vector& v, const Matrix& m) {
    const std::size_t k = m.dim();
    if (v.dim() != k) {
        throw InvalidArgument("dimension mismatch: vector of " + std::to_string(v.dim()) + " times " +
                              std::to_string(k) + "x" + std::to_string(k) + " matrix");
    }
    std::vector<Rational> out(k);
    for (std::size_t i = 0; i < k; ++i) {
        const Rational& vi = v[i];
        if (vi.is_zero()) continue;
        for (std::size_t j = 0; j < k; ++j) {
            const Rational& mij = m.at(i, j);
            if (mij.is_zero()) continue;
            out[j] += vi * mij;
        }
    }
    return Vector(std::move(out));
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    const std::size_t k = a.dim();
    if (b.dim() != k) {
        throw InvalidArgument("dimension mismatch: " + std::to_string(k) + "x" + std::to_string(k) + " times " +
                              std::to_string(b.dim()) + "x" + std::to_string(b.dim()));
    }
    Matrix out(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            const Rational& ail = a.at(i, l);
            if (ail.is_zero()) continue;
            for (std::size_t j = 0; j < k; ++j) {
                if (b.at(l, j).is_zero()) continue;
                out.at(i, j) += ail * b.at(l, j);
            }
        }
    }
    return out;
}

/// Exact inverse by Gauss-Jordan elimination with first-nonzero pivoting.
/// Throws SingularMatrix when det(M) = 0.
inline Matrix mat_inverse(const Matrix& m) {
    const std::size_t k = m.dim();
    Matrix work = m;
    Matrix inv = Matrix::identity(k);
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && work.at(pivot, col).is_zero()) ++pivot;
        if (pivot == k) throw SingularMatrix("matrix [" + m.str() + "] is singular");
        if (pivot != col) {
            for (std::size_t j = 0; j < k; ++j) {
                std::swap(work.at(pivot, j), work.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        }
        const Rational scale = Rational(1) / work.at(col, col);
        for (std::size_t j = 0; j < k; ++j) {
            work.at(col, j) *= scale;
            inv.at(col, j) *= scale;
        }
        for (std::size_t row = 0; row < k; ++row) {
            if (row == col) continue;
            const Rational factor = work.at(row, col);
            if (factor.is_zero()) continue;
            for (std::size_t j = 0; j < k; ++j) {
                work.at(row, j) -= factor * work.at(col, j);
                inv.at(row, j) -= factor * inv.at(col, j);
            }
        }
    }
    return inv;
}

/// Largest |entry| of a matrix.
inline Rational max_abs_entry(const Matrix& m) {
    Rational best;
    for (const auto& c : m.cells()) {
        Rational a = c.abs();
        if (a > best) best = std::move(a);
    }
    return best;
}

inline Rational max_abs_entry(const Vector& v) {
    Rational best;
    for (const auto& c : v) {
        Rational a = c.abs();
        if (a > best) best = std::move(a);
    }
    return best;
}

}  // namespace hva

#endif  // HVA_LINALG_HPP
