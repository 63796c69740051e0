#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sphererep/errors.hpp"

namespace sphererep {

/// Dense row-major matrix of doubles. Used both for general transforms and
/// for representation matrices, whose column v holds the position of
/// vertex v.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[index(i, j)]; }
    double operator()(int i, int j) const { return data_[index(i, j)]; }

    double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
    const double* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_)
            throw DimensionMismatch("matrix product: " + std::to_string(cols_) + " columns vs " +
                                    std::to_string(o.rows_) + " rows");
        Matrix out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i) {
            const double* a = row(i);
            double* r = out.row(i);
            for (int k = 0; k < cols_; ++k) {
                const double aik = a[k];
                if (aik == 0.0) continue;
                const double* b = o.row(k);
                for (int j = 0; j < o.cols_; ++j) r[j] += aik * b[j];
            }
        }
        return out;
    }

    double col_norm_sq(int j) const {
        double s = 0.0;
        for (int i = 0; i < rows_; ++i) {
            const double x = (*this)(i, j);
            s += x * x;
        }
        return s;
    }

    double col_dot(int j, int l) const {
        double s = 0.0;
        for (int i = 0; i < rows_; ++i) s += (*this)(i, j) * (*this)(i, l);
        return s;
    }

    /// Sum of all columns, as a vector of length rows().
    std::vector<double> col_sum() const {
        std::vector<double> s(rows_, 0.0);
        for (int i = 0; i < rows_; ++i) {
            const double* r = row(i);
            double acc = 0.0;
            for (int j = 0; j < cols_; ++j) acc += r[j];
            s[i] = acc;
        }
        return s;
    }

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * cols_ + static_cast<std::size_t>(j);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Dense symmetric matrix. All mutation goes through set()/add(), which
/// write both triangles, so storage is exactly symmetric at all times.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int order)
        : n_(order), data_(static_cast<std::size_t>(order) * static_cast<std::size_t>(order), 0.0) {}

    int order() const { return n_; }

    double operator()(int i, int j) const { return data_[index(i, j)]; }

    void set(int i, int j, double v) {
        data_[index(i, j)] = v;
        data_[index(j, i)] = v;
    }

    void add(int i, int j, double v) {
        data_[index(i, j)] += v;
        if (i != j) data_[index(j, i)] += v;
    }

    const double* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * n_; }
    const std::vector<double>& data() const { return data_; }

    static SymMatrix identity(int n) {
        SymMatrix m(n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
        return m;
    }

    static SymMatrix all_ones(int n) {
        SymMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) m.set(i, j, 1.0);
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double x : data_) s += x * x;
        return std::sqrt(s);
    }

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j);
    }

    int n_ = 0;
    std::vector<double> data_;
};

}  // namespace sphererep
