#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace discogan {

// Dense row-major matrix of doubles. Rows are batch samples, columns are
// features.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;

  // Exact (bitwise-value) comparison.
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// a * b
Matrix matmul(const Matrix& a, const Matrix& b);
// aᵀ * b
Matrix matmul_at_b(const Matrix& a, const Matrix& b);
// a * bᵀ
Matrix matmul_a_bt(const Matrix& a, const Matrix& b);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix& operator+=(Matrix& a, const Matrix& b);

// Adds a 1×cols row vector to every row.
void add_row_broadcast(Matrix& m, const Matrix& row);
// 1×cols sum over rows.
Matrix column_sums(const Matrix& m);

// Stacks b under a; column counts must agree.
Matrix vstack(const Matrix& a, const Matrix& b);
// Rows [begin, begin + count).
Matrix row_slice(const Matrix& m, std::size_t begin, std::size_t count);

}  // namespace discogan
