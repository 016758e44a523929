#include "discogan/matrix.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstring>
#ifdef __AVX512F__
#include <immintrin.h>
#endif
#include <string>

#include "discogan/errors.hpp"

namespace discogan {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;
using MutMap = Eigen::Map<RowMajor>;

ConstMap view(const Matrix& m) {
  return ConstMap(m.values().data(), static_cast<Eigen::Index>(m.rows()),
                  static_cast<Eigen::Index>(m.cols()));
}
MutMap view(Matrix& m) {
  return MutMap(m.values().data(), static_cast<Eigen::Index>(m.rows()),
                static_cast<Eigen::Index>(m.cols()));
}

std::string shape_str(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

[[noreturn]] void mismatch(const char* op, const Matrix& a, const Matrix& b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " + shape_str(a) + " and " +
                   shape_str(b));
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw ShapeError("Matrix: data length " + std::to_string(data_.size()) +
                     " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

namespace {

constexpr std::size_t kTileRows = 4;
constexpr std::size_t kTileCols = 32;

// Eight doubles; GCC/Clang lower this to the widest available SIMD registers.
typedef double Lane __attribute__((vector_size(64)));
constexpr std::size_t kLaneWidth = 8;
constexpr std::size_t kLanesPerTile = kTileCols / kLaneWidth;

Lane load_lane(const double* p) {
  Lane v;
  std::memcpy(&v, p, sizeof(v));
  return v;
}

// Explicit single-rounding multiply-adds everywhere, so tiles, edges and
// column blocks agree bit for bit. This file is built with contraction off.
Lane fused(double x, Lane b, Lane c) {
  const Lane s = {x, x, x, x, x, x, x, x};
#ifdef __AVX512F__
  return _mm512_fmadd_pd(s, b, c);
#else
  Lane r;
  for (std::size_t i = 0; i < kLaneWidth; ++i) r[i] = std::fma(s[i], b[i], c[i]);
  return r;
#endif
}

// Full 4 x 32 tile: sixteen named accumulators so they live in registers
// across the whole k loop.
void tile_full(const double* a, std::size_t lda, const double* b, std::size_t ldb,
               std::size_t inner, double* out, std::size_t ldo) {
  Lane c00{}, c01{}, c02{}, c03{}, c10{}, c11{}, c12{}, c13{};
  Lane c20{}, c21{}, c22{}, c23{}, c30{}, c31{}, c32{}, c33{};
  const double* a0 = a;
  const double* a1 = a + lda;
  const double* a2 = a + 2 * lda;
  const double* a3 = a + 3 * lda;
  for (std::size_t k = 0; k < inner; ++k) {
    const double* brow = b + k * ldb;
    const Lane b0 = load_lane(brow);
    const Lane b1 = load_lane(brow + kLaneWidth);
    const Lane b2 = load_lane(brow + 2 * kLaneWidth);
    const Lane b3 = load_lane(brow + 3 * kLaneWidth);
    const double x0 = a0[k], x1 = a1[k], x2 = a2[k], x3 = a3[k];
    c00 = fused(x0, b0, c00); c01 = fused(x0, b1, c01);
    c02 = fused(x0, b2, c02); c03 = fused(x0, b3, c03);
    c10 = fused(x1, b0, c10); c11 = fused(x1, b1, c11);
    c12 = fused(x1, b2, c12); c13 = fused(x1, b3, c13);
    c20 = fused(x2, b0, c20); c21 = fused(x2, b1, c21);
    c22 = fused(x2, b2, c22); c23 = fused(x2, b3, c23);
    c30 = fused(x3, b0, c30); c31 = fused(x3, b1, c31);
    c32 = fused(x3, b2, c32); c33 = fused(x3, b3, c33);
  }
  const Lane rows[kTileRows][kLanesPerTile] = {{c00, c01, c02, c03},
                                               {c10, c11, c12, c13},
                                               {c20, c21, c22, c23},
                                               {c30, c31, c32, c33}};
  for (std::size_t r = 0; r < kTileRows; ++r) {
    for (std::size_t l = 0; l < kLanesPerTile; ++l) {
      std::memcpy(out + r * ldo + l * kLaneWidth, &rows[r][l], sizeof(Lane));
    }
  }
}

// Ragged edge: one row, up to kTileCols columns. Scalar code, but each entry
// sees the same operations in the same order as in tile_full.
void tile_edge(const double* a, const double* b, std::size_t ldb, std::size_t inner,
               std::size_t cols, double* out) {
  double acc[kTileCols] = {};
  for (std::size_t k = 0; k < inner; ++k) {
    const double ak = a[k];
    const double* brow = b + k * ldb;
    for (std::size_t j = 0; j < cols; ++j) acc[j] = std::fma(ak, brow[j], acc[j]);
  }
  for (std::size_t j = 0; j < cols; ++j) out[j] = acc[j];
}

// One column for up to eight rows; independent chains hide FMA latency.
void column_block(const double* a, std::size_t rows, const double* b, std::size_t ldb,
                  std::size_t inner, double* out, std::size_t ldo) {
  constexpr std::size_t kBlock = 8;
  double acc[kBlock] = {};
  if (rows == kBlock) {
    for (std::size_t k = 0; k < inner; ++k) {
      const double bk = b[k * ldb];
      for (std::size_t r = 0; r < kBlock; ++r) acc[r] = std::fma(a[r * inner + k], bk, acc[r]);
    }
  } else {
    for (std::size_t k = 0; k < inner; ++k) {
      const double bk = b[k * ldb];
      for (std::size_t r = 0; r < rows; ++r) acc[r] = std::fma(a[r * inner + k], bk, acc[r]);
    }
  }
  for (std::size_t r = 0; r < rows; ++r) out[r * ldo] = acc[r];
}

}  // namespace

// Every output entry is the k-ascending sum of a(i, k) * b(k, j), whatever
// the batch size or the entry's position in a tile, so a row's result never
// depends on the other rows of the batch.
Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) mismatch("matmul", a, b);
  Matrix out(a.rows(), b.cols());
  const std::size_t n = a.rows();
  const std::size_t inner = a.cols();
  const std::size_t width = b.cols();
  const double* ap = a.values().data();
  const double* bp = b.values().data();
  double* op = out.values().data();
  const std::size_t full_rows = n - n % kTileRows;
  const std::size_t full_cols = width - width % kTileCols;
  // Column panel outermost so the k x 16 slice of b stays in L1.
  for (std::size_t j = 0; j < full_cols; j += kTileCols) {
    for (std::size_t i = 0; i < full_rows; i += kTileRows) {
      tile_full(ap + i * inner, inner, bp + j, width, inner, op + i * width + j, width);
    }
  }
  for (std::size_t i = full_rows; i < n; ++i) {
    for (std::size_t j = 0; j < full_cols; j += kTileCols) {
      tile_edge(ap + i * inner, bp + j, width, inner, kTileCols, op + i * width + j);
    }
  }
  for (std::size_t j = full_cols; j < width; ++j) {
    for (std::size_t i = 0; i < n; i += 8) {
      column_block(ap + i * inner, std::min<std::size_t>(8, n - i), bp + j, width, inner,
                   op + i * width + j, width);
    }
  }
  return out;
}

Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) mismatch("matmul_at_b", a, b);
  Matrix out(a.cols(), b.cols());
  if (out.empty()) return out;
  view(out).noalias() = view(a).transpose() * view(b);
  return out;
}

Matrix matmul_a_bt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) mismatch("matmul_a_bt", a, b);
  Matrix out(a.rows(), b.rows());
  if (out.empty()) return out;
  view(out).noalias() = view(a) * view(b).transpose();
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  out += b;
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) mismatch("subtract", a, b);
  Matrix out = a;
  auto o = out.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= bv[i];
  return out;
}

Matrix& operator+=(Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) mismatch("add", a, b);
  auto o = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += bv[i];
  return a;
}

void add_row_broadcast(Matrix& m, const Matrix& row) {
  if (row.rows() != 1 || row.cols() != m.cols()) mismatch("add_row_broadcast", m, row);
  auto r = row.values();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto dst = m.row(i);
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += r[j];
  }
}

Matrix column_sums(const Matrix& m) {
  Matrix out(1, m.cols());
  auto o = out.values();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto src = m.row(i);
    for (std::size_t j = 0; j < src.size(); ++j) o[j] += src[j];
  }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) mismatch("vstack", a, b);
  std::vector<double> data;
  data.reserve(a.size() + b.size());
  data.insert(data.end(), a.values().begin(), a.values().end());
  data.insert(data.end(), b.values().begin(), b.values().end());
  return Matrix(a.rows() + b.rows(), a.cols(), std::move(data));
}

Matrix row_slice(const Matrix& m, std::size_t begin, std::size_t count) {
  if (begin + count > m.rows()) {
    throw ShapeError("row_slice: rows [" + std::to_string(begin) + ", " +
                     std::to_string(begin + count) + ") out of range for " + shape_str(m));
  }
  auto first = m.values().begin() + static_cast<std::ptrdiff_t>(begin * m.cols());
  return Matrix(count, m.cols(),
                std::vector<double>(first, first + static_cast<std::ptrdiff_t>(count * m.cols())));
}

}  // namespace discogan
