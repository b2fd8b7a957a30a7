#pragma once

#include <optional>
#include <span>
#include <vector>

#include "trl/scalar.hpp"
#include "trl/tensor.hpp"

namespace trl {

// Small dense row-major matrix over any field tag.
class Matrix {
 public:
  Matrix(int rows, int cols, FieldTag tag);
  Matrix(int rows, int cols, FieldTag tag, std::vector<Scalar> data);

  static Matrix identity(int n, const FieldTag& tag);
  static Matrix from_columns(std::span<const Vector> columns);
  static Matrix from_rows(std::span<const Vector> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldTag& field() const { return tag_; }
  std::span<const Scalar> data() const { return data_; }

  const Scalar& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  Scalar& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Vector row(int i) const;
  Vector column(int j) const;
  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_;
  int cols_;
  FieldTag tag_;
  std::vector<Scalar> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, std::span<const Scalar> x);

struct RowEchelon {
  Matrix reduced;                  // reduced row echelon form
  std::vector<int> pivot_columns;  // one per nonzero row
  int rank() const { return static_cast<int>(pivot_columns.size()); }
};

// Gauss-Jordan elimination with exact arithmetic. Exact tags only.
RowEchelon row_reduce(const Matrix& m);

inline constexpr double kDefaultRankTolerance = 1e-8;

// Exact rank for exact tags (tol ignored); for float tags the number of
// singular values above tol * largest singular value.
int matrix_rank(const Matrix& m, std::optional<double> tol = std::nullopt);

std::vector<double> singular_values(const Matrix& m);

// Some solution of a x = b, or nothing when the system is inconsistent. Exact tags.
std::optional<Vector> solve(const Matrix& a, std::span<const Scalar> b);
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace trl
