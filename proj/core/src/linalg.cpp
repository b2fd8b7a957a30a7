#include "trl/linalg.hpp"

#include <Eigen/SVD>

#include "trl/error.hpp"

namespace trl {

Matrix::Matrix(int rows, int cols, FieldTag tag)
    : rows_(rows), cols_(cols), tag_(tag), data_(static_cast<std::size_t>(rows) * cols, Scalar::zero(tag)) {}

Matrix::Matrix(int rows, int cols, FieldTag tag, std::vector<Scalar> data)
    : rows_(rows), cols_(cols), tag_(tag), data_(std::move(data)) {
  if (data_.size() != static_cast<std::size_t>(rows) * cols) fail(ErrorCode::kShapeMismatch, "matrix data size");
}

Matrix Matrix::identity(int n, const FieldTag& tag) {
  Matrix m(n, n, tag);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar::one(tag);
  return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns) {
  if (columns.empty() || columns.front().empty()) fail(ErrorCode::kShapeMismatch, "empty column set");
  const int rows = static_cast<int>(columns.front().size());
  Matrix m(rows, static_cast<int>(columns.size()), columns.front().front().field());
  for (int j = 0; j < m.cols(); ++j) {
    if (static_cast<int>(columns[j].size()) != rows) fail(ErrorCode::kShapeMismatch, "ragged columns");
    for (int i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Matrix Matrix::from_rows(std::span<const Vector> rows) {
  if (rows.empty() || rows.front().empty()) fail(ErrorCode::kShapeMismatch, "empty row set");
  const int cols = static_cast<int>(rows.front().size());
  Matrix m(static_cast<int>(rows.size()), cols, rows.front().front().field());
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols) fail(ErrorCode::kShapeMismatch, "ragged rows");
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vector Matrix::row(int i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
                data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
}

Vector Matrix::column(int j) const {
  Vector v;
  v.reserve(rows_);
  for (int i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, tag_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::kShapeMismatch, "matrix product");
  Matrix c(a.rows(), b.cols(), a.field());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Scalar sum = Scalar::zero(a.field());
      for (int k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
      c(i, j) = std::move(sum);
    }
  return c;
}

Vector multiply(const Matrix& a, std::span<const Scalar> x) {
  if (static_cast<int>(x.size()) != a.cols()) fail(ErrorCode::kShapeMismatch, "matrix-vector product");
  Vector y;
  y.reserve(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    Scalar sum = Scalar::zero(a.field());
    for (int k = 0; k < a.cols(); ++k) sum += a(i, k) * x[k];
    y.push_back(std::move(sum));
  }
  return y;
}

RowEchelon row_reduce(const Matrix& m) {
  if (!m.field().is_exact()) fail(ErrorCode::kUnsupportedField, "exact elimination on float matrix");
  Matrix r = m;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < r.cols() && row < r.rows(); ++col) {
    int pivot = -1;
    for (int i = row; i < r.rows(); ++i) {
      if (!r(i, col).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int j = 0; j < r.cols(); ++j) std::swap(r(pivot, j), r(row, j));
    const Scalar inv = r(row, col).inverse();
    for (int j = col; j < r.cols(); ++j) r(row, j) *= inv;
    for (int i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col).is_zero()) continue;
      const Scalar factor = r(i, col);
      for (int j = col; j < r.cols(); ++j) r(i, j) -= factor * r(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(r), std::move(pivots)};
}

std::vector<double> singular_values(const Matrix& m) {
  Eigen::MatrixXcd a(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a(i, j) = m(i, j).to_complex();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

int matrix_rank(const Matrix& m, std::optional<double> tol) {
  if (m.field().is_exact()) return row_reduce(m).rank();
  const double threshold = tol.value_or(kDefaultRankTolerance);
  if (!(threshold > 0.0)) fail(ErrorCode::kPreconditionFailed, "float rank needs tol > 0");
  const auto s = singular_values(m);
  if (s.empty() || s.front() == 0.0) return 0;
  int rank = 0;
  for (double v : s) rank += v > threshold * s.front() ? 1 : 0;
  return rank;
}

std::optional<Vector> solve(const Matrix& a, std::span<const Scalar> b) {
  if (static_cast<int>(b.size()) != a.rows()) fail(ErrorCode::kShapeMismatch, "solve rhs size");
  Matrix aug(a.rows(), a.cols() + 1, a.field());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const RowEchelon e = row_reduce(aug);
  if (!e.pivot_columns.empty() && e.pivot_columns.back() == a.cols()) return std::nullopt;
  Vector x = zero_vector(a.field(), a.cols());
  for (int r = 0; r < e.rank(); ++r) x[e.pivot_columns[r]] = e.reduced(r, a.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::kShapeMismatch, "inverse of a non-square matrix");
  const int n = m.rows();
  Matrix aug(n, 2 * n, m.field());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::one(m.field());
  }
  const RowEchelon e = row_reduce(aug);
  if (e.rank() < n || e.pivot_columns[n - 1] >= n) return std::nullopt;
  Matrix inv(n, n, m.field());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

}  // namespace trl
