#include "trl/multilinear.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/SVD>

#include "trl/error.hpp"

namespace trl {

UnfoldedMatrix unfold(const Tensor& t, int mode) {
  const int d = t.order();
  const int n = t.dim();
  if (mode < 0 || mode >= d) fail(ErrorCode::kShapeMismatch, "unfolding mode out of range");
  const int cols = static_cast<int>(t.size() / n);
  Matrix m(n, cols, t.field());
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const auto index = t.multi_index(flat);
    int col = 0;
    for (int k = 0; k < d; ++k) {
      if (k != mode) col = col * n + index[k];
    }
    m(index[mode], col) = t[flat];
  }
  return {std::move(m), d, n, mode};
}

int unfolding_rank(const Tensor& t, std::optional<double> tol) { return matrix_rank(unfold(t).matrix, tol); }

namespace {

// Calls visit(indices) for every k-subset of [0, p) in lexicographic order;
// stops early when visit returns false. Returns false if stopped.
template <typename Visit>
bool for_each_subset(int p, int k, Visit&& visit) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > p) return true;
  while (true) {
    if (!visit(std::span<const int>(idx))) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == p - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Eigen::MatrixXcd to_eigen(const Matrix& m) {
  Eigen::MatrixXcd a(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a(i, j) = m(i, j).to_complex();
  return a;
}

Scalar float_scalar(const FieldTag& tag, std::complex<double> z) {
  return tag.kind() == FieldKind::kComplexFloat ? Scalar::complex(z) : Scalar::real(z.real());
}

Vector flattened(const RankOneTerm& term, int first_mode, int order) {
  std::vector<Vector> factors;
  for (int k = first_mode; k < order; ++k) factors.push_back(term.factor(k));
  const Tensor t = rank_one(factors);
  return Vector(t.entries().begin(), t.entries().end());
}

bool collinear(const Vector& a, const Vector& b, std::optional<double> tol) {
  const std::vector<Vector> pair{a, b};
  return matrix_rank(Matrix::from_columns(pair), tol) <= 1;
}

}  // namespace

KruskalRank kruskal_rank(std::span<const Vector> vectors, std::optional<double> tol) {
  for (const auto& v : vectors) {
    if (v.empty()) fail(ErrorCode::kShapeMismatch, "empty vector");
    if (v.size() != vectors.front().size()) fail(ErrorCode::kShapeMismatch, "vector lengths differ");
    if (is_zero_vector(v)) return KruskalRank::negative_infinity();
  }
  const int p = static_cast<int>(vectors.size());
  int krank = 0;
  for (int k = 1; k <= p; ++k) {
    const bool all_independent = for_each_subset(p, k, [&](std::span<const int> idx) {
      std::vector<Vector> cols;
      cols.reserve(idx.size());
      for (int i : idx) cols.push_back(vectors[i]);
      return matrix_rank(Matrix::from_columns(cols), tol) == k;
    });
    if (!all_independent) break;
    krank = k;
  }
  return {krank, false};
}

ConciseForm concise_reduce(const SymTensor& s, std::optional<double> tol) {
  const Tensor& t = s.tensor();
  const int n = t.dim();
  const FieldTag tag = t.field();
  const Matrix a = unfold(t).matrix;

  if (tag.is_exact()) {
    const RowEchelon echelon = row_reduce(a);
    const int m = echelon.rank();
    if (m == n) return {s, Matrix::identity(n, tag), n};
    if (m == 0) {
      // The zero tensor: a single coordinate with value 0.
      Matrix basis(n, 1, tag);
      basis(0, 0) = Scalar::one(tag);
      return {SymTensor(Tensor(t.order(), 1, tag)), basis, 0};
    }
    std::vector<Vector> columns;
    for (int c : echelon.pivot_columns) columns.push_back(a.column(c));
    const Matrix basis = Matrix::from_columns(columns);
    // Left inverse from an invertible m x m row block of the basis.
    const RowEchelon rows = row_reduce(basis.transpose());
    Matrix block(m, m, tag);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) block(i, j) = basis(rows.pivot_columns[i], j);
    const auto block_inv = inverse(block);
    if (!block_inv) fail(ErrorCode::kInternal, "pivot block of the concise basis is singular");
    Matrix left(m, n, tag);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) left(i, rows.pivot_columns[j]) = (*block_inv)(i, j);
    Tensor reduced = multilinear_action(t, left.data(), m);
    return {SymTensor(std::move(reduced)), basis, m};
  }

  const double threshold = tol.value_or(kDefaultRankTolerance);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a), Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int m = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    for (int i = 0; i < sv.size(); ++i) m += sv(i) > threshold * sv(0) ? 1 : 0;
  }
  if (m == n) return {s, Matrix::identity(n, tag), n};
  if (m == 0) {
    Matrix basis(n, 1, tag);
    basis(0, 0) = Scalar::one(tag);
    return {SymTensor(Tensor(t.order(), 1, tag)), basis, 0};
  }
  const Eigen::MatrixXcd u = svd.matrixU().leftCols(m);
  Matrix basis(n, m, tag);
  Matrix left(m, n, tag);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      basis(i, j) = float_scalar(tag, u(i, j));
      left(j, i) = float_scalar(tag, std::conj(u(i, j)));
    }
  Tensor reduced = multilinear_action(t, left.data(), m);
  // Construction noise from the SVD; re-symmetrize by orbit canonical entries.
  std::vector<Scalar> entries(reduced.entries().begin(), reduced.entries().end());
  for (std::size_t flat = 0; flat < entries.size(); ++flat) {
    auto index = reduced.multi_index(flat);
    std::sort(index.begin(), index.end());
    entries[flat] = reduced.at(index);
  }
  return {SymTensor(Tensor(t.order(), m, tag, std::move(entries))), basis, m};
}

KruskalCertificate kruskal_certify(const Decomposition& dec, int order, std::optional<double> tol) {
  if (order < 3) fail(ErrorCode::kPreconditionFailed, "Kruskal certification needs d >= 3");
  if (dec.terms.empty()) fail(ErrorCode::kPreconditionFailed, "empty decomposition");
  std::vector<Vector> first, second, rest;
  for (const auto& term : dec.terms) {
    if (term.coefficient.is_zero()) fail(ErrorCode::kZeroFactor, "term with zero coefficient");
    for (int k = 0; k < order; ++k) {
      if (is_zero_vector(term.factor(k))) fail(ErrorCode::kZeroFactor, "term with a zero factor");
    }
    first.push_back(term.factor(0));
    second.push_back(term.factor(1));
    rest.push_back(flattened(term, 2, order));
  }
  KruskalCertificate cert;
  cert.r = static_cast<int>(dec.terms.size());
  cert.kranks[0] = kruskal_rank(first, tol);
  cert.kranks[1] = kruskal_rank(second, tol);
  cert.kranks[2] = kruskal_rank(rest, tol);
  const bool finite = std::none_of(std::begin(cert.kranks), std::end(cert.kranks),
                                   [](const KruskalRank& k) { return k.minus_infinity; });
  const int sum = cert.kranks[0].value + cert.kranks[1].value + cert.kranks[2].value;
  cert.condition_met = finite && 2 * cert.r + 2 <= sum;
  cert.unique = cert.condition_met || cert.r == 1;

  const FieldTag tag = dec.terms.front().coefficient.field();
  const int n = dec.terms.front().dim();
  const Tensor whole = reconstruct(dec, order, n, tag);
  if (dec.symmetric || is_symmetric(whole)) {
    bool spans = true;
    for (const auto& term : dec.terms) {
      for (int k = 1; k < order && spans; ++k) spans = collinear(term.factor(0), term.factor(k), tol);
    }
    cert.symmetric_spans = spans;
  }
  return cert;
}

StructureCheck lemma6_structure_check(std::span<const RankOneTerm> terms) {
  if (terms.size() < 2) fail(ErrorCode::kPreconditionFailed, "need n+1 >= 2 terms");
  const int d = terms.front().order;
  const int n = terms.front().dim();
  if (d < 2) fail(ErrorCode::kPreconditionFailed, "need d >= 2");
  if (static_cast<int>(terms.size()) != n + 1) fail(ErrorCode::kPreconditionFailed, "need exactly n+1 terms");
  const std::optional<double> tol =
      terms.front().coefficient.field().is_float() ? std::optional<double>(kDefaultRankTolerance) : std::nullopt;
  for (int k = 0; k < d; ++k) {
    std::vector<Vector> family;
    for (const auto& term : terms) {
      if (term.order != d || term.dim() != n) fail(ErrorCode::kShapeMismatch, "terms of different shapes");
      if (is_zero_vector(term.factor(k))) fail(ErrorCode::kPreconditionFailed, "zero factor");
      family.push_back(term.factor(k));
    }
    if (matrix_rank(Matrix::from_columns(family), tol) != n) {
      fail(ErrorCode::kPreconditionFailed, "factor family of mode " + std::to_string(k + 1) + " does not span");
    }
  }
  std::vector<Vector> flat;
  for (const auto& term : terms) flat.push_back(flattened(term, 0, d));
  StructureCheck result{StructureOutcome::kOutsideDichotomy};
  result.span_rank = matrix_rank(Matrix::from_columns(flat), tol);
  if (result.span_rank == n + 1) {
    result.outcome = StructureOutcome::kAllIndependent;
    return result;
  }
  if (result.span_rank != n) return result;
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (!collinear(flat[i], flat[j], tol)) continue;
      std::vector<Vector> others;
      for (int k = 0; k <= n; ++k) {
        if (k != j) others.push_back(flat[k]);
      }
      if (matrix_rank(Matrix::from_columns(others), tol) == n) {
        result.outcome = StructureOutcome::kOneCollinearPair;
        result.first = i + 1;
        result.second = j + 1;
        return result;
      }
    }
  }
  return result;
}

Rational k_generic(int n, int d) {
  if (n < 1 || d < 1) fail(ErrorCode::kPreconditionFailed, "k_generic needs n, d >= 1");
  BigInt binom = 1;
  for (int i = 1; i <= d; ++i) binom = binom * (n + d - i) / i;
  return Rational(binom, BigInt(n));
}

MuValue mu_max_srank(int d, int n) {
  using Kind = MuValue::Kind;
  if (n == 2 && d >= 2) return {Kind::kExact, d};
  if (d == 3 && n == 3) return {Kind::kExact, 5};
  if (d == 3 && n == 4) return {Kind::kExact, 7};
  if (d == 3 && n == 5) return {Kind::kUpperBound, 10};
  if (d == 4 && n == 3) return {Kind::kExact, 7};
  return {};
}

std::string to_string(RankMethod method) {
  switch (method) {
    case RankMethod::kCertified: return "certified";
    case RankMethod::kExhaustive: return "exhaustive";
    case RankMethod::kPencil: return "pencil";
    case RankMethod::kBound: return "bound";
  }
  return "?";
}

bool inequality_chain_holds(const RankReport& report) {
  if (report.rank) {
    if (report.rank->value < report.rank_A && !report.rank->lower_bound) return false;
    if (report.srank && std::holds_alternative<int>(report.srank->value)) {
      if (std::get<int>(report.srank->value) < report.rank->value) return false;
    }
  }
  if (report.brank) {
    if (report.brank->value < report.rank_A) return false;
    if (report.rank && !report.rank->lower_bound && report.rank->value < report.brank->value) return false;
  }
  if (report.srank && std::holds_alternative<int>(report.srank->value)) {
    if (std::get<int>(report.srank->value) < report.rank_A) return false;
  }
  return true;
}

}  // namespace trl
