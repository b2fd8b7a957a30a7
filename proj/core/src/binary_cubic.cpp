#include "trl/binary_cubic.hpp"

#include <boost/multiprecision/integer.hpp>

#include "trl/error.hpp"
#include "trl/multilinear.hpp"

namespace trl {

std::vector<std::string> CaseTrace::labels() const {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const auto& step : steps) out.push_back(step.label);
  return out;
}

SymTensor apply_substitution(const SymTensor& s, const Matrix& m) {
  const int n = s.dim();
  if (m.rows() != n || m.cols() != n) fail(ErrorCode::kShapeMismatch, "substitution must be n x n");
  if (!(m.field() == s.field())) fail(ErrorCode::kMixedFields, "substitution over a different field");
  const bool singular =
      s.field().is_exact() ? !inverse(m).has_value() : matrix_rank(m, kDefaultRankTolerance) < n;
  if (singular) fail(ErrorCode::kSingularSubstitution, "substitution matrix is singular");
  return SymTensor(multilinear_action(s.tensor(), m.data()));
}

namespace {

constexpr int kMaxSubstitutions = 6;

struct Entries {
  Scalar s111, s112, s122, s222;
};

Entries entries_of(const SymTensor& s) {
  return {s.at({0, 0, 0}), s.at({0, 0, 1}), s.at({0, 1, 1}), s.at({1, 1, 1})};
}

bool in_case1(const SymTensor& s) {
  const Entries e = entries_of(s);
  return !e.s112.is_zero() && !e.s122.is_zero();
}

Matrix mat2(const FieldTag& tag, Scalar a, Scalar b, Scalar c, Scalar d) {
  return Matrix(2, 2, tag, {std::move(a), std::move(b), std::move(c), std::move(d)});
}

Vector vec2(Scalar a, Scalar b) { return {std::move(a), std::move(b)}; }

void push_term(std::vector<RankOneTerm>& terms, Scalar c, Vector u) {
  if (!c.is_zero()) terms.push_back(RankOneTerm::power(std::move(c), std::move(u), 3));
}

// Coefficients t with s = sum t_i u_i^(x)3, if the cubes of `points` reach s.
std::optional<Vector> expand_in_cubes(const SymTensor& s, const std::vector<Vector>& points) {
  std::vector<Vector> columns;
  for (const auto& u : points) {
    const Tensor cube = sym_power(u, 3).tensor();
    columns.emplace_back(cube.entries().begin(), cube.entries().end());
  }
  return solve(Matrix::from_columns(columns), s.tensor().entries());
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

// Two distinct projective roots of the slice pencil det(l1 F1 + l2 F2).
std::optional<std::pair<Vector, Vector>> pencil_roots(const SymTensor& s) {
  const FieldTag tag = s.field();
  const Entries e = entries_of(s);
  const Scalar qa = e.s111 * e.s122 - e.s112 * e.s112;
  const Scalar qb = e.s111 * e.s222 - e.s112 * e.s122;
  const Scalar qc = e.s112 * e.s222 - e.s122 * e.s122;
  if (qa.is_zero() && qb.is_zero() && qc.is_zero()) return std::nullopt;
  const Scalar zero = Scalar::zero(tag);
  const Scalar one = Scalar::one(tag);

  if (tag.is_finite()) {
    std::vector<Vector> roots;
    if (qc.is_zero()) roots.push_back(vec2(zero, one));
    for (const auto& x : field_elements(tag)) {
      if ((qa * x * x + qb * x + qc).is_zero()) roots.push_back(vec2(x, one));
    }
    if (roots.size() < 2) return std::nullopt;
    return std::make_pair(roots[0], roots[1]);
  }
  if (qa.is_zero()) {
    if (qb.is_zero()) return std::nullopt;
    return std::make_pair(vec2(one, zero), vec2(-qc, qb));
  }
  const Scalar disc = qb * qb - Scalar::from_int(tag, 4) * qa * qc;
  if (disc.is_zero()) return std::nullopt;
  const auto root = rational_sqrt(disc.rational_value());
  if (!root) return std::nullopt;
  const Scalar r = Scalar::rational(*root);
  const Scalar two_a = Scalar::from_int(tag, 2) * qa;
  return std::make_pair(vec2((-qb + r) / two_a, one), vec2((-qb - r) / two_a, one));
}

std::optional<std::vector<RankOneTerm>> try_rank2(const SymTensor& s) {
  const auto roots = pencil_roots(s);
  if (!roots) return std::nullopt;
  const auto& [l, m] = *roots;
  const Vector u = vec2(-l[1], l[0]);
  const Vector v = vec2(-m[1], m[0]);
  const auto t = expand_in_cubes(s, {u, v});
  if (!t) return std::nullopt;
  std::vector<RankOneTerm> terms;
  push_term(terms, (*t)[0], u);
  push_term(terms, (*t)[1], v);
  return terms;
}

std::vector<Scalar> candidate_shifts(const FieldTag& tag) {
  std::vector<Scalar> out;
  if (tag.is_finite()) {
    for (const auto& x : field_elements(tag)) {
      if (!x.is_zero()) out.push_back(x);
    }
  } else {
    for (int a = 1; a <= 8; ++a) out.push_back(Scalar::from_int(tag, a));
  }
  return out;
}

// First invertible matrix in lexicographic entry order whose action lands in case 1.
std::optional<Matrix> search_case1(const SymTensor& s) {
  const FieldTag tag = s.field();
  const auto elements = field_elements(tag);
  const int p = static_cast<int>(elements.size());
  for (int code = 0; code < p * p * p * p; ++code) {
    int rest = code;
    std::vector<Scalar> data(4);
    for (int k = 3; k >= 0; --k) {
      data[k] = elements[rest % p];
      rest /= p;
    }
    const Matrix m(2, 2, tag, data);
    if ((data[0] * data[3] - data[1] * data[2]).is_zero()) continue;
    if (in_case1(apply_substitution(s, m))) return m;
  }
  return std::nullopt;
}

}  // namespace

BinaryCubicResult decompose_s3f2(const SymTensor& s) {
  if (s.order() != 3 || s.dim() != 2) fail(ErrorCode::kWrongShape, "decomposer needs d = 3, n = 2");
  const FieldTag tag = s.field();
  if (tag.is_float()) fail(ErrorCode::kUnsupportedField, "decomposer needs an exact field");
  if (tag.is_finite() && tag.prime() == 2) {
    fail(ErrorCode::kUnsupportedField, "binary cubics over GF(2) need not decompose");
  }
  const Scalar zero = Scalar::zero(tag);
  const Scalar one = Scalar::one(tag);

  BinaryCubicResult result;
  result.decomposition.symmetric = true;
  auto& steps = result.trace.steps;
  auto& terms = result.decomposition.terms;

  const int rank_a = unfolding_rank(s.tensor());
  if (rank_a == 0) {
    steps.push_back({"zero", std::nullopt});
    return result;
  }
  if (rank_a == 1) {
    const Matrix a = unfold(s.tensor()).matrix;
    Vector u;
    for (int j = 0; j < a.cols() && u.empty(); ++j) {
      if (!is_zero_vector(a.column(j))) u = a.column(j);
    }
    const int i = u[0].is_zero() ? 1 : 0;
    const std::vector<int> diag(3, i);
    Scalar c = s.tensor().at(diag) / (u[i] * u[i] * u[i]);
    push_term(terms, std::move(c), std::move(u));
    steps.push_back({"rank1", std::nullopt});
  } else if (auto pair = try_rank2(s)) {
    terms = std::move(*pair);
    steps.push_back({"rank2", std::nullopt});
  } else {
    SymTensor cur = s;
    Matrix total = Matrix::identity(2, tag);
    auto substitute = [&](std::string label, Matrix m) {
      cur = apply_substitution(cur, m);
      total = multiply(m, total);
      steps.push_back({std::move(label), std::move(m)});
    };
    for (int depth = 0;; ++depth) {
      if (depth > kMaxSubstitutions) fail(ErrorCode::kInternal, "case analysis did not terminate");
      const Entries e = entries_of(cur);
      if (!e.s112.is_zero() && !e.s122.is_zero()) {
        const Scalar t1 = e.s112 * e.s112 / e.s122;
        const Scalar b = e.s122 / e.s112;
        push_term(terms, t1, vec2(one, b));
        push_term(terms, e.s111 - t1, vec2(one, zero));
        push_term(terms, e.s222 - t1 * b * b * b, vec2(zero, one));
        steps.push_back({"1", std::nullopt});
        break;
      }
      if (e.s112.is_zero() && e.s122.is_zero()) {
        push_term(terms, e.s111, vec2(one, zero));
        push_term(terms, e.s222, vec2(zero, one));
        steps.push_back({"2", std::nullopt});
        break;
      }
      if (e.s122.is_zero()) {
        substitute("swap", mat2(tag, zero, one, one, zero));
        continue;
      }
      // s112 = 0, s122 != 0.
      if (characteristic(tag) == 3) {
        const Matrix shear = mat2(tag, one, one, zero, one);
        if (in_case1(apply_substitution(cur, shear))) {
          substitute("3a", shear);
        } else if (auto m = search_case1(cur)) {
          substitute("3a-search", *m);
        } else {
          const std::vector<Vector> points{vec2(one, zero), vec2(zero, one), vec2(one, one),
                                           vec2(one, Scalar::from_int(tag, 2))};
          const auto t = expand_in_cubes(cur, points);
          if (!t) fail(ErrorCode::kInternal, "projective cubes do not span S^3 GF(3)^2");
          for (std::size_t i = 0; i < points.size(); ++i) push_term(terms, (*t)[i], points[i]);
          steps.push_back({"3a-basis", std::nullopt});
          break;
        }
        continue;
      }
      if (!e.s111.is_zero()) {
        bool found = false;
        for (const auto& a : candidate_shifts(tag)) {
          const Matrix m = mat2(tag, one, zero, a, one);
          if (in_case1(apply_substitution(cur, m))) {
            substitute("3bi", m);
            found = true;
            break;
          }
        }
        if (!found) fail(ErrorCode::kInternal, "no shift reaches case 1");
        continue;
      }
      if (e.s222.is_zero()) {
        substitute("3bii", mat2(tag, one, one, zero, one));
        continue;
      }
      const Scalar three_c = Scalar::from_int(tag, 3) * e.s122;
      substitute("3biii", mat2(tag, one / three_c, zero, -e.s222 / three_c, one));
    }
    // Pull the terms back: s = sum t (total^-1 u)^(x)3.
    const auto back = inverse(total);
    if (!back) fail(ErrorCode::kInternal, "composed substitution is singular");
    for (auto& term : terms) term.factors.front() = multiply(*back, term.factors.front());
  }

  if (!(reconstruct(result.decomposition, 3, 2, tag) == s.tensor())) {
    fail(ErrorCode::kInternal, "binary cubic decomposition does not reconstruct the input");
  }
  return result;
}

}  // namespace trl
