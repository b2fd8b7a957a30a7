#include "trl/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trl/error.hpp"

namespace trl {

Vector make_vector(const FieldTag& tag, std::initializer_list<long long> values) {
  Vector v;
  v.reserve(values.size());
  for (long long x : values) v.push_back(Scalar::from_int(tag, x));
  return v;
}

Vector zero_vector(const FieldTag& tag, int n) { return Vector(n, Scalar::zero(tag)); }

Vector unit_vector(const FieldTag& tag, int n, int i) {
  Vector v = zero_vector(tag, n);
  v.at(i) = Scalar::one(tag);
  return v;
}

bool is_zero_vector(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); });
}

namespace {

std::size_t checked_power(int dim, int order) {
  if (order < 1 || dim < 1) fail(ErrorCode::kShapeMismatch, "order and dim must be >= 1");
  std::size_t n = 1;
  for (int k = 0; k < order; ++k) n *= static_cast<std::size_t>(dim);
  return n;
}

}  // namespace

Tensor::Tensor(int order, int dim, FieldTag tag)
    : order_(order), dim_(dim), tag_(tag), entries_(checked_power(dim, order), Scalar::zero(tag)) {}

Tensor::Tensor(int order, int dim, FieldTag tag, std::vector<Scalar> entries)
    : order_(order), dim_(dim), tag_(tag), entries_(std::move(entries)) {
  if (entries_.size() != checked_power(dim, order)) {
    fail(ErrorCode::kShapeMismatch, "expected " + std::to_string(checked_power(dim, order)) +
                                        " entries, got " + std::to_string(entries_.size()));
  }
  for (const auto& e : entries_) {
    if (!(e.field() == tag_)) fail(ErrorCode::kMixedFields, "tensor entry outside " + tag_.to_string());
  }
}

void Tensor::set(std::span<const int> index, Scalar value) { set_flat(flat_index(index), std::move(value)); }

void Tensor::set_flat(std::size_t flat, Scalar value) {
  if (!(value.field() == tag_)) fail(ErrorCode::kMixedFields, "entry outside " + tag_.to_string());
  entries_.at(flat) = std::move(value);
}

std::size_t Tensor::flat_index(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != order_) fail(ErrorCode::kShapeMismatch, "index arity");
  std::size_t flat = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) fail(ErrorCode::kShapeMismatch, "index out of range");
    flat = flat * dim_ + i;
  }
  return flat;
}

std::vector<int> Tensor::multi_index(std::size_t flat) const {
  std::vector<int> index(order_);
  for (int k = order_ - 1; k >= 0; --k) {
    index[k] = static_cast<int>(flat % dim_);
    flat /= dim_;
  }
  return index;
}

bool Tensor::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& x) { return x.is_zero(); });
}

bool Tensor::same_shape(const Tensor& other) const {
  return order_ == other.order_ && dim_ == other.dim_ && tag_ == other.tag_;
}

Tensor& Tensor::operator+=(const Tensor& other) {
  if (!same_shape(other)) fail(ErrorCode::kShapeMismatch, "tensor sum shape");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  if (!same_shape(other)) fail(ErrorCode::kShapeMismatch, "tensor difference shape");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

Tensor Tensor::scaled(const Scalar& factor) const {
  Tensor out = *this;
  for (auto& e : out.entries_) e *= factor;
  return out;
}

bool operator==(const Tensor& a, const Tensor& b) { return a.same_shape(b) && a.entries_ == b.entries_; }

bool is_symmetric(const Tensor& t) {
  double scale = 0.0;
  if (t.field().is_float()) {
    for (const auto& e : t.entries()) scale = std::max(scale, e.magnitude());
  }
  const double tol = kSymmetryTolerance * (1.0 + scale);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    auto index = t.multi_index(flat);
    std::sort(index.begin(), index.end());
    const Scalar& canonical = t.at(index);
    if (t.field().is_exact()) {
      if (!(canonical == t[flat])) return false;
    } else if ((canonical - t[flat]).magnitude() > tol) {
      return false;
    }
  }
  return true;
}

SymTensor::SymTensor(Tensor t) : tensor_(std::move(t)) {
  if (!is_symmetric(tensor_)) fail(ErrorCode::kNotSymmetric, "tensor is not symmetric");
}

Tensor rank_one(std::span<const Vector> factors) {
  if (factors.empty()) fail(ErrorCode::kShapeMismatch, "rank_one needs at least one factor");
  const int n = static_cast<int>(factors.front().size());
  if (n == 0) fail(ErrorCode::kShapeMismatch, "empty factor");
  const FieldTag tag = factors.front().front().field();
  for (const auto& f : factors) {
    if (static_cast<int>(f.size()) != n) fail(ErrorCode::kShapeMismatch, "factor lengths differ");
    for (const auto& x : f) {
      if (!(x.field() == tag)) fail(ErrorCode::kMixedFields, "factors over different fields");
    }
  }
  const int d = static_cast<int>(factors.size());
  Tensor out(d, n, tag);
  std::vector<Scalar> entries(out.size(), Scalar::zero(tag));
  for (std::size_t flat = 0; flat < entries.size(); ++flat) {
    std::size_t rest = flat;
    Scalar value = Scalar::one(tag);
    for (int k = d - 1; k >= 0; --k) {
      value *= factors[k][rest % n];
      rest /= n;
    }
    entries[flat] = std::move(value);
  }
  return Tensor(d, n, tag, std::move(entries));
}

SymTensor sym_power(const Vector& u, int order) {
  std::vector<Vector> factors(order, u);
  return SymTensor(rank_one(factors));
}

SymTensor symmetrize(const Tensor& t) {
  const int d = t.order();
  const FieldTag tag = t.field();
  long long factorial = 1;
  for (int k = 2; k <= d; ++k) factorial *= k;
  if (tag.is_finite() && factorial % tag.prime() == 0) {
    fail(ErrorCode::kBadCharacteristic,
         std::to_string(d) + "! is not invertible in " + tag.to_string());
  }
  const Scalar inv = Scalar::from_int(tag, factorial).inverse();
  std::vector<int> perm(d);
  std::vector<Scalar> entries(t.size(), Scalar::zero(tag));
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const auto index = t.multi_index(flat);
    std::iota(perm.begin(), perm.end(), 0);
    Scalar sum = Scalar::zero(tag);
    std::vector<int> permuted(d);
    do {
      for (int k = 0; k < d; ++k) permuted[k] = index[perm[k]];
      sum += t.at(permuted);
    } while (std::next_permutation(perm.begin(), perm.end()));
    entries[flat] = sum * inv;
  }
  return SymTensor(Tensor(d, t.dim(), tag, std::move(entries)));
}

Scalar inner_product(const Tensor& p, const Tensor& q) {
  if (!p.same_shape(q)) fail(ErrorCode::kShapeMismatch, "inner product shape");
  Scalar sum = Scalar::zero(p.field());
  for (std::size_t i = 0; i < p.size(); ++i) sum += p[i] * q[i].conj();
  return sum;
}

double frobenius_norm(const Tensor& t) {
  double sum = 0.0;
  for (const auto& e : t.entries()) sum += std::norm(e.to_complex());
  return std::sqrt(sum);
}

Tensor multilinear_action(const Tensor& t, std::span<const Scalar> matrix, int out_dim) {
  const int n = t.dim();
  if (out_dim < 1 || matrix.size() != static_cast<std::size_t>(out_dim) * n) {
    fail(ErrorCode::kShapeMismatch, "matrix size");
  }
  const FieldTag tag = t.field();
  const int d = t.order();
  // Apply the matrix one mode at a time, last mode first; after each step the
  // processed modes have extent out_dim and the rest keep extent n.
  std::vector<Scalar> current(t.entries().begin(), t.entries().end());
  std::vector<std::size_t> extent(d, static_cast<std::size_t>(n));
  for (int mode = d - 1; mode >= 0; --mode) {
    std::size_t stride = 1;
    for (int k = mode + 1; k < d; ++k) stride *= extent[k];
    std::size_t outer = 1;
    for (int k = 0; k < mode; ++k) outer *= extent[k];
    std::vector<Scalar> next(outer * out_dim * stride, Scalar::zero(tag));
    for (std::size_t o = 0; o < outer; ++o) {
      for (int a = 0; a < out_dim; ++a) {
        for (std::size_t s = 0; s < stride; ++s) {
          Scalar sum = Scalar::zero(tag);
          for (int i = 0; i < n; ++i) {
            sum += matrix[static_cast<std::size_t>(a) * n + i] * current[(o * n + i) * stride + s];
          }
          next[(o * out_dim + a) * stride + s] = std::move(sum);
        }
      }
    }
    current = std::move(next);
    extent[mode] = out_dim;
  }
  return Tensor(d, out_dim, tag, std::move(current));
}

RankOneTerm RankOneTerm::general(Scalar coefficient, std::vector<Vector> factors) {
  if (factors.empty()) fail(ErrorCode::kShapeMismatch, "rank-one term without factors");
  RankOneTerm term;
  term.coefficient = std::move(coefficient);
  term.order = static_cast<int>(factors.size());
  term.factors = std::move(factors);
  return term;
}

RankOneTerm RankOneTerm::power(Scalar coefficient, Vector u, int order) {
  RankOneTerm term;
  term.coefficient = std::move(coefficient);
  term.factors.push_back(std::move(u));
  term.symmetric = true;
  term.order = order;
  return term;
}

Tensor RankOneTerm::expand() const {
  std::vector<Vector> full;
  full.reserve(order);
  for (int k = 0; k < order; ++k) full.push_back(factor(k));
  return rank_one(full).scaled(coefficient);
}

Tensor reconstruct(const Decomposition& dec, int order, int dim, const FieldTag& tag) {
  Tensor sum(order, dim, tag);
  for (const auto& term : dec.terms) {
    Tensor t = term.expand();
    if (!t.same_shape(sum)) fail(ErrorCode::kShapeMismatch, "term shape differs from target");
    sum += t;
  }
  return sum;
}

}  // namespace trl
