#include "trl/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "trl/error.hpp"

namespace trl {

Tensor z2_counterexample() {
  const FieldTag tag = FieldTag::finite(2);
  Tensor t(2, 2, tag);
  t.set({0, 1}, Scalar::one(tag));
  t.set({1, 0}, Scalar::one(tag));
  return t;
}

SymTensor w_tensor(const FieldTag& tag) {
  Tensor t(3, 2, tag);
  for (auto idx : {std::vector<int>{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}) t.set(idx, Scalar::one(tag));
  return SymTensor(std::move(t));
}

SymTensor pencil_example(const FieldTag& tag, double a) {
  if (!tag.is_float()) fail(ErrorCode::kUnsupportedField, "pencil-example needs float64 or complex128");
  Tensor t(3, 2, tag);
  const Scalar one = Scalar::one(tag);
  t.set({0, 0, 0}, tag.kind() == FieldKind::kRealFloat ? Scalar::real(a) : Scalar::complex(a, 0.0));
  t.set({0, 1, 0}, one);
  t.set({1, 0, 0}, one);
  t.set({0, 0, 1}, one);
  return SymTensor(std::move(t));
}

namespace {

Scalar draw(const FieldTag& tag, std::mt19937_64& rng) {
  switch (tag.kind()) {
    case FieldKind::kFinite:
      return Scalar::from_int(tag, std::uniform_int_distribution<int>(0, tag.prime() - 1)(rng));
    case FieldKind::kRational:
      return Scalar::rational(std::uniform_int_distribution<int>(-9, 9)(rng));
    case FieldKind::kRealFloat:
      return Scalar::real(std::normal_distribution<double>()(rng));
    case FieldKind::kComplexFloat: {
      std::normal_distribution<double> normal;
      const double re = normal(rng);
      return Scalar::complex(re, normal(rng));
    }
  }
  fail(ErrorCode::kInternal, "bad field kind");
}

Vector random_vector(const FieldTag& tag, int n, std::mt19937_64& rng) {
  Vector v;
  for (int i = 0; i < n; ++i) v.push_back(draw(tag, rng));
  return v;
}

}  // namespace

SymTensor random_symmetric(const FieldTag& tag, int d, int n, std::uint64_t seed) {
  if (d < 1 || n < 1) fail(ErrorCode::kWrongShape, "d and n must be >= 1");
  std::mt19937_64 rng(seed);
  Tensor t(d, n, tag);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    auto index = t.multi_index(flat);
    if (!std::is_sorted(index.begin(), index.end())) continue;
    t.set_flat(flat, draw(tag, rng));
  }
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    auto index = t.multi_index(flat);
    std::sort(index.begin(), index.end());
    t.set_flat(flat, t.at(index));
  }
  return SymTensor(std::move(t));
}

BorderForm random_border_form(const FieldTag& tag, int d, int n, std::uint64_t seed) {
  if (!tag.is_float()) fail(ErrorCode::kUnsupportedField, "border forms need float64 or complex128");
  if (d < 3 || n < 2) fail(ErrorCode::kWrongShape, "border forms need d >= 3 and n >= 2");
  std::mt19937_64 rng(seed);
  auto norm = [](const Vector& v) {
    double s = 0.0;
    for (const auto& e : v) s += e.magnitude() * e.magnitude();
    return std::sqrt(s);
  };
  auto scaled = [&](const Vector& v, const Scalar& c) {
    Vector out;
    for (const auto& e : v) out.push_back(e * c);
    return out;
  };
  auto from_double = [&](double x) {
    return tag.kind() == FieldKind::kRealFloat ? Scalar::real(x) : Scalar::complex(x, 0.0);
  };
  Vector x = random_vector(tag, n, rng);
  x = scaled(x, from_double(1.0 / norm(x)));
  Vector y = random_vector(tag, n, rng);
  Scalar proj = Scalar::zero(tag);
  for (int i = 0; i < n; ++i) proj = proj + y[i] * x[i].conj();
  for (int i = 0; i < n; ++i) y[i] = y[i] - proj * x[i];
  y = scaled(y, from_double(1.0 / norm(y)));
  Scalar a = draw(tag, rng);
  Scalar b = draw(tag, rng);
  while (b.magnitude() < 0.1) b = draw(tag, rng);
  return BorderForm{std::move(x), std::move(y), std::move(a), std::move(b), d};
}

}  // namespace trl
