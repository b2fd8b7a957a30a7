#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "trl/error.hpp"
#include "trl/generators.hpp"
#include "trl/tensor.hpp"

using namespace trl;

namespace {

const FieldTag kQ = FieldTag::rational();
const FieldTag kGF2 = FieldTag::finite(2);
const FieldTag kGF3 = FieldTag::finite(3);

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

Tensor random_tensor(const FieldTag& tag, int d, int n, std::mt19937_64& rng) {
  Tensor t(d, n, tag);
  std::uniform_int_distribution<int> small(-5, 5);
  std::normal_distribution<double> normal;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (tag.kind() == FieldKind::kComplexFloat) {
      const double re = normal(rng);
      t.set_flat(i, Scalar::complex(re, normal(rng)));
    } else if (tag.kind() == FieldKind::kRealFloat) {
      t.set_flat(i, Scalar::real(normal(rng)));
    } else {
      t.set_flat(i, Scalar::from_int(tag, small(rng)));
    }
  }
  return t;
}

}  // namespace

TEST_CASE("rank_one examples") {
  const std::vector<Vector> f2{unit_vector(kQ, 2, 0), unit_vector(kQ, 2, 1)};
  const Tensor m = rank_one(f2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(m.at({i, j}) == Scalar::from_int(kQ, (i == 0 && j == 1) ? 1 : 0));

  const std::vector<Vector> f3{make_vector(kGF2, {1, 1}), make_vector(kGF2, {1, 0}), make_vector(kGF2, {1, 0})};
  const Tensor t = rank_one(f3);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const auto idx = t.multi_index(flat);
    const bool expected = idx[1] == 0 && idx[2] == 0;
    CHECK(t[flat].residue_value() == (expected ? 1u : 0u));
  }

  const std::vector<Vector> with_zero{make_vector(kQ, {1, 2}), zero_vector(kQ, 2), make_vector(kQ, {3, 4})};
  CHECK(rank_one(with_zero).is_zero());
}

TEST_CASE("sym_power examples") {
  const SymTensor ones = sym_power(make_vector(kQ, {1, 1}), 3);
  for (const auto& e : ones.tensor().entries()) CHECK(e == Scalar::one(kQ));
  const SymTensor corner = sym_power(make_vector(kQ, {1, 0}), 3);
  CHECK(corner.at({0, 0, 0}) == Scalar::one(kQ));
  CHECK(std::count_if(corner.tensor().entries().begin(), corner.tensor().entries().end(),
                      [](const Scalar& s) { return !s.is_zero(); }) == 1);
  CHECK(sym_power(make_vector(kGF3, {1, 2}), 3).at({1, 1, 1}).residue_value() == 2);
}

TEST_CASE("symmetrize") {
  const SymTensor w = w_tensor(kQ);
  CHECK(symmetrize(w.tensor()).tensor() == w.tensor());

  const std::vector<Vector> f{unit_vector(kQ, 2, 0), unit_vector(kQ, 2, 0), unit_vector(kQ, 2, 1)};
  const SymTensor s = symmetrize(rank_one(f));
  for (auto idx : {std::vector<int>{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}) CHECK(s.tensor().at(idx) == Scalar::rational(1, 3));
  CHECK(s.at({0, 0, 0}).is_zero());

  CHECK(code_of([] { symmetrize(Tensor(3, 2, kGF3)); }) == ErrorCode::kBadCharacteristic);
}

TEST_CASE("symmetrize is a projection") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor t = random_tensor(kQ, 3, 3, rng);
    const SymTensor once = symmetrize(t);
    CHECK(symmetrize(once.tensor()).tensor() == once.tensor());
    CHECK(is_symmetric(once.tensor()));
  }
}

TEST_CASE("SymTensor rejects asymmetric input") {
  const std::vector<Vector> f{unit_vector(kQ, 2, 0), unit_vector(kQ, 2, 1)};
  CHECK(code_of([&] { SymTensor s(rank_one(f)); }) == ErrorCode::kNotSymmetric);
}

TEST_CASE("sym_power is invariant under every index permutation") {
  std::mt19937_64 rng(9);
  for (int d = 1; d <= 5; ++d) {
    Vector u;
    for (int i = 0; i < 3; ++i) u.push_back(Scalar::from_int(kQ, static_cast<long long>(rng() % 7) - 3));
    const SymTensor s = sym_power(u, d);
    for (std::size_t flat = 0; flat < s.tensor().size(); ++flat) {
      auto idx = s.tensor().multi_index(flat);
      std::sort(idx.begin(), idx.end());
      do {
        CHECK(s.tensor().at(idx) == s.tensor()[flat]);
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
  }
}

TEST_CASE("inner product") {
  const SymTensor w = w_tensor(kQ);
  CHECK(inner_product(w.tensor(), w.tensor()) == Scalar::from_int(kQ, 3));
  const Tensor a = sym_power(unit_vector(kQ, 2, 0), 3).tensor();
  const Tensor b = sym_power(unit_vector(kQ, 2, 1), 3).tensor();
  CHECK(inner_product(a, b).is_zero());
  CHECK(inner_product(a, Tensor(3, 2, kQ)).is_zero());

  std::mt19937_64 rng(3);
  const auto tag = FieldTag::complex_float();
  for (int trial = 0; trial < 40; ++trial) {
    const Tensor p = random_tensor(tag, 3, 2, rng);
    const Tensor q = random_tensor(tag, 3, 2, rng);
    const auto pq = inner_product(p, q).to_complex();
    const auto qp = inner_product(q, p).to_complex();
    CHECK(std::abs(pq - std::conj(qp)) < 1e-12);
    const auto pp = inner_product(p, p).to_complex();
    CHECK(pp.real() > 0.0);
    CHECK(std::abs(pp.imag()) < 1e-12);
    CHECK(std::sqrt(pp.real()) == doctest::Approx(frobenius_norm(p)));
  }
}

TEST_CASE("reconstruct") {
  CHECK(reconstruct(Decomposition{}, 3, 2, kQ).is_zero());

  Decomposition single;
  single.symmetric = true;
  single.terms.push_back(RankOneTerm::power(Scalar::one(kQ), make_vector(kQ, {1, 1}), 3));
  const Tensor ones = reconstruct(single, 3, 2, kQ);
  for (const auto& e : ones.entries()) CHECK(e == Scalar::one(kQ));

  // eps = 1: (e1 + e2)^3 - e1^3.
  Decomposition w;
  w.symmetric = true;
  w.terms.push_back(RankOneTerm::power(Scalar::one(kQ), make_vector(kQ, {1, 1}), 3));
  w.terms.push_back(RankOneTerm::power(Scalar::from_int(kQ, -1), make_vector(kQ, {1, 0}), 3));
  const Tensor t = reconstruct(w, 3, 2, kQ);
  CHECK(t.at({0, 0, 0}).is_zero());
  for (std::size_t flat = 1; flat < t.size(); ++flat) CHECK(t[flat] == Scalar::one(kQ));
}

TEST_CASE("reconstruct is additive over term lists") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> small(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    Decomposition a, b, both;
    for (int k = 0; k < 3; ++k) {
      std::vector<Vector> f;
      for (int m = 0; m < 3; ++m) f.push_back(make_vector(kQ, {small(rng), small(rng), small(rng)}));
      auto term = RankOneTerm::general(Scalar::from_int(kQ, small(rng)), f);
      (k % 2 ? a : b).terms.push_back(term);
      both.terms.push_back(term);
    }
    CHECK(reconstruct(both, 3, 3, kQ) == reconstruct(a, 3, 3, kQ) + reconstruct(b, 3, 3, kQ));
  }
}

TEST_CASE("multilinear action matches the vector action on rank ones") {
  const Vector m{Scalar::from_int(kQ, 1), Scalar::from_int(kQ, 2), Scalar::from_int(kQ, -1), Scalar::from_int(kQ, 3)};
  const Vector u = make_vector(kQ, {2, -5});
  const Vector mu{Scalar::from_int(kQ, 2 - 10), Scalar::from_int(kQ, -2 - 15)};
  CHECK(multilinear_action(sym_power(u, 3).tensor(), m) == sym_power(mu, 3).tensor());
}

TEST_CASE("float symmetry tolerance") {
  Tensor t = w_tensor(FieldTag::real_float()).tensor();
  t.set({0, 0, 1}, Scalar::real(1.0 + 1e-12));
  CHECK(is_symmetric(t));
  t.set({0, 0, 1}, Scalar::real(1.0 + 1e-6));
  CHECK_FALSE(is_symmetric(t));
}

TEST_CASE("shape errors") {
  CHECK(code_of([] { Tensor(3, 2, kQ, std::vector<Scalar>(7, Scalar::zero(kQ))); }) == ErrorCode::kShapeMismatch);
  CHECK(code_of([] { (void)(Tensor(3, 2, kQ) + Tensor(3, 3, kQ)); }) == ErrorCode::kShapeMismatch);
}
