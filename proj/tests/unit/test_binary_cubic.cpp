#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "trl/binary_cubic.hpp"
#include "trl/error.hpp"
#include "trl/ff_oracle.hpp"
#include "trl/generators.hpp"

using namespace trl;

namespace {

const FieldTag kQ = FieldTag::rational();

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

SymTensor cubic(const FieldTag& tag, Scalar s111, Scalar s112, Scalar s122, Scalar s222) {
  Tensor t(3, 2, tag);
  for (std::size_t flat = 0; flat < 8; ++flat) {
    const auto idx = t.multi_index(flat);
    const int ones = idx[0] + idx[1] + idx[2];
    t.set_flat(flat, ones == 0 ? s111 : ones == 1 ? s112 : ones == 2 ? s122 : s222);
  }
  return SymTensor(std::move(t));
}

SymTensor int_cubic(const FieldTag& tag, long long a, long long b, long long c, long long d) {
  return cubic(tag, Scalar::from_int(tag, a), Scalar::from_int(tag, b), Scalar::from_int(tag, c), Scalar::from_int(tag, d));
}

Matrix int_matrix(const FieldTag& tag, std::initializer_list<long long> values) {
  std::vector<Scalar> data;
  for (long long v : values) data.push_back(Scalar::from_int(tag, v));
  return Matrix(2, 2, tag, data);
}

void check_result(const SymTensor& s, const BinaryCubicResult& r) {
  CHECK(r.decomposition.symmetric);
  CHECK(reconstruct(r.decomposition, 3, 2, s.field()) == s.tensor());
  for (const auto& term : r.decomposition.terms) {
    CHECK(term.symmetric);
    CHECK_FALSE(term.coefficient.is_zero());
  }
}

}  // namespace

TEST_CASE("case 1 formulas") {
  const SymTensor s = int_cubic(kQ, 2, 1, 1, 0);
  const auto r = decompose_s3f2(s);
  check_result(s, r);
  REQUIRE(r.decomposition.terms.size() == 3);
  CHECK(r.trace.labels() == std::vector<std::string>{"1"});
  const auto& t = r.decomposition.terms;
  CHECK(t[0].coefficient == Scalar::from_int(kQ, 1));
  CHECK(t[0].factor(0) == make_vector(kQ, {1, 1}));
  CHECK(t[1].coefficient == Scalar::from_int(kQ, 1));
  CHECK(t[1].factor(0) == make_vector(kQ, {1, 0}));
  CHECK(t[2].coefficient == Scalar::from_int(kQ, -1));
  CHECK(t[2].factor(0) == make_vector(kQ, {0, 1}));
}

TEST_CASE("case 2 diagonal") {
  const auto gf3 = FieldTag::finite(3);
  const SymTensor s = int_cubic(gf3, 1, 0, 0, 2);
  const auto r = decompose_s3f2(s);
  check_result(s, r);
  CHECK(r.decomposition.terms.size() == 2);
}

TEST_CASE("GF(2) is rejected for every input") {
  const auto gf2 = FieldTag::finite(2);
  for (long long code = 0; code < 16; ++code) {
    const SymTensor s = symmetric_from_code(gf2, 3, 2, code);
    CHECK(code_of([&] { decompose_s3f2(s); }) == ErrorCode::kUnsupportedField);
  }
}

TEST_CASE("wrong shape and float tags") {
  CHECK(code_of([] { decompose_s3f2(sym_power(make_vector(kQ, {1, 1, 1}), 3)); }) == ErrorCode::kWrongShape);
  CHECK(code_of([] { decompose_s3f2(sym_power(make_vector(kQ, {1, 1}), 4)); }) == ErrorCode::kWrongShape);
  CHECK(code_of([] { decompose_s3f2(w_tensor(FieldTag::real_float())); }) == ErrorCode::kUnsupportedField);
}

TEST_CASE("W tensor over the rationals") {
  const SymTensor w = w_tensor(kQ);
  const auto r = decompose_s3f2(w);
  check_result(w, r);
  CHECK(r.decomposition.terms.size() == 3);
  const auto labels = r.trace.labels();
  CHECK(std::find(labels.begin(), labels.end(), "3bii") != labels.end());
  CHECK(brute_srank(w_tensor(FieldTag::finite(5))).get() == 3);
}

TEST_CASE("short circuits") {
  CHECK(decompose_s3f2(int_cubic(kQ, 0, 0, 0, 0)).decomposition.terms.empty());
  const SymTensor cube = sym_power(make_vector(kQ, {2, -3}), 3);
  const auto one = decompose_s3f2(cube);
  check_result(cube, one);
  CHECK(one.decomposition.terms.size() == 1);
  const SymTensor two(sym_power(make_vector(kQ, {1, 2}), 3).tensor() + sym_power(make_vector(kQ, {3, -1}), 3).tensor());
  const auto r2 = decompose_s3f2(two);
  check_result(two, r2);
  CHECK(r2.decomposition.terms.size() == 2);
}

TEST_CASE("apply_substitution") {
  const SymTensor diag = int_cubic(kQ, 5, 0, 0, 7);
  CHECK(apply_substitution(diag, Matrix::identity(2, kQ)).tensor() == diag.tensor());
  const SymTensor swapped = apply_substitution(diag, int_matrix(kQ, {0, 1, 1, 0}));
  CHECK(swapped.at({0, 0, 0}) == Scalar::from_int(kQ, 7));
  CHECK(swapped.at({1, 1, 1}) == Scalar::from_int(kQ, 5));
  const SymTensor e1 = sym_power(make_vector(kQ, {1, 0}), 3);
  CHECK(apply_substitution(e1, int_matrix(kQ, {1, 0, 1, 1})).tensor() == sym_power(make_vector(kQ, {1, 1}), 3).tensor());
  CHECK(code_of([&] { apply_substitution(diag, int_matrix(kQ, {1, 2, 2, 4})); }) == ErrorCode::kSingularSubstitution);
}

TEST_CASE("exhaustive over GF(3) and GF(5) against the BFS oracle") {
  for (int p : {3, 5}) {
    const auto tag = FieldTag::finite(p);
    const auto sranks = oracle::all_sranks(p, 3, 2);
    for (long long code = 0; code < symmetric_space_size(tag, 3, 2); ++code) {
      const SymTensor s = symmetric_from_code(tag, 3, 2, code);
      const auto r = decompose_s3f2(s);
      check_result(s, r);
      CHECK(static_cast<int>(r.decomposition.terms.size()) == sranks[oracle::encode(oracle::residues(s.tensor()), p)]);
    }
  }
}

TEST_CASE("exhaustive over GF(5) and GF(7): rank = srank = term count <= 3") {
  for (int p : {5, 7}) {
    const auto tag = FieldTag::finite(p);
    for (long long code = 0; code < symmetric_space_size(tag, 3, 2); ++code) {
      const SymTensor s = symmetric_from_code(tag, 3, 2, code);
      const auto r = decompose_s3f2(s);
      check_result(s, r);
      const int count = static_cast<int>(r.decomposition.terms.size());
      CHECK(count <= 3);
      CHECK(brute_srank(s).get() == count);
      CHECK(brute_rank(s.tensor()).rank == count);
    }
  }
}

TEST_CASE("random rationals") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 1000; ++trial) {
    const SymTensor s = int_cubic(kQ, entry(rng), entry(rng), entry(rng), entry(rng));
    const auto r = decompose_s3f2(s);
    check_result(s, r);
    CHECK(r.decomposition.terms.size() <= 3);
  }
}

TEST_CASE("substitution equivariance") {
  std::mt19937_64 rng(99);
  const auto gf5 = FieldTag::finite(5);
  std::uniform_int_distribution<int> entry(0, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const SymTensor s = int_cubic(gf5, entry(rng), entry(rng), entry(rng), entry(rng));
    Matrix m = int_matrix(gf5, {entry(rng), entry(rng), entry(rng), entry(rng)});
    const auto inv = inverse(m);
    if (!inv) continue;
    const auto moved = decompose_s3f2(apply_substitution(s, m));
    Decomposition pulled;
    pulled.symmetric = true;
    for (const auto& term : moved.decomposition.terms) {
      pulled.terms.push_back(RankOneTerm::power(term.coefficient, multiply(*inv, term.factor(0)), 3));
    }
    CHECK(reconstruct(pulled, 3, 2, gf5) == s.tensor());
    CHECK(pulled.terms.size() == decompose_s3f2(s).decomposition.terms.size());
  }
}

TEST_CASE("trace substitutions replay to the input") {
  const auto gf7 = FieldTag::finite(7);
  for (long long code = 0; code < symmetric_space_size(gf7, 3, 2); ++code) {
    const SymTensor s = symmetric_from_code(gf7, 3, 2, code);
    const auto r = decompose_s3f2(s);
    Matrix total = Matrix::identity(2, gf7);
    for (const auto& step : r.trace.steps) {
      if (step.substitution) total = multiply(*step.substitution, total);
    }
    CHECK(inverse(total).has_value());
  }
}
