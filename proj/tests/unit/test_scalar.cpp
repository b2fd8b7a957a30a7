#include <doctest.h>

#include <random>

#include "trl/error.hpp"
#include "trl/scalar.hpp"

using namespace trl;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("field elements") {
  auto gf2 = field_elements(FieldTag::finite(2));
  REQUIRE(gf2.size() == 2);
  CHECK(gf2[0].residue_value() == 0);
  CHECK(gf2[1].residue_value() == 1);
  auto gf3 = field_elements(FieldTag::finite(3));
  REQUIRE(gf3.size() == 3);
  CHECK(gf3[2].residue_value() == 2);
  CHECK(code_of([] { field_elements(FieldTag::rational()); }) == ErrorCode::kInfiniteField);
}

TEST_CASE("characteristic") {
  CHECK(characteristic(FieldTag::finite(3)) == 3);
  CHECK(characteristic(FieldTag::finite(2)) == 2);
  CHECK(characteristic(FieldTag::complex_float()) == 0);
  CHECK(characteristic(FieldTag::rational()) == 0);
}

TEST_CASE("basic arithmetic") {
  const auto gf3 = FieldTag::finite(3);
  CHECK((Scalar::from_int(gf3, 2) * Scalar::from_int(gf3, 2)).residue_value() == 1);
  CHECK(Scalar::rational(1, 2) + Scalar::rational(1, 3) == Scalar::rational(5, 6));
  const auto gf2 = FieldTag::finite(2);
  CHECK(code_of([&] { (void)(Scalar::one(gf2) / Scalar::zero(gf2)); }) == ErrorCode::kDivisionByZero);
  CHECK(code_of([&] { (void)(Scalar::one(gf2) + Scalar::one(gf3)); }) == ErrorCode::kMixedFields);
  CHECK(scalar_arith(Scalar::from_int(gf3, 1), Scalar::from_int(gf3, 2), ArithOp::kSub).residue_value() == 2);
}

TEST_CASE("field tags") {
  for (const char* text : {"gf2", "gf3", "gf5", "gf7", "gf13", "rational", "float64", "complex128"}) {
    CHECK(FieldTag::parse(text).to_string() == text);
  }
  CHECK(code_of([] { FieldTag::parse("gf4"); }) == ErrorCode::kInvalidField);
  CHECK(code_of([] { FieldTag::parse("gf17"); }) == ErrorCode::kInvalidField);
  CHECK(code_of([] { FieldTag::parse("reals"); }) == ErrorCode::kInvalidField);
}

TEST_CASE("field axioms hold exhaustively over small prime fields") {
  for (int p : {2, 3, 5}) {
    const auto tag = FieldTag::finite(p);
    const auto els = field_elements(tag);
    const auto zero = Scalar::zero(tag);
    const auto one = Scalar::one(tag);
    for (const auto& a : els) {
      CHECK(a + (-a) == zero);
      CHECK(a * one == a);
      if (!a.is_zero()) CHECK(a * a.inverse() == one);
      Scalar multiple = zero;
      for (int k = 0; k < p; ++k) multiple += a;
      CHECK(multiple == zero);
      for (const auto& b : els) {
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        for (const auto& c : els) {
          CHECK((a + b) + c == a + (b + c));
          CHECK((a * b) * c == a * (b * c));
          CHECK(a * (b + c) == a * b + a * c);
        }
      }
    }
  }
}

TEST_CASE("rational arithmetic stays exact") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> num(-1'000'000'007LL, 1'000'000'007LL);
  std::uniform_int_distribution<long long> den(1, 1'000'000'009LL);
  for (int trial = 0; trial < 500; ++trial) {
    const long long a = num(rng), b = den(rng), c = num(rng), e = den(rng);
    const BigInt A = a, B = b, C = c, E = e;
    const Scalar x = Scalar::rational(a, b);
    const Scalar y = Scalar::rational(c, e);
    CHECK((x + y).rational_value() == Rational(A * E + C * B) / Rational(B * E));
    CHECK((x - y).rational_value() == Rational(A * E - C * B) / Rational(B * E));
    CHECK((x * y).rational_value() == Rational(A * C) / Rational(B * E));
    if (c != 0) CHECK((x / y).rational_value() == Rational(A * E) / Rational(B * C));
    const Rational parsed = parse_rational(rational_to_string((x * y).rational_value()));
    CHECK(parsed == (x * y).rational_value());
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(rational_to_string(Rational(-3, 2)) == "-3/2");
  CHECK(rational_to_string(Rational(4)) == "4");
  CHECK(code_of([] { parse_rational("1/0"); }) != ErrorCode::kInternal);
  CHECK(code_of([] { parse_rational("abc"); }) != ErrorCode::kInternal);
}

TEST_CASE("complex conjugation and magnitude") {
  const Scalar z = Scalar::complex(3.0, -4.0);
  CHECK(z.magnitude() == doctest::Approx(5.0));
  CHECK(z.conj().to_complex() == std::complex<double>(3.0, 4.0));
  CHECK((z * z.conj()).to_complex().real() == doctest::Approx(25.0));
  CHECK(Scalar::real(-2.5).magnitude() == doctest::Approx(2.5));
}
