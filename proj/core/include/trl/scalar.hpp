#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace trl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class FieldKind { kFinite, kRational, kRealFloat, kComplexFloat };

// Which field a scalar lives in. Finite fields are prime fields GF(p) with
// p <= 13.
class FieldTag {
 public:
  static FieldTag finite(int p);
  static FieldTag rational() { return FieldTag(FieldKind::kRational, 0); }
  static FieldTag real_float() { return FieldTag(FieldKind::kRealFloat, 0); }
  static FieldTag complex_float() { return FieldTag(FieldKind::kComplexFloat, 0); }

  // "gf2", "gf3", ..., "rational", "float64", "complex128".
  static FieldTag parse(std::string_view text);

  FieldKind kind() const { return kind_; }
  int prime() const { return prime_; }
  bool is_finite() const { return kind_ == FieldKind::kFinite; }
  bool is_exact() const { return kind_ == FieldKind::kFinite || kind_ == FieldKind::kRational; }
  bool is_float() const { return !is_exact(); }
  std::string to_string() const;

  friend bool operator==(const FieldTag&, const FieldTag&) = default;

 private:
  FieldTag(FieldKind kind, int prime) : kind_(kind), prime_(prime) {}

  FieldKind kind_;
  int prime_;
};

inline constexpr int kMaxPrime = 13;

bool is_prime(int p);

int characteristic(const FieldTag& tag);

enum class ArithOp { kAdd, kSub, kMul, kDiv };

class Scalar {
 public:
  // Rational zero; prefer Scalar::zero(tag) when the field matters.
  Scalar();

  static Scalar zero(const FieldTag& tag);
  static Scalar one(const FieldTag& tag);
  static Scalar from_int(const FieldTag& tag, long long value);
  static Scalar residue(int p, long long value);
  static Scalar rational(Rational value);
  static Scalar rational(long long num, long long den = 1);
  static Scalar real(double value);
  static Scalar complex(std::complex<double> value);
  static Scalar complex(double re, double im) { return complex({re, im}); }

  const FieldTag& field() const { return tag_; }

  // Exact zero test; float tags compare against 0.0 exactly.
  bool is_zero() const;

  std::uint32_t residue_value() const;
  const Rational& rational_value() const;
  double real_value() const;
  // Valid for rational and float tags.
  std::complex<double> to_complex() const;
  // |x| for rational and float tags; 0 or 1 for finite fields.
  double magnitude() const;

  Scalar conj() const;
  Scalar inverse() const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  // Exact equality including the field tag.
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  using Storage = std::variant<std::uint32_t, Rational, double, std::complex<double>>;

  Scalar(FieldTag tag, Storage value) : tag_(tag), value_(std::move(value)) {}

  void require_same_field(const Scalar& other) const;

  FieldTag tag_;
  Storage value_;
};

Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op);

// The p elements of GF(p) in canonical order 0, 1, ..., p-1.
std::vector<Scalar> field_elements(const FieldTag& tag);

// Parses "num/den" or an integer literal.
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& q);

}  // namespace trl
