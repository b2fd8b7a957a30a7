#include "trl/scalar.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "trl/error.hpp"

namespace trl {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

FieldTag FieldTag::finite(int p) {
  if (!is_prime(p) || p > kMaxPrime) {
    fail(ErrorCode::kInvalidField, "GF(" + std::to_string(p) + ") needs a prime p <= 13");
  }
  return FieldTag(FieldKind::kFinite, p);
}

FieldTag FieldTag::parse(std::string_view text) {
  if (text == "rational") return rational();
  if (text == "float64") return real_float();
  if (text == "complex128") return complex_float();
  if (text.size() > 2 && text.substr(0, 2) == "gf") {
    int p = 0;
    auto digits = text.substr(2);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return finite(p);
  }
  fail(ErrorCode::kInvalidField, "unknown field tag '" + std::string(text) + "'");
}

std::string FieldTag::to_string() const {
  switch (kind_) {
    case FieldKind::kFinite: return "gf" + std::to_string(prime_);
    case FieldKind::kRational: return "rational";
    case FieldKind::kRealFloat: return "float64";
    case FieldKind::kComplexFloat: return "complex128";
  }
  return "?";
}

int characteristic(const FieldTag& tag) { return tag.is_finite() ? tag.prime() : 0; }

namespace {

std::uint32_t reduce(long long value, int p) {
  long long r = value % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t inverse_mod(std::uint32_t a, int p) {
  // Fermat: a^(p-2).
  std::uint32_t result = 1;
  std::uint32_t base = a % p;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

}  // namespace

Scalar::Scalar() : tag_(FieldTag::rational()), value_(Rational(0)) {}

Scalar Scalar::zero(const FieldTag& tag) { return from_int(tag, 0); }
Scalar Scalar::one(const FieldTag& tag) { return from_int(tag, 1); }

Scalar Scalar::from_int(const FieldTag& tag, long long value) {
  switch (tag.kind()) {
    case FieldKind::kFinite: return Scalar(tag, reduce(value, tag.prime()));
    case FieldKind::kRational: return Scalar(tag, Rational(value));
    case FieldKind::kRealFloat: return Scalar(tag, static_cast<double>(value));
    case FieldKind::kComplexFloat:
      return Scalar(tag, std::complex<double>(static_cast<double>(value), 0.0));
  }
  fail(ErrorCode::kInternal, "bad field kind");
}

Scalar Scalar::residue(int p, long long value) {
  FieldTag tag = FieldTag::finite(p);
  return Scalar(tag, reduce(value, p));
}

Scalar Scalar::rational(Rational value) { return Scalar(FieldTag::rational(), std::move(value)); }

Scalar Scalar::rational(long long num, long long den) {
  if (den == 0) fail(ErrorCode::kDivisionByZero, "rational with zero denominator");
  return Scalar(FieldTag::rational(), Rational(num, den));
}

Scalar Scalar::real(double value) { return Scalar(FieldTag::real_float(), value); }

Scalar Scalar::complex(std::complex<double> value) { return Scalar(FieldTag::complex_float(), value); }

bool Scalar::is_zero() const {
  switch (tag_.kind()) {
    case FieldKind::kFinite: return std::get<std::uint32_t>(value_) == 0;
    case FieldKind::kRational: return std::get<Rational>(value_) == 0;
    case FieldKind::kRealFloat: return std::get<double>(value_) == 0.0;
    case FieldKind::kComplexFloat: return std::get<std::complex<double>>(value_) == 0.0;
  }
  return false;
}

std::uint32_t Scalar::residue_value() const {
  if (!tag_.is_finite()) fail(ErrorCode::kMixedFields, "residue of a non-finite scalar");
  return std::get<std::uint32_t>(value_);
}

const Rational& Scalar::rational_value() const {
  if (tag_.kind() != FieldKind::kRational) fail(ErrorCode::kMixedFields, "not a rational scalar");
  return std::get<Rational>(value_);
}

double Scalar::real_value() const {
  switch (tag_.kind()) {
    case FieldKind::kRealFloat: return std::get<double>(value_);
    case FieldKind::kRational: return static_cast<double>(std::get<Rational>(value_));
    case FieldKind::kComplexFloat: return std::get<std::complex<double>>(value_).real();
    case FieldKind::kFinite: break;
  }
  fail(ErrorCode::kMixedFields, "finite-field scalar has no real value");
}

std::complex<double> Scalar::to_complex() const {
  if (tag_.kind() == FieldKind::kComplexFloat) return std::get<std::complex<double>>(value_);
  return {real_value(), 0.0};
}

double Scalar::magnitude() const {
  if (tag_.is_finite()) return is_zero() ? 0.0 : 1.0;
  return std::abs(to_complex());
}

Scalar Scalar::conj() const {
  if (tag_.kind() == FieldKind::kComplexFloat) {
    return Scalar(tag_, std::conj(std::get<std::complex<double>>(value_)));
  }
  return *this;
}

Scalar Scalar::inverse() const { return one(tag_) / *this; }

Scalar Scalar::operator-() const { return zero(tag_) - *this; }

void Scalar::require_same_field(const Scalar& other) const {
  if (!(tag_ == other.tag_)) {
    fail(ErrorCode::kMixedFields, tag_.to_string() + " vs " + other.tag_.to_string());
  }
}

Scalar& Scalar::operator+=(const Scalar& other) {
  require_same_field(other);
  switch (tag_.kind()) {
    case FieldKind::kFinite: {
      auto& v = std::get<std::uint32_t>(value_);
      v = (v + std::get<std::uint32_t>(other.value_)) % tag_.prime();
      break;
    }
    case FieldKind::kRational: std::get<Rational>(value_) += std::get<Rational>(other.value_); break;
    case FieldKind::kRealFloat: std::get<double>(value_) += std::get<double>(other.value_); break;
    case FieldKind::kComplexFloat:
      std::get<std::complex<double>>(value_) += std::get<std::complex<double>>(other.value_);
      break;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  require_same_field(other);
  switch (tag_.kind()) {
    case FieldKind::kFinite: {
      auto& v = std::get<std::uint32_t>(value_);
      const int p = tag_.prime();
      v = (v + p - std::get<std::uint32_t>(other.value_)) % p;
      break;
    }
    case FieldKind::kRational: std::get<Rational>(value_) -= std::get<Rational>(other.value_); break;
    case FieldKind::kRealFloat: std::get<double>(value_) -= std::get<double>(other.value_); break;
    case FieldKind::kComplexFloat:
      std::get<std::complex<double>>(value_) -= std::get<std::complex<double>>(other.value_);
      break;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  require_same_field(other);
  switch (tag_.kind()) {
    case FieldKind::kFinite: {
      auto& v = std::get<std::uint32_t>(value_);
      v = (v * std::get<std::uint32_t>(other.value_)) % tag_.prime();
      break;
    }
    case FieldKind::kRational: std::get<Rational>(value_) *= std::get<Rational>(other.value_); break;
    case FieldKind::kRealFloat: std::get<double>(value_) *= std::get<double>(other.value_); break;
    case FieldKind::kComplexFloat:
      std::get<std::complex<double>>(value_) *= std::get<std::complex<double>>(other.value_);
      break;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  require_same_field(other);
  if (other.is_zero()) fail(ErrorCode::kDivisionByZero, "division by zero in " + tag_.to_string());
  switch (tag_.kind()) {
    case FieldKind::kFinite: {
      auto& v = std::get<std::uint32_t>(value_);
      v = v * inverse_mod(std::get<std::uint32_t>(other.value_), tag_.prime()) % tag_.prime();
      break;
    }
    case FieldKind::kRational: std::get<Rational>(value_) /= std::get<Rational>(other.value_); break;
    case FieldKind::kRealFloat: std::get<double>(value_) /= std::get<double>(other.value_); break;
    case FieldKind::kComplexFloat:
      std::get<std::complex<double>>(value_) /= std::get<std::complex<double>>(other.value_);
      break;
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) { return a.tag_ == b.tag_ && a.value_ == b.value_; }

std::string Scalar::to_string() const {
  std::ostringstream out;
  switch (tag_.kind()) {
    case FieldKind::kFinite: out << std::get<std::uint32_t>(value_); break;
    case FieldKind::kRational: out << rational_to_string(std::get<Rational>(value_)); break;
    case FieldKind::kRealFloat: out << std::get<double>(value_); break;
    case FieldKind::kComplexFloat: {
      auto z = std::get<std::complex<double>>(value_);
      out << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
      break;
    }
  }
  return out.str();
}

Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op) {
  switch (op) {
    case ArithOp::kAdd: return a + b;
    case ArithOp::kSub: return a - b;
    case ArithOp::kMul: return a * b;
    case ArithOp::kDiv: return a / b;
  }
  fail(ErrorCode::kInternal, "bad op");
}

std::vector<Scalar> field_elements(const FieldTag& tag) {
  if (!tag.is_finite()) fail(ErrorCode::kInfiniteField, tag.to_string() + " is infinite");
  std::vector<Scalar> out;
  out.reserve(tag.prime());
  for (int v = 0; v < tag.prime(); ++v) out.push_back(Scalar::from_int(tag, v));
  return out;
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty()) fail(ErrorCode::kParseError, "empty integer in '" + std::string(text) + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) fail(ErrorCode::kParseError, "bad integer '" + std::string(s) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') fail(ErrorCode::kParseError, "bad integer '" + std::string(s) + "'");
    }
    BigInt v(std::string(s.substr(start)));
    return s[0] == '-' ? BigInt(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) fail(ErrorCode::kDivisionByZero, "rational '" + std::string(text) + "' has zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string rational_to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace trl
