#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "trl/scalar.hpp"

namespace trl {

using Vector = std::vector<Scalar>;

Vector make_vector(const FieldTag& tag, std::initializer_list<long long> values);
Vector zero_vector(const FieldTag& tag, int n);
Vector unit_vector(const FieldTag& tag, int n, int i);
bool is_zero_vector(std::span<const Scalar> v);

// Dense order-d tensor on F^n. Entries are stored row-major with the first
// index slowest: flat(i1, ..., id) = ((i1 * n + i2) * n + ...) * n + id.
// Indices are 0-based in the API; the JSON "sparse" form is 1-based.
class Tensor {
 public:
  Tensor(int order, int dim, FieldTag tag);
  Tensor(int order, int dim, FieldTag tag, std::vector<Scalar> entries);

  int order() const { return order_; }
  int dim() const { return dim_; }
  const FieldTag& field() const { return tag_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const Scalar> entries() const { return entries_; }

  const Scalar& operator[](std::size_t flat) const { return entries_[flat]; }
  const Scalar& at(std::span<const int> index) const { return entries_[flat_index(index)]; }
  const Scalar& at(std::initializer_list<int> index) const {
    return at(std::span<const int>(index.begin(), index.size()));
  }
  void set(std::span<const int> index, Scalar value);
  void set(std::initializer_list<int> index, Scalar value) {
    set(std::span<const int>(index.begin(), index.size()), std::move(value));
  }
  void set_flat(std::size_t flat, Scalar value);

  std::size_t flat_index(std::span<const int> index) const;
  std::vector<int> multi_index(std::size_t flat) const;

  bool is_zero() const;
  bool same_shape(const Tensor& other) const;

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor scaled(const Scalar& factor) const;

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend bool operator==(const Tensor& a, const Tensor& b);

 private:
  int order_;
  int dim_;
  FieldTag tag_;
  std::vector<Scalar> entries_;
};

// Relative tolerance for float symmetry checks: max orbit deviation must not
// exceed kSymmetryTolerance * (1 + max |entry|).
inline constexpr double kSymmetryTolerance = 1e-10;

bool is_symmetric(const Tensor& t);

// A tensor whose entries are invariant under every permutation of the indices.
class SymTensor {
 public:
  // Throws NotSymmetric when the invariant does not hold.
  explicit SymTensor(Tensor t);

  const Tensor& tensor() const { return tensor_; }
  operator const Tensor&() const { return tensor_; }

  int order() const { return tensor_.order(); }
  int dim() const { return tensor_.dim(); }
  const FieldTag& field() const { return tensor_.field(); }
  const Scalar& at(std::initializer_list<int> index) const { return tensor_.at(index); }

 private:
  Tensor tensor_;
};

Tensor rank_one(std::span<const Vector> factors);
SymTensor sym_power(const Vector& u, int order);

// Orbit average over all d! index permutations; needs d! invertible.
SymTensor symmetrize(const Tensor& t);

// <P, Q> = sum p * conj(q).
Scalar inner_product(const Tensor& p, const Tensor& q);
double frobenius_norm(const Tensor& t);

// Mode-wise action of an out_dim x n matrix (row-major) on every index:
// (m . T)_{a1..ad} = sum m_{a1 i1} ... m_{ad id} T_{i1..id}, so that
// m . (u1 (x) ... (x) ud) = (m u1) (x) ... (x) (m ud).
Tensor multilinear_action(const Tensor& t, std::span<const Scalar> matrix, int out_dim);
inline Tensor multilinear_action(const Tensor& t, std::span<const Scalar> matrix) {
  return multilinear_action(t, matrix, t.dim());
}

struct KruskalRank {
  int value = 0;
  bool minus_infinity = false;

  static KruskalRank negative_infinity() { return {0, true}; }
  friend bool operator==(const KruskalRank&, const KruskalRank&) = default;
};

struct KruskalCertificate {
  int r = 0;
  KruskalRank kranks[3];
  bool condition_met = false;
  bool unique = false;
  // Set for symmetric decompositions: all factors of every term are collinear.
  std::optional<bool> symmetric_spans;
};

struct RankOneTerm {
  Scalar coefficient;
  // d vectors for a general term, one vector for a symmetric term.
  std::vector<Vector> factors;
  bool symmetric = false;
  int order = 0;

  static RankOneTerm general(Scalar coefficient, std::vector<Vector> factors);
  static RankOneTerm power(Scalar coefficient, Vector u, int order);

  const Vector& factor(int mode) const { return symmetric ? factors.front() : factors.at(mode); }
  int dim() const { return static_cast<int>(factors.front().size()); }
  Tensor expand() const;
};

struct Decomposition {
  std::vector<RankOneTerm> terms;
  bool symmetric = false;
  std::optional<KruskalCertificate> certificate;

  std::size_t size() const { return terms.size(); }
};

Tensor reconstruct(const Decomposition& dec, int order, int dim, const FieldTag& tag);

}  // namespace trl
