#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "trl/linalg.hpp"
#include "trl/tensor.hpp"

namespace trl {

// n x n^(d-1) flattening: row alpha, column flat(beta_1..beta_{d-1}) taken
// row-major over the remaining indices in their natural order.
struct UnfoldedMatrix {
  Matrix matrix;
  int order;
  int dim;
  int mode;
};

UnfoldedMatrix unfold(const Tensor& t, int mode = 0);

// rank A(T) with the float tolerance convention of matrix_rank.
int unfolding_rank(const Tensor& t, std::optional<double> tol = std::nullopt);

// Largest k such that every k of the vectors are linearly independent; minus
// infinity when any vector is zero.
KruskalRank kruskal_rank(std::span<const Vector> vectors, std::optional<double> tol = std::nullopt);

struct ConciseForm {
  SymTensor reduced;  // S' in S^d F^m
  Matrix basis;       // n x m; basis . S' = S
  int rank;           // m = rank A(S)
};

ConciseForm concise_reduce(const SymTensor& s, std::optional<double> tol = std::nullopt);

// Kruskal's condition on the grouping (mode 1, mode 2, modes 3..d).
KruskalCertificate kruskal_certify(const Decomposition& dec, int order, std::optional<double> tol = std::nullopt);

enum class StructureOutcome { kAllIndependent, kOneCollinearPair, kOutsideDichotomy };

struct StructureCheck {
  StructureOutcome outcome;
  int first = 0;   // 1-based indices of the collinear pair
  int second = 0;
  int span_rank = 0;
};

// Classifies n+1 rank-one d-tensors whose factor families each span F^n.
StructureCheck lemma6_structure_check(std::span<const RankOneTerm> terms);

// binom(n+d-1, d) / n.
Rational k_generic(int n, int d);

struct MuValue {
  enum class Kind { kExact, kUpperBound, kUnknown };
  Kind kind = Kind::kUnknown;
  int value = 0;
};

// Known maximal symmetric rank in S^d C^n.
MuValue mu_max_srank(int d, int n);

enum class RankMethod { kCertified, kExhaustive, kPencil, kBound };

std::string to_string(RankMethod method);

struct NotExpressible {
  friend bool operator==(NotExpressible, NotExpressible) { return true; }
};

struct RankFinding {
  int value = 0;
  RankMethod method = RankMethod::kExhaustive;
  // A lower bound only (e.g. the pencil shows rank > 2).
  bool lower_bound = false;
};

struct SrankFinding {
  std::variant<int, NotExpressible> value;
  RankMethod method = RankMethod::kExhaustive;
};

struct RankReport {
  int order = 0;
  int dim = 0;
  FieldTag field = FieldTag::rational();
  int rank_A = 0;
  bool rank_A_tolerance_based = false;
  std::optional<RankFinding> rank;
  std::optional<SrankFinding> srank;
  std::optional<RankFinding> brank;
  std::vector<Decomposition> witnesses;
  std::optional<KruskalCertificate> certificate;
  std::vector<std::string> notes;
};

// rank_A <= rank <= srank wherever all present and exact.
bool inequality_chain_holds(const RankReport& report);

}  // namespace trl
