#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "trl/multilinear.hpp"
#include "trl/tensor.hpp"

namespace trl {

// Shape limits for exhaustive search. Anything larger raises BudgetExceeded.
struct OracleBudget {
  int max_n = 3;
  int max_d = 4;
  int max_small_prime = 3;   // p <= this allows n <= max_n
  int max_n_large_prime = 2;  // n limit for larger p
  int max_prime = 7;
  long long candidate_cap = 5'000'000;
};

void check_oracle_budget(const FieldTag& tag, int d, int n, const OracleBudget& budget = {});

// Worker count: requested if > 0, else $TRL_THREADS, else hardware concurrency.
int oracle_threads(int requested = 0);

struct RankResult {
  int rank = 0;
  Decomposition witness;
};

RankResult brute_rank(const Tensor& t, const OracleBudget& budget = {});

// The exact rank when it is at most max_rank, nothing otherwise.
std::optional<RankResult> brute_rank_at_most(const Tensor& t, int max_rank, const OracleBudget& budget = {});

// Distinct minimal decompositions (as sets of rank-one terms), at most limit of them.
std::vector<Decomposition> minimal_decompositions(const Tensor& t, std::size_t limit,
                                                  const OracleBudget& budget = {});

struct SrankResult {
  std::variant<int, NotExpressible> value;
  std::optional<Decomposition> witness;

  bool expressible() const { return std::holds_alternative<int>(value); }
  int get() const { return std::get<int>(value); }
};

SrankResult brute_srank(const SymTensor& s, const OracleBudget& budget = {});

// NotExpressible, or the exact srank when it is at most max_k; nothing otherwise.
std::optional<SrankResult> brute_srank_at_most(const SymTensor& s, int max_k, const OracleBudget& budget = {});

// Enumeration of S^d GF(p)^n by code: the base-p digits of code are the entries
// at the sorted multi-indices, first orbit most significant.
long long symmetric_orbit_count(int d, int n);
long long symmetric_space_size(const FieldTag& tag, int d, int n);
SymTensor symmetric_from_code(const FieldTag& tag, int d, int n, long long code);

inline constexpr int kNotExpressibleKey = -1;

struct CensusOptions {
  OracleBudget budget;
  bool with_rank = true;
  int threads = 0;
  std::function<void(long long done, long long total)> progress;
};

struct CensusReport {
  FieldTag field = FieldTag::rational();
  int d = 0;
  int n = 0;
  long long total_symmetric = 0;
  long long expressible_nonzero = 0;
  long long not_expressible = 0;
  bool ranks_computed = false;
  // (rank, srank) -> count; srank kNotExpressibleKey for NotExpressible, rank -1
  // when ranks were not computed.
  std::map<std::pair<int, int>, long long> histogram;
};

CensusReport census(const FieldTag& tag, int d, int n, const CensusOptions& options = {});

enum class Theorem { kMaintheo, kEqcase, kRank2eq, kRank3symten, kRank3case };

std::string to_string(Theorem theorem);
Theorem parse_theorem(const std::string& text);

struct SweepOptions {
  long long samples = 0;  // 0 or >= space size: exhaustive
  std::uint64_t seed = 0;
  int threads = 0;
  OracleBudget budget;
  std::function<void(long long done, long long total)> progress;
};

struct SweepViolation {
  Tensor tensor;
  int rank_A = 0;
  std::optional<int> rank;
  std::optional<SrankResult> srank;
  std::string detail;
  std::vector<Decomposition> witnesses;
};

struct SweepReport {
  Theorem theorem = Theorem::kMaintheo;
  FieldTag field = FieldTag::rational();
  int d = 0;
  int n = 0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  bool precondition_met = true;
  std::string precondition_note;
  long long instances = 0;
  long long hypothesis_met = 0;
  long long conclusion_held = 0;
  long long chain_violations = 0;
  std::vector<SweepViolation> violations;
};

SweepReport theorem_sweep(Theorem theorem, const FieldTag& tag, int d, int n, const SweepOptions& options = {});

}  // namespace trl
