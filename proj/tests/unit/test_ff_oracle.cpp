#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "oracles.hpp"
#include "trl/error.hpp"
#include "trl/ff_oracle.hpp"
#include "trl/generators.hpp"

using namespace trl;

namespace {

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

}  // namespace

TEST_CASE("rank examples") {
  CHECK(brute_rank(Tensor(3, 2, kGF3)).rank == 0);
  CHECK(brute_rank(z2_counterexample()).rank == 2);
  const auto w = brute_rank(w_tensor(FieldTag::finite(5)).tensor());
  CHECK(w.rank == 3);
  CHECK(reconstruct(w.witness, 3, 2, FieldTag::finite(5)) == w_tensor(FieldTag::finite(5)).tensor());
}

TEST_CASE("srank examples") {
  const auto z2 = brute_srank(SymTensor(z2_counterexample()));
  CHECK(z2.get() == 3);
  REQUIRE(z2.witness);
  CHECK(reconstruct(*z2.witness, 2, 2, kGF2) == z2_counterexample());
  CHECK(brute_srank(sym_power(make_vector(kGF3, {1, 2}), 3)).get() == 1);
  int inexpressible = 0;
  for (long long code = 0; code < 16; ++code) {
    if (!brute_srank(symmetric_from_code(kGF2, 3, 2, code)).expressible()) ++inexpressible;
  }
  CHECK(inexpressible == 8);
}

TEST_CASE("exhaustive rank and srank match BFS over the whole space") {
  struct Shape {
    int p, d, n;
  };
  for (const Shape sh : {Shape{2, 2, 2}, Shape{2, 3, 2}, Shape{3, 2, 2}, Shape{3, 3, 2}, Shape{2, 2, 3}}) {
    const auto tag = FieldTag::finite(sh.p);
    const auto ranks = oracle::all_ranks(sh.p, sh.d, sh.n);
    const auto sranks = oracle::all_sranks(sh.p, sh.d, sh.n);
    for (long long code = 0; code < symmetric_space_size(tag, sh.d, sh.n); ++code) {
      const SymTensor s = symmetric_from_code(tag, sh.d, sh.n, code);
      const long long key = oracle::encode(oracle::residues(s.tensor()), sh.p);
      const auto r = brute_rank(s.tensor());
      CHECK(r.rank == ranks[key]);
      CHECK(reconstruct(r.witness, sh.d, sh.n, tag) == s.tensor());
      const auto sr = brute_srank(s);
      if (sranks[key] < 0) {
        CHECK_FALSE(sr.expressible());
      } else {
        REQUIRE(sr.expressible());
        CHECK(sr.get() == sranks[key]);
        CHECK(sr.get() >= r.rank);
        CHECK(reconstruct(*sr.witness, sh.d, sh.n, tag) == s.tensor());
      }
    }
  }
}

TEST_CASE("non-symmetric rank over GF(2)^(2x2x2) matches BFS") {
  const auto ranks = oracle::all_ranks(2, 3, 2);
  for (long long code = 0; code < 256; ++code) {
    const auto entries = oracle::decode(code, 2, 8);
    std::vector<Scalar> data;
    for (int e : entries) data.push_back(Scalar::from_int(kGF2, e));
    const Tensor t(3, 2, kGF2, data);
    CHECK(brute_rank(t).rank == ranks[code]);
  }
}

TEST_CASE("bounded searches") {
  const Tensor w = w_tensor(kGF3).tensor();
  CHECK_FALSE(brute_rank_at_most(w, 2).has_value());
  CHECK(brute_rank_at_most(w, 3)->rank == 3);
  CHECK_FALSE(brute_srank_at_most(w_tensor(kGF3), 2).has_value());
  const auto inexpressible = brute_srank_at_most(symmetric_from_code(kGF2, 3, 2, 2), 1);
  // Whatever code 2 is, the bounded answer must agree with the full one.
  const auto full = brute_srank(symmetric_from_code(kGF2, 3, 2, 2));
  if (!full.expressible()) {
    REQUIRE(inexpressible);
    CHECK_FALSE(inexpressible->expressible());
  } else if (full.get() <= 1) {
    CHECK(inexpressible->get() == full.get());
  } else {
    CHECK_FALSE(inexpressible.has_value());
  }
}

TEST_CASE("minimal decompositions") {
  Tensor t(3, 2, kGF3);
  t.set({0, 0, 0}, Scalar::one(kGF3));
  t.set({1, 1, 1}, Scalar::one(kGF3));
  const auto all = minimal_decompositions(t, 10);
  REQUIRE(all.size() == 1);
  CHECK(all[0].terms.size() == 2);
  // W has several minimal decompositions.
  CHECK(minimal_decompositions(w_tensor(kGF3).tensor(), 10).size() > 1);
}

TEST_CASE("census") {
  const auto gf2 = census(kGF2, 3, 2);
  CHECK(gf2.total_symmetric == 16);
  CHECK(gf2.expressible_nonzero == 7);
  CHECK(gf2.not_expressible == 8);

  const auto gf3 = census(kGF3, 3, 2);
  CHECK(gf3.total_symmetric == 81);
  CHECK(gf3.expressible_nonzero == 80);
  long long sum = 0;
  for (const auto& [key, count] : gf3.histogram) sum += count;
  CHECK(sum == 81);

  const auto matrices = census(kGF2, 2, 2);
  CHECK(matrices.total_symmetric == 8);
  CHECK(matrices.histogram.count({2, 3}) == 1);

  CensusOptions quick;
  quick.with_rank = false;
  const auto no_rank = census(kGF2, 3, 2, quick);
  CHECK_FALSE(no_rank.ranks_computed);
  CHECK(no_rank.expressible_nonzero == 7);
}

TEST_CASE("budget and field errors") {
  CHECK(code_of([] { brute_rank(Tensor(3, 2, FieldTag::rational())); }) == ErrorCode::kUnsupportedField);
  CHECK(code_of([] { check_oracle_budget(FieldTag::finite(11), 3, 2); }) == ErrorCode::kBudgetExceeded);
  CHECK(code_of([] { check_oracle_budget(FieldTag::finite(5), 3, 3); }) == ErrorCode::kBudgetExceeded);
  CHECK(code_of([] { check_oracle_budget(kGF3, 5, 2); }) == ErrorCode::kBudgetExceeded);
  CHECK(code_of([] { check_oracle_budget(kGF3, 3, 4); }) == ErrorCode::kBudgetExceeded);
  check_oracle_budget(kGF3, 3, 3);
  OracleBudget tiny;
  tiny.candidate_cap = 10;
  CHECK(code_of([&] { brute_rank(random_symmetric(kGF3, 3, 3, 1).tensor(), tiny); }) == ErrorCode::kBudgetExceeded);
}

TEST_CASE("thread count") {
  CHECK(oracle_threads(3) == 3);
  setenv("TRL_THREADS", "2", 1);
  CHECK(oracle_threads() == 2);
  unsetenv("TRL_THREADS");
  CHECK(oracle_threads() >= 1);
}

TEST_CASE("theorem names") {
  for (auto t : {Theorem::kMaintheo, Theorem::kEqcase, Theorem::kRank2eq, Theorem::kRank3symten, Theorem::kRank3case}) {
    CHECK(parse_theorem(to_string(t)) == t);
  }
  CHECK(code_of([] { parse_theorem("nope"); }) == ErrorCode::kParseError);
}

TEST_CASE("sweeps") {
  SweepOptions sample;
  sample.samples = 10000;
  sample.seed = 3;
  const auto rank2 = theorem_sweep(Theorem::kRank2eq, kGF3, 3, 3, sample);
  CHECK(rank2.instances == 10000);
  CHECK_FALSE(rank2.exhaustive);
  CHECK(rank2.seed == 3);
  CHECK(rank2.violations.empty());
  CHECK(rank2.chain_violations == 0);

  const auto gated = theorem_sweep(Theorem::kMaintheo, kGF2, 3, 2);
  CHECK_FALSE(gated.precondition_met);
  CHECK_FALSE(gated.precondition_note.empty());
  CHECK(gated.violations.empty());

  const auto five = theorem_sweep(Theorem::kMaintheo, FieldTag::finite(5), 3, 2);
  CHECK(five.exhaustive);
  CHECK(five.instances == 625);
  CHECK(five.violations.empty());

  const auto again = theorem_sweep(Theorem::kRank2eq, kGF3, 3, 3, sample);
  CHECK(again.hypothesis_met == rank2.hypothesis_met);
  CHECK(again.conclusion_held == rank2.conclusion_held);

  SweepOptions threaded = sample;
  threaded.threads = 3;
  const auto parallel = theorem_sweep(Theorem::kRank2eq, kGF3, 3, 3, threaded);
  CHECK(parallel.hypothesis_met == rank2.hypothesis_met);
}

TEST_CASE("rank3 sweeps over GF(5)") {
  const auto sym = theorem_sweep(Theorem::kRank3symten, FieldTag::finite(5), 3, 2);
  CHECK(sym.violations.empty());
  const auto cases = theorem_sweep(Theorem::kRank3case, FieldTag::finite(5), 3, 2);
  CHECK(cases.violations.empty());
  const auto eq = theorem_sweep(Theorem::kEqcase, FieldTag::finite(5), 3, 2);
  CHECK(eq.violations.empty());
}
