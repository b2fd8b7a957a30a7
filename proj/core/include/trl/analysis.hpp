#pragma once

#include <optional>

#include "trl/ff_oracle.hpp"
#include "trl/multilinear.hpp"
#include "trl/numeric_rank.hpp"

namespace trl {

struct AnalyzeOptions {
  std::optional<double> tol;
  OracleBudget budget;
  // A claimed decomposition to run through the Kruskal test.
  std::optional<Decomposition> certify;
};

struct Analysis {
  RankReport report;
  std::optional<PencilVerdict> pencil;
  std::optional<BorderForm> border;
};

// Everything the library can say about t at its size and field: the unfolding
// bound always, exhaustive rank/srank over finite fields within budget, the
// pencil test for 2x2x2 float tensors, border-rank-2 detection for symmetric
// float tensors, and a Kruskal certificate when a decomposition is given.
Analysis analyze_tensor(const Tensor& t, const AnalyzeOptions& options = {});

}  // namespace trl
