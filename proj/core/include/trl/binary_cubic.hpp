#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trl/linalg.hpp"
#include "trl/tensor.hpp"

namespace trl {

// One step of the case analysis. Terminal steps carry no substitution.
struct CaseStep {
  std::string label;
  std::optional<Matrix> substitution;
};

// Labels: "zero", "rank1", "rank2" (short-circuits), "1", "2", "swap", "3a",
// "3a-search", "3a-basis", "3bi", "3bii", "3biii".
struct CaseTrace {
  std::vector<CaseStep> steps;

  std::vector<std::string> labels() const;
};

struct BinaryCubicResult {
  Decomposition decomposition;
  CaseTrace trace;
};

// Vector action u -> m u on every mode: apply_substitution(u^(x)d, m) =
// (m u)^(x)d. Throws SingularSubstitution when m is not invertible.
SymTensor apply_substitution(const SymTensor& s, const Matrix& m);

// Symmetric decomposition of a binary cubic (d = 3, n = 2) over GF(p), p >= 3,
// or the rationals. Throws WrongShape, UnsupportedField.
BinaryCubicResult decompose_s3f2(const SymTensor& s);

}  // namespace trl
