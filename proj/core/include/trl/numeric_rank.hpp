#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "trl/tensor.hpp"

namespace trl {

inline constexpr double kPencilTolerance = 1e-7;

struct PencilVerdict {
  bool rank_le_2 = false;
  // Slice mix (alpha, beta) used: F' = alpha F + beta G, G' = G for (1, 0) and F otherwise.
  double alpha = 1.0;
  double beta = 0.0;
  // Eigen-structure of G' F'^-1 after clustering.
  std::vector<std::complex<double>> eigenvalues;
  std::vector<int> algebraic_multiplicity;
  std::vector<int> geometric_multiplicity;
};

// rank S <= 2 iff G F^-1 is diagonalizable, for S in S^3 of a 2-dim space over
// the reals/complexes. Throws SingularPencil when rank A(S) < 2.
PencilVerdict pencil_rank2_test(const SymTensor& s, double tol = kPencilTolerance);

// S = a x^d + b sum_j x^j (x) y (x) x^(d-1-j).
struct BorderForm {
  Vector x;
  Vector y;
  Scalar a;
  Scalar b;
  int order = 0;
};

Tensor border_tensor(const BorderForm& form);

// The form when S matches it after concision to rank A(S) = 2, with residual
// <= tol ||S||.
std::optional<BorderForm> detect_border_rank2(const SymTensor& s, double tol = 1e-8);

struct EpsCurve {
  BorderForm form;
};

EpsCurve eps_curve(const BorderForm& form);

// T(eps) = (a - 1/eps) x^d + (1/eps) (x + eps b y)^d. Throws BadEpsilon when
// eps = 0 or 1/eps = a.
Decomposition eval_eps(const EpsCurve& curve, double eps);

// Norm of the binomial tail sum_{k>=2} eps^(k-1) b^k (terms with k copies of y);
// equals ||T(eps) - S|| when x and y are orthogonal.
double eps_error_expansion(const EpsCurve& curve, double eps);

// Triangle-inequality bound on ||T(eps) - S||.
double eps_error_bound(const EpsCurve& curve, double eps);

struct PowerStart {
  int index = 0;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;  // |<S, u^d>|
  std::vector<double> trajectory;
};

struct PowerOptions {
  int restarts = 16;
  std::uint64_t seed = 0;
  int max_iterations = 500;
  double tol = 1e-12;
  bool keep_trajectories = false;
};

struct SymRankOne {
  Scalar sigma;
  Vector u;  // unit norm
  double residual = 0.0;
  int best_start = 0;
  std::vector<PowerStart> starts;
};

// Best symmetric rank-one approximation sigma u^d by shifted symmetric power
// iteration from several starts. Throws DidNotConverge when every start hits
// the iteration cap.
SymRankOne best_sym_rank1(const SymTensor& s, const PowerOptions& options = {});

struct RankOne {
  Scalar lambda;
  std::vector<Vector> factors;
  double residual = 0.0;
  bool converged = false;
};

// Unconstrained rank-one approximation by alternating per-mode updates from
// the same starts as best_sym_rank1.
RankOne best_rank1(const Tensor& t, const PowerOptions& options = {});

struct BanachReport {
  double symmetric_residual = 0.0;
  double unconstrained_residual = 0.0;
  // unconstrained - symmetric; Banach's theorem predicts >= -tol.
  double difference = 0.0;
  bool holds = false;
  SymRankOne symmetric;
  RankOne unconstrained;
};

BanachReport banach_symmetry_check(const SymTensor& s, const PowerOptions& options = {}, double tol = 1e-8);

}  // namespace trl
