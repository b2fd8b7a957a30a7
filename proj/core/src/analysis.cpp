#include "trl/analysis.hpp"

#include "trl/error.hpp"

namespace trl {

namespace {

bool is_zero_tensor(const Tensor& t, double tol) {
  for (const auto& e : t.entries()) {
    if (t.field().is_exact() ? !e.is_zero() : e.magnitude() > tol) return false;
  }
  return true;
}

void exact_finite(const Tensor& t, bool symmetric, const AnalyzeOptions& options, Analysis& out) {
  auto& report = out.report;
  check_oracle_budget(t.field(), t.order(), t.dim(), options.budget);
  RankResult rank = brute_rank(t, options.budget);
  report.rank = RankFinding{rank.rank, RankMethod::kExhaustive, false};
  report.witnesses.push_back(rank.witness);
  if (!symmetric) return;
  SrankResult srank = brute_srank(SymTensor(t), options.budget);
  report.srank = SrankFinding{srank.value, RankMethod::kExhaustive};
  if (srank.witness) report.witnesses.push_back(*srank.witness);
  if (!srank.expressible()) report.notes.push_back("no symmetric decomposition exists over this field");
}

void float_pencil(const Tensor& t, double tol, Analysis& out) {
  auto& report = out.report;
  try {
    PencilVerdict verdict = pencil_rank2_test(SymTensor(t), tol);
    if (verdict.rank_le_2) {
      report.rank = RankFinding{2, RankMethod::kPencil, false};
      report.srank = SrankFinding{2, RankMethod::kPencil};
      report.notes.push_back("pencil diagonalizable: rank <= 2");
    } else {
      report.rank = RankFinding{3, RankMethod::kPencil, true};
      report.notes.push_back("pencil not diagonalizable: rank > 2");
    }
    out.pencil = std::move(verdict);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularPencil) throw;
    report.notes.push_back("pencil test skipped: rank_A < 2");
  }
}

}  // namespace

Analysis analyze_tensor(const Tensor& t, const AnalyzeOptions& options) {
  Analysis out;
  auto& report = out.report;
  const FieldTag& tag = t.field();
  const double tol = options.tol.value_or(1e-10);
  report.order = t.order();
  report.dim = t.dim();
  report.field = tag;
  report.rank_A_tolerance_based = tag.is_float();
  report.rank_A = unfolding_rank(t, tag.is_float() ? std::optional<double>(tol * std::max(1.0, frobenius_norm(t)))
                                                   : std::nullopt);
  const bool symmetric = is_symmetric(t);

  if (options.certify) {
    KruskalCertificate cert = kruskal_certify(*options.certify, t.order(), options.tol);
    const Tensor rebuilt = reconstruct(*options.certify, t.order(), t.dim(), tag);
    bool matches = true;
    if (tag.is_exact()) {
      matches = rebuilt == t;
    } else {
      Tensor diff = rebuilt;
      for (std::size_t i = 0; i < diff.size(); ++i) diff.set_flat(i, rebuilt[i] - t[i]);
      matches = frobenius_norm(diff) <= tol * std::max(1.0, frobenius_norm(t));
    }
    if (!matches) {
      report.notes.push_back("supplied decomposition does not reconstruct the tensor");
    } else if (cert.condition_met) {
      report.rank = RankFinding{cert.r, RankMethod::kCertified, false};
      if (symmetric && options.certify->symmetric) report.srank = SrankFinding{cert.r, RankMethod::kCertified};
      report.witnesses.push_back(*options.certify);
    } else {
      report.notes.push_back("Kruskal condition not met; rank not certified");
    }
    report.certificate = std::move(cert);
  }

  if (is_zero_tensor(t, tol)) {
    report.rank = RankFinding{0, RankMethod::kExhaustive, false};
    report.brank = RankFinding{0, RankMethod::kExhaustive, false};
    if (symmetric) report.srank = SrankFinding{0, RankMethod::kExhaustive};
    return out;
  }

  if (tag.is_finite()) {
    exact_finite(t, symmetric, options, out);
  } else if ((symmetric || t.order() == 2) && report.rank_A <= 1) {
    report.rank = RankFinding{1, RankMethod::kExhaustive, false};
    if (symmetric) report.srank = SrankFinding{1, RankMethod::kExhaustive};
  } else if (t.order() == 2) {
    report.rank = RankFinding{report.rank_A, RankMethod::kExhaustive, false};
  } else if (tag.is_float() && symmetric && t.order() == 3 && t.dim() == 2 && !report.rank) {
    float_pencil(t, options.tol.value_or(kPencilTolerance), out);
  }

  if (tag.is_float() && symmetric && t.order() >= 3 && report.rank_A == 2) {
    if (auto form = detect_border_rank2(SymTensor(t), std::max(tol, 1e-8))) {
      out.border = std::move(form);
      report.brank = RankFinding{2, RankMethod::kCertified, false};
      report.notes.push_back("border-rank-2 normal form found");
    }
  }
  if (report.rank && !report.rank->lower_bound && report.rank->value <= 1) {
    report.brank = report.rank;
  }
  return out;
}

}  // namespace trl
