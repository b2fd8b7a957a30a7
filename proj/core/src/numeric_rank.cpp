#include "trl/numeric_rank.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "trl/error.hpp"
#include "trl/linalg.hpp"

namespace trl {

namespace {

using cd = std::complex<double>;
using CVec = std::vector<cd>;

struct Dense {
  int d = 0;
  int n = 0;
  CVec v;
};

FieldTag float_tag(const FieldTag& tag) {
  if (tag.is_finite()) fail(ErrorCode::kUnsupportedField, "numeric routines need a real or complex field");
  return tag.kind() == FieldKind::kComplexFloat ? FieldTag::complex_float() : FieldTag::real_float();
}

Dense dense(const Tensor& t) {
  float_tag(t.field());
  Dense out{t.order(), t.dim(), {}};
  out.v.reserve(t.size());
  for (const auto& e : t.entries()) out.v.push_back(e.to_complex());
  return out;
}

Scalar make_scalar(const FieldTag& tag, cd z) {
  return tag.kind() == FieldKind::kComplexFloat ? Scalar::complex(z) : Scalar::real(z.real());
}

Vector make_vector(const FieldTag& tag, const CVec& v) {
  Vector out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(make_scalar(tag, z));
  return out;
}

CVec to_cvec(const Vector& v) {
  CVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.to_complex());
  return out;
}

double norm(const CVec& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double dense_norm(const Dense& t) { return norm(t.v); }

// g_i = sum S_{.., i at mode, ..} prod_{k != mode} conj(x_k[i_k]).
CVec contract_except(const Dense& t, int mode, const std::vector<const CVec*>& xs) {
  CVec g(t.n, cd(0.0));
  std::vector<int> idx(t.d, 0);
  for (std::size_t flat = 0; flat < t.v.size(); ++flat) {
    std::size_t rest = flat;
    for (int k = t.d - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rest % t.n);
      rest /= t.n;
    }
    cd w = t.v[flat];
    if (w == cd(0.0)) continue;
    for (int k = 0; k < t.d; ++k) {
      if (k != mode) w *= std::conj((*xs[k])[idx[k]]);
    }
    g[idx[mode]] += w;
  }
  return g;
}

CVec contract_sym(const Dense& t, const CVec& u) {
  const std::vector<const CVec*> xs(t.d, &u);
  return contract_except(t, 0, xs);
}

cd dot(const CVec& g, const CVec& u) {
  cd s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * std::conj(u[i]);
  return s;
}

Dense outer(const std::vector<CVec>& xs, cd scale) {
  const int d = static_cast<int>(xs.size());
  const int n = static_cast<int>(xs.front().size());
  Dense out{d, n, {}};
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) total *= n;
  out.v.assign(total, scale);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int k = d - 1; k >= 0; --k) {
      out.v[flat] *= xs[k][rest % n];
      rest /= n;
    }
  }
  return out;
}

double distance(const Dense& a, const Dense& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) s += std::norm(a.v[i] - b.v[i]);
  return std::sqrt(s);
}

Eigen::MatrixXcd unfolding(const Dense& t) {
  const int cols = static_cast<int>(t.v.size() / t.n);
  Eigen::MatrixXcd a(t.n, cols);
  for (int i = 0; i < t.n; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = t.v[static_cast<std::size_t>(i) * cols + j];
  return a;
}

}  // namespace

PencilVerdict pencil_rank2_test(const SymTensor& s, double tol) {
  if (s.order() != 3 || s.dim() != 2) fail(ErrorCode::kWrongShape, "pencil test needs d = 3, n = 2");
  const Dense t = dense(s.tensor());
  {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(unfolding(t));
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0 || sv(1) <= kDefaultRankTolerance * sv(0)) {
      fail(ErrorCode::kSingularPencil, "rank A(S) < 2: no invertible slice combination");
    }
  }
  Eigen::Matrix2cd f, g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      f(i, j) = t.v[(i * 2 + j) * 2 + 0];
      g(i, j) = t.v[(i * 2 + j) * 2 + 1];
    }
  const double mixes[][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {1, 2}};
  PencilVerdict verdict;
  std::optional<Eigen::Matrix2cd> m;
  for (const auto& mix : mixes) {
    const Eigen::Matrix2cd fp = mix[0] * f + mix[1] * g;
    const Eigen::Matrix2cd gp = (mix[1] == 0) ? g : f;
    const double scale = fp.squaredNorm();
    if (scale == 0.0 || std::abs(fp.determinant()) <= 1e-12 * scale) continue;
    verdict.alpha = mix[0];
    verdict.beta = mix[1];
    m = gp * fp.inverse();
    break;
  }
  if (!m) fail(ErrorCode::kSingularPencil, "no invertible slice combination");

  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> eig(*m, false);
  const cd l1 = eig.eigenvalues()(0);
  const cd l2 = eig.eigenvalues()(1);
  const double scale = std::max({std::abs(l1), std::abs(l2), m->norm()});
  auto geometric = [&](cd lambda) {
    const Eigen::Matrix2cd shifted = *m - lambda * Eigen::Matrix2cd::Identity();
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(shifted);
    int rank = 0;
    for (int i = 0; i < 2; ++i) rank += svd.singularValues()(i) > tol * scale ? 1 : 0;
    return 2 - rank;
  };
  if (scale == 0.0 || std::abs(l1 - l2) <= tol * scale) {
    const cd lambda = 0.5 * (l1 + l2);
    verdict.eigenvalues = {lambda};
    verdict.algebraic_multiplicity = {2};
    verdict.geometric_multiplicity = {scale == 0.0 ? 2 : geometric(lambda)};
  } else {
    verdict.eigenvalues = {l1, l2};
    verdict.algebraic_multiplicity = {1, 1};
    verdict.geometric_multiplicity = {1, 1};
  }
  verdict.rank_le_2 = verdict.algebraic_multiplicity == verdict.geometric_multiplicity;
  return verdict;
}

Tensor border_tensor(const BorderForm& form) {
  const int d = form.order;
  std::vector<Vector> factors(d, form.x);
  Tensor out = rank_one(factors).scaled(form.a);
  for (int j = 0; j < d; ++j) {
    std::vector<Vector> f(d, form.x);
    f[j] = form.y;
    out += rank_one(f).scaled(form.b);
  }
  return out;
}

std::optional<BorderForm> detect_border_rank2(const SymTensor& s, double tol) {
  const FieldTag tag = float_tag(s.field());
  const Dense t = dense(s.tensor());
  const int d = t.d;
  const int n = t.n;
  const double total_norm = dense_norm(t);
  if (d < 3 || total_norm == 0.0) return std::nullopt;

  // Concision to the 2-dimensional column space of A(S).
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(unfolding(t), Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int m = 0;
  for (int i = 0; i < sv.size(); ++i) m += sv(i) > kDefaultRankTolerance * sv(0) ? 1 : 0;
  if (m != 2) return std::nullopt;
  Eigen::MatrixXcd u = svd.matrixU().leftCols(2);
  if (tag.kind() == FieldKind::kRealFloat) {
    // Keep the basis real: the column space of a real matrix has a real orthonormal basis.
    Eigen::JacobiSVD<Eigen::MatrixXd> rsvd(unfolding(t).real(), Eigen::ComputeFullU);
    u = rsvd.matrixU().leftCols(2).cast<cd>();
  }
  std::size_t reduced_size = 1;
  for (int k = 0; k < d; ++k) reduced_size *= 2;
  Dense r{d, 2, CVec(reduced_size, cd(0.0))};
  for (std::size_t a = 0; a < reduced_size; ++a) {
    std::vector<int> ai(d);
    std::size_t rest = a;
    for (int k = d - 1; k >= 0; --k) {
      ai[k] = static_cast<int>(rest % 2);
      rest /= 2;
    }
    cd sum = 0.0;
    for (std::size_t flat = 0; flat < t.v.size(); ++flat) {
      if (t.v[flat] == cd(0.0)) continue;
      std::size_t f = flat;
      cd w = t.v[flat];
      for (int k = d - 1; k >= 0; --k) {
        w *= std::conj(u(static_cast<int>(f % n), ai[k]));
        f /= n;
      }
      sum += w;
    }
    r.v[a] = sum;
  }

  // Span of the 2x2 slices S'(:, :, i3..id); its singular members give x.
  const int slices = static_cast<int>(reduced_size / 4);
  Eigen::MatrixXcd stack(4, slices);
  for (int c = 0; c < slices; ++c)
    for (int e = 0; e < 4; ++e) stack(e, c) = r.v[static_cast<std::size_t>(e) * slices + c];
  Eigen::JacobiSVD<Eigen::MatrixXcd> ssvd(stack, Eigen::ComputeFullU);
  auto reshape = [&](int col) {
    Eigen::Matrix2cd p;
    for (int e = 0; e < 4; ++e) p(e / 2, e % 2) = ssvd.matrixU()(e, col);
    return p;
  };
  Eigen::Matrix2cd p1 = reshape(0);
  Eigen::Matrix2cd p2 = slices > 1 ? reshape(1) : Eigen::Matrix2cd::Zero();
  if (tag.kind() == FieldKind::kRealFloat) {
    p1 = p1.real().cast<cd>();
    p2 = p2.real().cast<cd>();
  }
  const cd qa = p1.determinant();
  const cd qc = p2.determinant();
  const cd qb = (p1 + p2).determinant() - qa - qc;
  cd sc, tc;
  if (std::abs(qa) >= std::abs(qc)) {
    sc = -qb;
    tc = 2.0 * qa;
  } else {
    sc = 2.0 * qc;
    tc = -qb;
  }
  if (std::abs(sc) + std::abs(tc) == 0.0) return std::nullopt;
  const Eigen::Matrix2cd m0 = sc * p1 + tc * p2;
  const int col = m0.col(0).norm() >= m0.col(1).norm() ? 0 : 1;
  if (m0.col(col).norm() == 0.0) return std::nullopt;
  CVec x{m0(0, col), m0(1, col)};
  const double xn = norm(x);
  const int big = std::abs(x[0]) >= std::abs(x[1]) ? 0 : 1;
  const cd phase = std::conj(x[big]) / std::abs(x[big]);
  for (auto& z : x) z = z * phase / xn;
  if (tag.kind() == FieldKind::kRealFloat) {
    for (auto& z : x) z = cd(z.real(), 0.0);
  }
  const CVec y0{-std::conj(x[1]), std::conj(x[0])};

  // Least squares for S' ~ alpha x^d + beta W(x, y0).
  const Dense xd = outer(std::vector<CVec>(d, x), 1.0);
  Dense w{d, 2, CVec(reduced_size, cd(0.0))};
  for (int j = 0; j < d; ++j) {
    std::vector<CVec> f(d, x);
    f[j] = y0;
    const Dense term = outer(f, 1.0);
    for (std::size_t i = 0; i < reduced_size; ++i) w.v[i] += term.v[i];
  }
  Eigen::MatrixXcd design(reduced_size, 2);
  Eigen::VectorXcd rhs(reduced_size);
  for (std::size_t i = 0; i < reduced_size; ++i) {
    design(i, 0) = xd.v[i];
    design(i, 1) = w.v[i];
    rhs(i) = r.v[i];
  }
  const Eigen::VectorXcd coef = design.colPivHouseholderQr().solve(rhs);
  cd alpha = coef(0);
  cd beta = coef(1);
  if (tag.kind() == FieldKind::kRealFloat) {
    alpha = alpha.real();
    beta = beta.real();
  }
  if (std::abs(beta) <= tol * total_norm) return std::nullopt;

  CVec big_x(n), big_y(n);
  for (int i = 0; i < n; ++i) {
    big_x[i] = u(i, 0) * x[0] + u(i, 1) * x[1];
    big_y[i] = u(i, 0) * y0[0] + u(i, 1) * y0[1];
  }
  // Canonical representative: largest entry of x positive real, b > 0.
  {
    int top = 0;
    for (int i = 1; i < n; ++i) {
      if (std::abs(big_x[i]) > std::abs(big_x[top]) * (1.0 + 1e-12)) top = i;
    }
    const cd c = std::conj(big_x[top]) / std::abs(big_x[top]);
    alpha *= std::pow(std::conj(c), d);
    const cd yc = std::pow(std::conj(c), d - 1) * beta / std::abs(beta);
    beta = std::abs(beta);
    for (int i = 0; i < n; ++i) {
      big_x[i] *= c;
      big_y[i] *= yc;
    }
  }
  BorderForm form{make_vector(tag, big_x), make_vector(tag, big_y), make_scalar(tag, alpha), make_scalar(tag, beta), d};
  const Dense fit = dense(border_tensor(form));
  if (distance(fit, t) > tol * total_norm) return std::nullopt;
  return form;
}

EpsCurve eps_curve(const BorderForm& form) {
  if (form.b.is_zero()) fail(ErrorCode::kPreconditionFailed, "border form needs b != 0");
  return {form};
}

Decomposition eval_eps(const EpsCurve& curve, double eps) {
  const BorderForm& f = curve.form;
  const FieldTag tag = f.a.field();
  if (eps == 0.0) fail(ErrorCode::kBadEpsilon, "eps = 0");
  const cd a = f.a.to_complex();
  if (std::abs(1.0 / eps - a) <= 1e-12 * std::max(1.0, std::abs(a))) fail(ErrorCode::kBadEpsilon, "1/eps equals a");
  const Scalar e = make_scalar(tag, eps);
  const Scalar inv = make_scalar(tag, 1.0 / eps);
  Vector moved = f.x;
  for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += e * f.b * f.y[i];
  Decomposition dec;
  dec.symmetric = true;
  dec.terms.push_back(RankOneTerm::power(f.a - inv, f.x, f.order));
  dec.terms.push_back(RankOneTerm::power(inv, std::move(moved), f.order));
  return dec;
}

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

double eps_error_expansion(const EpsCurve& curve, double eps) {
  const BorderForm& f = curve.form;
  const double xn = norm(to_cvec(f.x));
  const double yn = norm(to_cvec(f.y));
  const double b = f.b.magnitude();
  const int d = f.order;
  double sum = 0.0;
  for (int k = 2; k <= d; ++k) {
    const double term = std::pow(std::abs(eps), k - 1) * std::pow(b, k) * std::pow(xn, d - k) * std::pow(yn, k);
    sum += binomial(d, k) * term * term;
  }
  return std::sqrt(sum);
}

double eps_error_bound(const EpsCurve& curve, double eps) {
  const BorderForm& f = curve.form;
  const double xn = norm(to_cvec(f.x));
  const double yn = norm(to_cvec(f.y));
  const double b = f.b.magnitude();
  const int d = f.order;
  double sum = 0.0;
  for (int k = 2; k <= d; ++k) {
    sum += binomial(d, k) * std::pow(std::abs(eps), k - 1) * std::pow(b, k) * std::pow(xn, d - k) * std::pow(yn, k);
  }
  return sum;
}

namespace {

constexpr int kMaxShiftDoublings = 60;

std::vector<CVec> make_starts(const Dense& t, const PowerOptions& options, bool complex) {
  std::vector<CVec> starts;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(unfolding(t), Eigen::ComputeThinU);
  CVec first(t.n);
  for (int i = 0; i < t.n; ++i) first[i] = complex ? svd.matrixU()(i, 0) : cd(svd.matrixU()(i, 0).real(), 0.0);
  if (norm(first) == 0.0) first[0] = 1.0;
  starts.push_back(first);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 1; k < std::max(1, options.restarts); ++k) {
    CVec v(t.n);
    for (auto& z : v) z = complex ? cd(normal(rng), normal(rng)) : cd(normal(rng), 0.0);
    starts.push_back(v);
  }
  for (auto& v : starts) {
    const double nv = norm(v);
    for (auto& z : v) z /= nv;
  }
  return starts;
}

double sym_objective(const Dense& t, const CVec& u, CVec* g_out = nullptr, cd* sigma_out = nullptr) {
  CVec g = contract_sym(t, u);
  const cd sigma = dot(g, u);
  if (g_out) *g_out = std::move(g);
  if (sigma_out) *sigma_out = sigma;
  return std::abs(sigma);
}

}  // namespace

SymRankOne best_sym_rank1(const SymTensor& s, const PowerOptions& options) {
  const FieldTag tag = float_tag(s.field());
  const bool complex = tag.kind() == FieldKind::kComplexFloat;
  const Dense t = dense(s.tensor());
  const double snorm = dense_norm(t);
  if (snorm == 0.0) fail(ErrorCode::kPreconditionFailed, "best rank-one approximation of the zero tensor");
  const double base_shift = std::max(1, t.d - 1) * snorm;

  SymRankOne result;
  std::optional<CVec> best_u;
  double best_obj = -1.0;
  const auto starts = make_starts(t, options, complex);
  for (std::size_t k = 0; k < starts.size(); ++k) {
    PowerStart rec;
    rec.index = static_cast<int>(k);
    CVec u = starts[k];
    CVec g;
    cd sigma;
    double obj = sym_objective(t, u, &g, &sigma);
    if (options.keep_trajectories) rec.trajectory.push_back(obj);
    double shift = 0.0;
    for (int it = 1; it <= options.max_iterations; ++it) {
      const cd phase = std::abs(sigma) > 0.0 ? std::conj(sigma) / std::abs(sigma) : cd(1.0);
      std::optional<CVec> accepted;
      double next_obj = obj;
      CVec next_g;
      cd next_sigma;
      for (int tries = 0; tries <= kMaxShiftDoublings; ++tries) {
        CVec w(t.n);
        for (int i = 0; i < t.n; ++i) w[i] = phase * g[i] + shift * u[i];
        const double wn = norm(w);
        if (wn > 0.0) {
          for (auto& z : w) z /= wn;
          CVec cand_g;
          cd cand_sigma;
          const double cand = sym_objective(t, w, &cand_g, &cand_sigma);
          if (cand >= obj) {
            accepted = std::move(w);
            next_obj = cand;
            next_g = std::move(cand_g);
            next_sigma = cand_sigma;
            break;
          }
        }
        shift = shift == 0.0 ? base_shift : 2.0 * shift;
      }
      rec.iterations = it;
      if (!accepted) {
        // No ascent direction at rounding level: stationary.
        rec.converged = true;
        break;
      }
      double delta = 0.0;
      for (int i = 0; i < t.n; ++i) delta += std::norm((*accepted)[i] - u[i]);
      delta = std::sqrt(delta);
      u = std::move(*accepted);
      g = std::move(next_g);
      sigma = next_sigma;
      obj = next_obj;
      if (options.keep_trajectories) rec.trajectory.push_back(obj);
      if (delta < options.tol) {
        rec.converged = true;
        break;
      }
    }
    rec.objective = obj;
    if (rec.converged && obj > best_obj) {
      best_obj = obj;
      best_u = u;
      result.best_start = rec.index;
    }
    result.starts.push_back(std::move(rec));
  }
  if (!best_u) fail(ErrorCode::kDidNotConverge, "every start of the symmetric power iteration hit the iteration cap");

  CVec u = *best_u;
  cd sigma = dot(contract_sym(t, u), u);
  if (complex) {
    const cd rot = std::polar(1.0, std::arg(sigma) / t.d);
    for (auto& z : u) z *= std::conj(rot);
  } else {
    if (t.d % 2 == 1 && sigma.real() < 0.0) {
      for (auto& z : u) z = -z;
    } else if (t.d % 2 == 0) {
      const auto big = std::max_element(u.begin(), u.end(), [](cd a, cd b) { return std::abs(a) < std::abs(b); });
      if (big->real() < 0.0)
        for (auto& z : u) z = -z;
    }
  }
  sigma = dot(contract_sym(t, u), u);
  if (!complex) sigma = sigma.real();
  result.sigma = make_scalar(tag, sigma);
  result.u = make_vector(tag, u);
  result.residual = distance(t, outer(std::vector<CVec>(t.d, u), sigma));
  return result;
}

RankOne best_rank1(const Tensor& tensor, const PowerOptions& options) {
  const FieldTag tag = float_tag(tensor.field());
  const bool complex = tag.kind() == FieldKind::kComplexFloat;
  const Dense t = dense(tensor);
  if (dense_norm(t) == 0.0) fail(ErrorCode::kPreconditionFailed, "best rank-one approximation of the zero tensor");
  const auto starts = make_starts(t, options, complex);
  double best_obj = -1.0;
  RankOne result;
  std::vector<CVec> best_x;
  for (const auto& start : starts) {
    std::vector<CVec> xs(t.d, start);
    bool converged = false;
    for (int it = 0; it < options.max_iterations; ++it) {
      double delta = 0.0;
      for (int j = 0; j < t.d; ++j) {
        std::vector<const CVec*> ptrs;
        for (const auto& x : xs) ptrs.push_back(&x);
        CVec g = contract_except(t, j, ptrs);
        const double gn = norm(g);
        if (gn == 0.0) continue;
        for (auto& z : g) z /= gn;
        for (int i = 0; i < t.n; ++i) delta += std::norm(g[i] - xs[j][i]);
        xs[j] = std::move(g);
      }
      if (std::sqrt(delta) < options.tol) {
        converged = true;
        break;
      }
    }
    std::vector<const CVec*> ptrs;
    for (const auto& x : xs) ptrs.push_back(&x);
    const double obj = std::abs(dot(contract_except(t, 0, ptrs), xs[0]));
    if (obj > best_obj) {
      best_obj = obj;
      best_x = xs;
      result.converged = converged;
    }
  }
  std::vector<const CVec*> ptrs;
  for (const auto& x : best_x) ptrs.push_back(&x);
  cd lambda = dot(contract_except(t, 0, ptrs), best_x[0]);
  if (!complex) lambda = lambda.real();
  result.lambda = make_scalar(tag, lambda);
  for (const auto& x : best_x) result.factors.push_back(make_vector(tag, x));
  result.residual = distance(t, outer(best_x, lambda));
  return result;
}

BanachReport banach_symmetry_check(const SymTensor& s, const PowerOptions& options, double tol) {
  BanachReport report;
  report.symmetric = best_sym_rank1(s, options);
  report.unconstrained = best_rank1(s.tensor(), options);
  report.symmetric_residual = report.symmetric.residual;
  report.unconstrained_residual = report.unconstrained.residual;
  report.difference = report.unconstrained_residual - report.symmetric_residual;
  report.holds = report.difference >= -tol;
  return report;
}

}  // namespace trl
