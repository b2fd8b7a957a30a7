#include "trl/ff_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "trl/error.hpp"

namespace trl {

namespace {

using Vec = std::vector<std::uint8_t>;

class Field {
 public:
  explicit Field(int p) : p_(p), inv_(p, 0) {
    for (int a = 1; a < p; ++a)
      for (int b = 1; b < p; ++b)
        if (a * b % p == 1) inv_[a] = static_cast<std::uint8_t>(b);
  }

  int p() const { return p_; }
  std::uint8_t add(int a, int b) const { return static_cast<std::uint8_t>((a + b) % p_); }
  std::uint8_t sub(int a, int b) const { return static_cast<std::uint8_t>((a + p_ - b) % p_); }
  std::uint8_t mul(int a, int b) const { return static_cast<std::uint8_t>(a * b % p_); }
  std::uint8_t inv(int a) const { return inv_[a]; }

  void normalize(Vec& v) const {
    for (auto x : v) {
      if (x == 0) continue;
      const int s = inv_[x];
      for (auto& y : v) y = mul(y, s);
      return;
    }
  }

 private:
  int p_;
  std::vector<std::uint8_t> inv_;
};

bool all_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; });
}

// Semi-echelon basis: each row is zero before its pivot and has a 1 there.
class Echelon {
 public:
  Echelon(const Field& f, int len) : f_(&f), len_(len) {}

  int dim() const { return static_cast<int>(rows_.size()); }

  void reduce(Vec& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const int c = v[pivots_[i]];
      if (c == 0) continue;
      const Vec& row = rows_[i];
      for (int k = pivots_[i]; k < len_; ++k) {
        if (row[k] != 0) v[k] = f_->sub(v[k], f_->mul(c, row[k]));
      }
    }
  }

  bool contains(Vec v) const {
    reduce(v);
    return all_zero(v);
  }

  bool insert(Vec v) {
    reduce(v);
    int pivot = 0;
    while (pivot < len_ && v[pivot] == 0) ++pivot;
    if (pivot == len_) return false;
    const int s = f_->inv(v[pivot]);
    for (int k = pivot; k < len_; ++k) v[k] = f_->mul(v[k], s);
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

  // Reduced row echelon form, serialized; equal keys iff equal spans.
  std::string key() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    std::vector<Vec> rref;
    std::vector<int> piv;
    for (auto i : order) {
      rref.push_back(rows_[i]);
      piv.push_back(pivots_[i]);
    }
    for (std::size_t i = rref.size(); i-- > 0;) {
      for (std::size_t j = 0; j < i; ++j) {
        const int c = rref[j][piv[i]];
        if (c == 0) continue;
        for (int k = piv[i]; k < len_; ++k) rref[j][k] = f_->sub(rref[j][k], f_->mul(c, rref[i][k]));
      }
    }
    std::string out;
    for (const auto& row : rref) out.append(row.begin(), row.end());
    return out;
  }

 private:
  const Field* f_;
  int len_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

// Coordinates of each target in the (independent) basis, or nothing.
std::optional<std::vector<Vec>> coordinates(const Field& f, int len, const std::vector<Vec>& basis,
                                            const std::vector<Vec>& targets) {
  const int r = static_cast<int>(basis.size());
  const int m = static_cast<int>(targets.size());
  std::vector<Vec> a(len, Vec(r + m, 0));
  for (int i = 0; i < len; ++i) {
    for (int j = 0; j < r; ++j) a[i][j] = basis[j][i];
    for (int j = 0; j < m; ++j) a[i][r + j] = targets[j][i];
  }
  int row = 0;
  for (int col = 0; col < r; ++col) {
    int pivot = row;
    while (pivot < len && a[pivot][col] == 0) ++pivot;
    if (pivot == len) return std::nullopt;
    std::swap(a[pivot], a[row]);
    const int s = f.inv(a[row][col]);
    for (auto& x : a[row]) x = f.mul(x, s);
    for (int i = 0; i < len; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const int c = a[i][col];
      for (int k = 0; k < r + m; ++k) a[i][k] = f.sub(a[i][k], f.mul(c, a[row][k]));
    }
    ++row;
  }
  for (int i = row; i < len; ++i)
    for (int j = 0; j < m; ++j)
      if (a[i][r + j] != 0) return std::nullopt;
  std::vector<Vec> out(m, Vec(r, 0));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < r; ++i) out[j][i] = a[i][r + j];
  return out;
}

class Counter {
 public:
  explicit Counter(long long cap) : cap_(cap) {}
  void tick() {
    if (++used_ > cap_) {
      fail(ErrorCode::kBudgetExceeded, "exhaustive search exceeded " + std::to_string(cap_) + " candidates");
    }
  }

 private:
  long long cap_;
  long long used_ = 0;
};

long long ipow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// Projective points of GF(p)^n (first nonzero coordinate 1), lexicographic.
std::vector<Vec> projective_points(int p, int n) {
  std::vector<Vec> out;
  const long long total = ipow(p, n);
  for (long long code = 1; code < total; ++code) {
    Vec v(n);
    long long rest = code;
    for (int k = n - 1; k >= 0; --k) {
      v[k] = static_cast<std::uint8_t>(rest % p);
      rest /= p;
    }
    const auto first = std::find_if(v.begin(), v.end(), [](std::uint8_t x) { return x != 0; });
    if (*first == 1) out.push_back(std::move(v));
  }
  return out;
}

// Projective rank-one tensors of order k on GF(p)^n.
struct Catalog {
  std::vector<Vec> points;
  std::vector<Vec> tensors;
  std::vector<std::vector<int>> tuples;
};

const Catalog& rank_one_catalog(int p, int n, int k) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<Catalog>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{p, n, k}];
  if (slot) return *slot;
  auto cat = std::make_unique<Catalog>();
  cat->points = projective_points(p, n);
  const int q = static_cast<int>(cat->points.size());
  const long long count = ipow(q, k);
  const long long len = ipow(n, k);
  const Field f(p);
  for (long long code = 0; code < count; ++code) {
    std::vector<int> tuple(k);
    long long rest = code;
    for (int m = k - 1; m >= 0; --m) {
      tuple[m] = static_cast<int>(rest % q);
      rest /= q;
    }
    Vec t(len);
    for (long long flat = 0; flat < len; ++flat) {
      long long idx = flat;
      int value = 1;
      for (int m = k - 1; m >= 0; --m) {
        value = f.mul(value, cat->points[tuple[m]][idx % n]);
        idx /= n;
      }
      t[flat] = static_cast<std::uint8_t>(value);
    }
    cat->tensors.push_back(std::move(t));
    cat->tuples.push_back(std::move(tuple));
  }
  slot = std::move(cat);
  return *slot;
}

Vec residues(const Tensor& t) {
  Vec out;
  out.reserve(t.size());
  for (const auto& e : t.entries()) out.push_back(static_cast<std::uint8_t>(e.residue_value()));
  return out;
}

Vector to_vector(const Vec& v, const FieldTag& tag) {
  Vector out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(Scalar::from_int(tag, x));
  return out;
}

// Rank search: rank T = min dim W over subspaces W that contain the span V of
// the last-mode slices and are spanned by the rank-one (d-1)-tensors in W.
// W = V + U is enumerated through the image of U in F^L / V, where rank-one
// tensors fall into projective classes.
class RankSearch {
 public:
  RankSearch(const Tensor& t, const OracleBudget& budget)
      : tag_(t.field()),
        f_(t.field().prime()),
        n_(t.dim()),
        d_(t.order()),
        len_(static_cast<int>(ipow(t.dim(), t.order() - 1))),
        target_(residues(t)),
        v_(f_, len_),
        cat_(rank_one_catalog(t.field().prime(), t.dim(), t.order() - 1)),
        counter_(budget.candidate_cap) {
    for (int c = 0; c < n_; ++c) {
      Vec slice(len_);
      for (int i = 0; i < len_; ++i) slice[i] = target_[static_cast<std::size_t>(i) * n_ + c];
      v_.insert(slice);
      slices_.push_back(std::move(slice));
    }
    std::unordered_map<std::string, int> class_ids;
    class_members_.emplace_back();
    class_reps_.emplace_back(len_, 0);
    for (std::size_t i = 0; i < cat_.tensors.size(); ++i) {
      Vec r = cat_.tensors[i];
      v_.reduce(r);
      if (all_zero(r)) {
        class_members_[0].push_back(static_cast<int>(i));
        continue;
      }
      f_.normalize(r);
      std::string key(r.begin(), r.end());
      auto [it, inserted] = class_ids.emplace(key, static_cast<int>(class_reps_.size()));
      if (inserted) {
        class_reps_.push_back(std::move(r));
        class_members_.emplace_back();
      }
      class_members_[it->second].push_back(static_cast<int>(i));
    }
  }

  int slice_span() const { return v_.dim(); }

  // Member lists of every minimal W of dimension <= max_rank; empty if none.
  // With all == false the first one found is returned.
  std::vector<std::vector<int>> find(int max_rank, bool all) {
    const int v = v_.dim();
    for (int j = 0; v + j <= std::min(max_rank, len_); ++j) {
      std::vector<std::vector<int>> found;
      if (j == 0) {
        if (spans(class_members_[0], v)) found.push_back(class_members_[0]);
      } else {
        std::set<std::string> seen;
        bool stop = false;
        Echelon q(f_, len_);
        dfs(1, q, 0, j, all, seen, found, stop);
      }
      if (!found.empty()) return found;
    }
    return {};
  }

  // One basis (indices of rank-ones) inside a member list.
  std::vector<int> some_basis(const std::vector<int>& members, int dim) const {
    Echelon e(f_, len_);
    std::vector<int> basis;
    for (int i : members) {
      if (e.insert(cat_.tensors[i])) basis.push_back(i);
      if (static_cast<int>(basis.size()) == dim) break;
    }
    return basis;
  }

  // Every basis of W made of rank-ones from members.
  void all_bases(const std::vector<int>& members, int dim, std::size_t limit,
                 std::vector<std::vector<int>>& out) {
    std::vector<int> chosen;
    Echelon e(f_, len_);
    bases_dfs(members, 0, e, dim, chosen, limit, out);
  }

  Decomposition decomposition(const std::vector<int>& basis) const {
    std::vector<Vec> vectors;
    for (int i : basis) vectors.push_back(cat_.tensors[i]);
    const auto coords = coordinates(f_, len_, vectors, slices_);
    if (!coords) fail(ErrorCode::kInternal, "slices outside the rank-one span");
    Decomposition dec;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<Vector> factors;
      for (int m : cat_.tuples[basis[i]]) factors.push_back(to_vector(cat_.points[m], tag_));
      Vec last(n_);
      for (int c = 0; c < n_; ++c) last[c] = (*coords)[c][i];
      factors.push_back(to_vector(last, tag_));
      dec.terms.push_back(RankOneTerm::general(Scalar::one(tag_), std::move(factors)));
    }
    return dec;
  }

  // Identifies a decomposition by its set of rank-one terms.
  std::string term_set_key(const std::vector<int>& basis) const {
    std::vector<Vec> vectors;
    for (int i : basis) vectors.push_back(cat_.tensors[i]);
    const auto coords = coordinates(f_, len_, vectors, slices_);
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::string key;
      for (int a = 0; a < len_; ++a)
        for (int c = 0; c < n_; ++c) key.push_back(static_cast<char>(f_.mul(cat_.tensors[basis[i]][a], (*coords)[c][i])));
      keys.push_back(std::move(key));
    }
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (const auto& k : keys) out += k + '|';
    return out;
  }

 private:
  bool spans(const std::vector<int>& members, int dim) {
    Echelon e(f_, len_);
    for (int i : members) {
      e.insert(cat_.tensors[i]);
      if (e.dim() == dim) return true;
    }
    return e.dim() == dim;
  }

  void dfs(int next, const Echelon& q, int depth, int j, bool all, std::set<std::string>& seen,
           std::vector<std::vector<int>>& found, bool& stop) {
    if (depth == j) {
      if (!seen.insert(q.key()).second) return;
      counter_.tick();
      std::vector<int> members = class_members_[0];
      for (std::size_t c = 1; c < class_reps_.size(); ++c) {
        if (q.contains(class_reps_[c])) members.insert(members.end(), class_members_[c].begin(), class_members_[c].end());
      }
      if (spans(members, v_.dim() + j)) {
        found.push_back(std::move(members));
        if (!all) stop = true;
      }
      return;
    }
    for (std::size_t c = next; c < class_reps_.size() && !stop; ++c) {
      counter_.tick();
      Echelon q2 = q;
      if (!q2.insert(class_reps_[c])) continue;
      dfs(static_cast<int>(c) + 1, q2, depth + 1, j, all, seen, found, stop);
    }
  }

  void bases_dfs(const std::vector<int>& members, std::size_t next, const Echelon& e, int dim, std::vector<int>& chosen,
                 std::size_t limit, std::vector<std::vector<int>>& out) {
    if (out.size() >= limit) return;
    if (static_cast<int>(chosen.size()) == dim) {
      out.push_back(chosen);
      return;
    }
    for (std::size_t i = next; i < members.size() && out.size() < limit; ++i) {
      counter_.tick();
      Echelon e2 = e;
      if (!e2.insert(cat_.tensors[members[i]])) continue;
      chosen.push_back(members[i]);
      bases_dfs(members, i + 1, e2, dim, chosen, limit, out);
      chosen.pop_back();
    }
  }

  FieldTag tag_;
  Field f_;
  int n_;
  int d_;
  int len_;
  Vec target_;
  std::vector<Vec> slices_;
  Echelon v_;
  const Catalog& cat_;
  Counter counter_;
  std::vector<Vec> class_reps_;
  std::vector<std::vector<int>> class_members_;
};

void verify(const Decomposition& dec, const Tensor& t) {
  if (!(reconstruct(dec, t.order(), t.dim(), t.field()) == t)) {
    fail(ErrorCode::kInternal, "oracle witness does not reconstruct the tensor");
  }
}

struct SymSpace {
  std::vector<std::vector<int>> orbits;  // sorted multi-indices, lexicographic
  std::vector<int> orbit_of_flat;
};

const SymSpace& sym_space(int d, int n) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<SymSpace>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{d, n}];
  if (slot) return *slot;
  auto space = std::make_unique<SymSpace>();
  const long long total = ipow(n, d);
  std::map<std::vector<int>, int> ids;
  space->orbit_of_flat.resize(total);
  for (long long flat = 0; flat < total; ++flat) {
    std::vector<int> index(d);
    long long rest = flat;
    for (int k = d - 1; k >= 0; --k) {
      index[k] = static_cast<int>(rest % n);
      rest /= n;
    }
    std::sort(index.begin(), index.end());
    auto [it, inserted] = ids.emplace(index, 0);
    if (inserted) {
      it->second = static_cast<int>(space->orbits.size());
      space->orbits.push_back(index);
    }
    space->orbit_of_flat[flat] = it->second;
  }
  slot = std::move(space);
  return *slot;
}

Vec sym_coords(const Tensor& t, const SymSpace& space) {
  Vec out;
  for (const auto& orbit : space.orbits) out.push_back(static_cast<std::uint8_t>(t.at(orbit).residue_value()));
  return out;
}

Vec cube_coords(const Field& f, const Vec& u, const SymSpace& space) {
  Vec out;
  for (const auto& orbit : space.orbits) {
    int value = 1;
    for (int i : orbit) value = f.mul(value, u[i]);
    out.push_back(static_cast<std::uint8_t>(value));
  }
  return out;
}

template <typename Fn>
void parallel_for(long long count, int threads, Fn&& fn) {
  const int workers = static_cast<int>(std::max<long long>(1, std::min<long long>(threads, count)));
  std::atomic<long long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    while (true) {
      const long long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
        return;
      }
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

class ProgressTicker {
 public:
  ProgressTicker(std::function<void(long long, long long)> fn, long long total) : fn_(std::move(fn)), total_(total) {}
  void tick() {
    const long long done = ++done_;
    if (!fn_ || (done % 1024 != 0 && done != total_)) return;
    std::lock_guard<std::mutex> lock(mutex_);
    fn_(done, total_);
  }

 private:
  std::function<void(long long, long long)> fn_;
  long long total_;
  std::atomic<long long> done_{0};
  std::mutex mutex_;
};

}  // namespace

void check_oracle_budget(const FieldTag& tag, int d, int n, const OracleBudget& budget) {
  if (!tag.is_finite()) fail(ErrorCode::kUnsupportedField, "exhaustive search needs a finite field");
  const int p = tag.prime();
  if (p > budget.max_prime) fail(ErrorCode::kBudgetExceeded, "p = " + std::to_string(p) + " exceeds the oracle budget");
  if (d < 1 || d > budget.max_d) fail(ErrorCode::kBudgetExceeded, "d = " + std::to_string(d) + " exceeds the oracle budget");
  const int max_n = p <= budget.max_small_prime ? budget.max_n : budget.max_n_large_prime;
  if (n < 1 || n > max_n) fail(ErrorCode::kBudgetExceeded, "n = " + std::to_string(n) + " exceeds the oracle budget");
}

int oracle_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TRL_THREADS")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::optional<RankResult> brute_rank_at_most(const Tensor& t, int max_rank, const OracleBudget& budget) {
  check_oracle_budget(t.field(), t.order(), t.dim(), budget);
  if (t.order() == 1) {
    if (t.is_zero()) return RankResult{0, {}};
    if (max_rank < 1) return std::nullopt;
    Decomposition dec;
    dec.terms.push_back(RankOneTerm::general(Scalar::one(t.field()), {Vector(t.entries().begin(), t.entries().end())}));
    return RankResult{1, dec};
  }
  RankSearch search(t, budget);
  const auto found = search.find(max_rank, false);
  if (found.empty()) return std::nullopt;
  const int dim = static_cast<int>(search.some_basis(found.front(), static_cast<int>(ipow(t.dim(), t.order()))).size());
  RankResult result{dim, search.decomposition(search.some_basis(found.front(), dim))};
  verify(result.witness, t);
  return result;
}

RankResult brute_rank(const Tensor& t, const OracleBudget& budget) {
  const int bound = static_cast<int>(ipow(t.dim(), std::max(0, t.order() - 1)));
  auto result = brute_rank_at_most(t, bound, budget);
  if (!result) fail(ErrorCode::kInternal, "rank search found no decomposition");
  return *result;
}

std::vector<Decomposition> minimal_decompositions(const Tensor& t, std::size_t limit, const OracleBudget& budget) {
  check_oracle_budget(t.field(), t.order(), t.dim(), budget);
  if (t.order() < 2) fail(ErrorCode::kPreconditionFailed, "decomposition enumeration needs d >= 2");
  RankSearch search(t, budget);
  const auto spaces = search.find(static_cast<int>(ipow(t.dim(), t.order() - 1)), true);
  std::vector<Decomposition> out;
  std::set<std::string> seen;
  for (const auto& members : spaces) {
    const int dim = static_cast<int>(search.some_basis(members, static_cast<int>(ipow(t.dim(), t.order()))).size());
    std::vector<std::vector<int>> bases;
    search.all_bases(members, dim, limit + 1, bases);
    for (const auto& basis : bases) {
      if (out.size() >= limit) return out;
      if (!seen.insert(search.term_set_key(basis)).second) continue;
      out.push_back(search.decomposition(basis));
      verify(out.back(), t);
    }
  }
  return out;
}

std::optional<SrankResult> brute_srank_at_most(const SymTensor& s, int max_k, const OracleBudget& budget) {
  const FieldTag tag = s.field();
  check_oracle_budget(tag, s.order(), s.dim(), budget);
  const Field f(tag.prime());
  const SymSpace& space = sym_space(s.order(), s.dim());
  const int len = static_cast<int>(space.orbits.size());
  const Vec target = sym_coords(s.tensor(), space);
  const auto points = projective_points(tag.prime(), s.dim());
  std::vector<Vec> cubes;
  Echelon everything(f, len);
  for (const auto& u : points) {
    cubes.push_back(cube_coords(f, u, space));
    everything.insert(cubes.back());
  }
  if (!everything.contains(target)) return SrankResult{NotExpressible{}, std::nullopt};
  if (all_zero(target)) return SrankResult{0, Decomposition{{}, true, std::nullopt}};

  Counter counter(budget.candidate_cap);
  std::vector<int> chosen;
  std::optional<std::vector<int>> hit;
  // Subsets of exactly k points with independent cubes, lexicographic.
  std::function<void(std::size_t, const Echelon&, int)> dfs = [&](std::size_t next, const Echelon& e, int k) {
    if (static_cast<int>(chosen.size()) == k) {
      if (e.contains(target)) hit = chosen;
      return;
    }
    for (std::size_t i = next; i < points.size() && !hit; ++i) {
      counter.tick();
      Echelon e2 = e;
      if (!e2.insert(cubes[i])) continue;
      chosen.push_back(static_cast<int>(i));
      dfs(i + 1, e2, k);
      chosen.pop_back();
    }
  };
  const int top = std::min<int>(max_k, static_cast<int>(points.size()));
  for (int k = 1; k <= top && !hit; ++k) dfs(0, Echelon(f, len), k);
  if (!hit) return std::nullopt;

  std::vector<Vec> basis;
  for (int i : *hit) basis.push_back(cubes[i]);
  const auto coeffs = coordinates(f, len, basis, {target});
  if (!coeffs) fail(ErrorCode::kInternal, "srank witness coordinates");
  Decomposition dec;
  dec.symmetric = true;
  for (std::size_t i = 0; i < hit->size(); ++i) {
    dec.terms.push_back(RankOneTerm::power(Scalar::from_int(tag, (*coeffs)[0][i]), to_vector(points[(*hit)[i]], tag),
                                           s.order()));
  }
  verify(dec, s.tensor());
  return SrankResult{static_cast<int>(hit->size()), std::move(dec)};
}

SrankResult brute_srank(const SymTensor& s, const OracleBudget& budget) {
  auto result = brute_srank_at_most(s, std::numeric_limits<int>::max(), budget);
  if (!result) fail(ErrorCode::kInternal, "expressible tensor without a witness");
  return *result;
}

long long symmetric_orbit_count(int d, int n) {
  long long binom = 1;
  for (int i = 1; i <= d; ++i) binom = binom * (n + d - i) / i;
  return binom;
}

long long symmetric_space_size(const FieldTag& tag, int d, int n) {
  if (!tag.is_finite()) fail(ErrorCode::kInfiniteField, "symmetric space of an infinite field");
  const long long m = symmetric_orbit_count(d, n);
  long long total = 1;
  for (long long i = 0; i < m; ++i) {
    if (total > (1LL << 62) / tag.prime()) fail(ErrorCode::kBudgetExceeded, "symmetric space too large to enumerate");
    total *= tag.prime();
  }
  return total;
}

SymTensor symmetric_from_code(const FieldTag& tag, int d, int n, long long code) {
  const SymSpace& space = sym_space(d, n);
  const int m = static_cast<int>(space.orbits.size());
  const int p = tag.prime();
  std::vector<int> digits(m);
  for (int i = m - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(code % p);
    code /= p;
  }
  std::vector<Scalar> entries;
  entries.reserve(space.orbit_of_flat.size());
  for (int orbit : space.orbit_of_flat) entries.push_back(Scalar::residue(p, digits[orbit]));
  return SymTensor(Tensor(d, n, tag, std::move(entries)));
}

CensusReport census(const FieldTag& tag, int d, int n, const CensusOptions& options) {
  check_oracle_budget(tag, d, n, options.budget);
  const int p = tag.prime();
  const long long total = symmetric_space_size(tag, d, n);
  if (total > options.budget.candidate_cap) fail(ErrorCode::kBudgetExceeded, "census space exceeds the candidate cap");
  const Field f(p);
  const SymSpace& space = sym_space(d, n);
  const int m = static_cast<int>(space.orbits.size());

  // Breadth-first closure of the symmetric rank-one set: distance = srank.
  std::vector<Vec> generators;
  for (const auto& u : projective_points(p, n)) {
    const Vec cube = cube_coords(f, u, space);
    for (int c = 1; c < p; ++c) {
      Vec g(m);
      for (int i = 0; i < m; ++i) g[i] = f.mul(c, cube[i]);
      generators.push_back(std::move(g));
    }
  }
  std::vector<int> dist(total, kNotExpressibleKey);
  std::vector<long long> frontier{0};
  dist[0] = 0;
  Vec digits(m);
  for (int level = 1; !frontier.empty(); ++level) {
    std::vector<long long> next;
    for (long long code : frontier) {
      long long rest = code;
      for (int i = m - 1; i >= 0; --i) {
        digits[i] = static_cast<std::uint8_t>(rest % p);
        rest /= p;
      }
      for (const auto& g : generators) {
        long long out = 0;
        for (int i = 0; i < m; ++i) out = out * p + f.add(digits[i], g[i]);
        if (dist[out] == kNotExpressibleKey) {
          dist[out] = level;
          next.push_back(out);
        }
      }
    }
    frontier = std::move(next);
  }

  CensusReport report;
  report.field = tag;
  report.d = d;
  report.n = n;
  report.total_symmetric = total;
  report.ranks_computed = options.with_rank;
  std::vector<int> ranks(total, -1);
  if (options.with_rank) {
    ProgressTicker ticker(options.progress, total);
    parallel_for(total, oracle_threads(options.threads), [&](long long code) {
      ranks[code] = brute_rank(symmetric_from_code(tag, d, n, code).tensor(), options.budget).rank;
      ticker.tick();
    });
  }
  for (long long code = 0; code < total; ++code) {
    if (dist[code] == kNotExpressibleKey) ++report.not_expressible;
    if (dist[code] > 0) ++report.expressible_nonzero;
    ++report.histogram[{ranks[code], dist[code]}];
  }
  return report;
}

std::string to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::kMaintheo: return "maintheo";
    case Theorem::kEqcase: return "eqcase";
    case Theorem::kRank2eq: return "rank2eq";
    case Theorem::kRank3symten: return "rank3symten";
    case Theorem::kRank3case: return "rank3case";
  }
  return "?";
}

Theorem parse_theorem(const std::string& text) {
  for (auto t : {Theorem::kMaintheo, Theorem::kEqcase, Theorem::kRank2eq, Theorem::kRank3symten, Theorem::kRank3case}) {
    if (to_string(t) == text) return t;
  }
  fail(ErrorCode::kParseError, "unknown theorem '" + text + "'");
}

namespace {

struct InstanceOutcome {
  bool hypothesis = false;
  bool held = false;
  bool chain_ok = true;
  std::optional<SweepViolation> violation;
};

std::string precondition_failure(Theorem theorem, const FieldTag& tag, int d, int n) {
  if (d < 3) return "statement needs d >= 3";
  if (theorem == Theorem::kEqcase && n < 2) return "statement needs n >= 2";
  if (theorem == Theorem::kRank3symten && d != 3) return "statement needs d = 3";
  const bool needs_three = theorem == Theorem::kMaintheo || theorem == Theorem::kRank3symten ||
                           theorem == Theorem::kRank3case;
  if (needs_three && tag.prime() < 3) return "statement needs |F| >= 3";
  return {};
}

InstanceOutcome evaluate(Theorem theorem, const SymTensor& s, const OracleBudget& budget) {
  const Tensor& t = s.tensor();
  InstanceOutcome out;
  const int rank_a = unfolding_rank(t);
  std::optional<RankResult> rank;
  std::optional<SrankResult> srank;
  std::string detail;

  switch (theorem) {
    case Theorem::kMaintheo:
      rank = brute_rank_at_most(t, rank_a + 1, budget);
      out.hypothesis = rank.has_value();
      break;
    case Theorem::kEqcase:
      rank = brute_rank_at_most(t, rank_a, budget);
      out.hypothesis = rank.has_value();
      break;
    case Theorem::kRank2eq:
      if (!t.is_zero()) rank = brute_rank_at_most(t, 2, budget);
      out.hypothesis = rank.has_value();
      break;
    case Theorem::kRank3symten:
      rank = brute_rank_at_most(t, 3, budget);
      out.hypothesis = rank && rank->rank == 3;
      break;
    case Theorem::kRank3case: {
      rank = brute_rank_at_most(t, 3, budget);
      auto small = brute_srank_at_most(s, 4, budget);
      if (small && small->expressible()) {
        srank = small;
        if (!rank) rank = brute_rank_at_most(t, small->get(), budget);
      }
      out.hypothesis = rank.has_value() || (srank && srank->expressible());
      break;
    }
  }
  if (!out.hypothesis) return out;

  if (!srank) srank = brute_srank_at_most(s, rank->rank, budget);
  out.held = srank && srank->expressible() && srank->get() == rank->rank;
  if (!out.held) detail = "srank differs from rank";
  std::vector<Decomposition> decs;
  if (out.held && theorem == Theorem::kEqcase) {
    decs = minimal_decompositions(t, 2, budget);
    if (decs.size() != 1) {
      out.held = false;
      detail = "minimal decomposition is not unique";
    }
  }
  // Exact srank for the report when only a bounded search was made.
  if (!out.held && !srank) srank = brute_srank(s, budget);
  out.chain_ok = rank_a <= rank->rank && (!srank || !srank->expressible() || srank->get() >= rank->rank);
  if (!out.held) {
    SweepViolation v{t, rank_a, rank->rank, srank, detail, {}};
    v.witnesses.push_back(rank->witness);
    if (srank && srank->witness) v.witnesses.push_back(*srank->witness);
    for (auto& dec : decs) v.witnesses.push_back(std::move(dec));
    out.violation = std::move(v);
  }
  return out;
}

}  // namespace

SweepReport theorem_sweep(Theorem theorem, const FieldTag& tag, int d, int n, const SweepOptions& options) {
  check_oracle_budget(tag, d, n, options.budget);
  SweepReport report;
  report.theorem = theorem;
  report.field = tag;
  report.d = d;
  report.n = n;
  report.seed = options.seed;
  const std::string gate = precondition_failure(theorem, tag, d, n);
  if (!gate.empty()) {
    report.precondition_met = false;
    report.precondition_note = gate;
    return report;
  }
  const long long total = symmetric_space_size(tag, d, n);
  report.exhaustive = options.samples <= 0 || options.samples >= total;
  std::vector<long long> codes;
  if (report.exhaustive) {
    codes.resize(total);
    for (long long i = 0; i < total; ++i) codes[i] = i;
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<long long> pick(0, total - 1);
    codes.resize(options.samples);
    for (auto& c : codes) c = pick(rng);
  }
  const long long count = static_cast<long long>(codes.size());
  std::vector<InstanceOutcome> outcomes(count);
  ProgressTicker ticker(options.progress, count);
  parallel_for(count, oracle_threads(options.threads), [&](long long i) {
    outcomes[i] = evaluate(theorem, symmetric_from_code(tag, d, n, codes[i]), options.budget);
    ticker.tick();
  });
  report.instances = count;
  for (auto& o : outcomes) {
    report.hypothesis_met += o.hypothesis ? 1 : 0;
    report.conclusion_held += o.held ? 1 : 0;
    report.chain_violations += o.chain_ok ? 0 : 1;
    if (o.violation) report.violations.push_back(std::move(*o.violation));
  }
  return report;
}

}  // namespace trl
