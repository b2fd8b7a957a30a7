#pragma once

// Reference computations that share no code with the library: plain integer
// arithmetic mod p and closed forms over the reals.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <queue>
#include <vector>

#include "trl/tensor.hpp"

namespace oracle {

inline long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Tensor in (F_p^n)^(x)d encoded base p, flat index 0 most significant digit
// ignored: code = sum entry[i] * p^i.
inline long long encode(const std::vector<int>& entries, int p) {
  long long code = 0;
  for (std::size_t i = entries.size(); i-- > 0;) code = code * p + entries[i];
  return code;
}

inline std::vector<int> decode(long long code, int p, std::size_t size) {
  std::vector<int> out(size);
  for (auto& e : out) {
    e = static_cast<int>(code % p);
    code /= p;
  }
  return out;
}

inline std::vector<int> residues(const trl::Tensor& t) {
  std::vector<int> out;
  for (const auto& e : t.entries()) out.push_back(static_cast<int>(e.residue_value()));
  return out;
}

inline std::vector<std::vector<int>> all_vectors(int p, int n) {
  std::vector<std::vector<int>> out;
  for (long long c = 0; c < ipow(p, n); ++c) out.push_back(decode(c, p, n));
  return out;
}

inline std::vector<int> outer(const std::vector<std::vector<int>>& f, int p) {
  const int d = static_cast<int>(f.size());
  const int n = static_cast<int>(f[0].size());
  std::vector<int> out(ipow(n, d));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    long long rem = static_cast<long long>(flat);
    long long v = 1;
    for (int k = d - 1; k >= 0; --k) {
      v = v * f[k][rem % n] % p;
      rem /= n;
    }
    out[flat] = static_cast<int>(v);
  }
  return out;
}

// Distance from zero in the Cayley graph generated by the given tensors:
// BFS over the whole space F_p^(n^d). -1 marks unreachable codes.
inline std::vector<int> bfs_ranks(const std::vector<std::vector<int>>& generators, int p, std::size_t size) {
  const long long total = ipow(p, static_cast<int>(size));
  std::vector<int> dist(total, -1);
  std::vector<long long> gen_codes;
  for (const auto& g : generators) gen_codes.push_back(encode(g, p));
  dist[0] = 0;
  std::queue<long long> q;
  q.push(0);
  while (!q.empty()) {
    const long long cur = q.front();
    q.pop();
    const auto a = decode(cur, p, size);
    for (const auto& g : generators) {
      std::vector<int> sum(size);
      for (std::size_t i = 0; i < size; ++i) sum[i] = (a[i] + g[i]) % p;
      const long long code = encode(sum, p);
      if (dist[code] < 0) {
        dist[code] = dist[cur] + 1;
        q.push(code);
      }
    }
  }
  return dist;
}

// rank of every tensor in (F_p^n)^(x)d.
inline std::vector<int> all_ranks(int p, int d, int n) {
  std::vector<std::vector<int>> gens;
  const auto vecs = all_vectors(p, n);
  std::vector<std::size_t> idx(d, 1);
  while (true) {
    std::vector<std::vector<int>> f;
    for (auto i : idx) f.push_back(vecs[i]);
    gens.push_back(outer(f, p));
    int k = d - 1;
    while (k >= 0 && idx[k] + 1 == vecs.size()) idx[k--] = 1;
    if (k < 0) break;
    ++idx[k];
  }
  return bfs_ranks(gens, p, ipow(n, d));
}

// srank of every tensor; non-symmetric and inexpressible codes get -1.
inline std::vector<int> all_sranks(int p, int d, int n) {
  std::vector<std::vector<int>> gens;
  for (const auto& u : all_vectors(p, n)) {
    for (int c = 1; c < p; ++c) {
      auto t = outer(std::vector<std::vector<int>>(d, u), p);
      for (auto& e : t) e = e * c % p;
      gens.push_back(t);
    }
  }
  return bfs_ranks(gens, p, ipow(n, d));
}

// Discriminant of s111 x^3 + 3 s112 x^2 y + 3 s122 x y^2 + s222 y^3.
inline double cubic_discriminant(double s111, double s112, double s122, double s222) {
  const double a = s111, b = 3 * s112, c = 3 * s122, d = s222;
  return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
}

// max over the unit circle of |<S, u^(x)3>| for a real binary cubic, on a grid
// refined by golden-section search around the best grid point.
inline double binary_cubic_max(double s111, double s112, double s122, double s222) {
  auto f = [&](double th) {
    const double x = std::cos(th), y = std::sin(th);
    return std::abs(s111 * x * x * x + 3 * s112 * x * x * y + 3 * s122 * x * y * y + s222 * y * y * y);
  };
  const int grid = 20000;
  double best = 0.0, best_th = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double th = std::numbers::pi * i / grid;
    if (f(th) > best) {
      best = f(th);
      best_th = th;
    }
  }
  double lo = best_th - std::numbers::pi / grid, hi = best_th + std::numbers::pi / grid;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    if (f(m1) < f(m2)) lo = m1; else hi = m2;
  }
  return std::max(best, f((lo + hi) / 2));
}

}  // namespace oracle
