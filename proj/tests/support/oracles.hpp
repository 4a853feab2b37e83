#pragma once

// Slow, independent reference implementations used only by tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Dense = std::vector<std::vector<cplx>>;

inline Dense zeros(int n) { return Dense(n, std::vector<cplx>(n)); }

inline Dense matmul(const Dense& a, const Dense& b) {
  const int n = static_cast<int>(a.size());
  Dense c = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// sum_{k < terms} (s m)^k / k!
inline Dense taylor_exp(const Dense& m, cplx s, int terms = 40) {
  const int n = static_cast<int>(m.size());
  Dense a = zeros(n), term = zeros(n), out = zeros(n);
  for (int i = 0; i < n; ++i) {
    term[i][i] = 1.0;
    out[i][i] = 1.0;
    for (int j = 0; j < n; ++j) a[i][j] = s * m[i][j];
  }
  for (int k = 1; k < terms; ++k) {
    term = matmul(term, a);
    for (auto& row : term)
      for (auto& v : row) v /= static_cast<double>(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i][j] += term[i][j];
  }
  return out;
}

// (a (x) b)[2i+k][2j+l] = a[i][j] b[k][l]
inline Dense kron(const Dense& a, const Dense& b) {
  Dense out = zeros(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
  return out;
}

// Exhaustive-history LZ76 parse: each phrase is extended while it still occurs
// somewhere starting strictly before the phrase start; an unfinished last
// phrase counts.
inline std::int64_t lz76(const std::vector<int>& s) {
  const std::size_t n = s.size();
  std::int64_t phrases = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t len = 1;
    while (true) {
      bool seen = false;
      for (std::size_t j = 0; j < i && !seen; ++j) {
        bool eq = true;
        for (std::size_t t = 0; t < len; ++t) {
          if (s[j + t] != s[i + t]) {
            eq = false;
            break;
          }
        }
        seen = eq;
      }
      if (!seen || i + len == n) break;
      ++len;
    }
    ++phrases;
    i += len;
  }
  return phrases;
}

inline std::vector<int> from_string(const std::string& bits) {
  std::vector<int> v;
  for (char c : bits) v.push_back(c - '0');
  return v;
}

// Average rank by counting: rank = #{less} + (#{equal} + 1) / 2.
inline std::vector<double> count_ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double less = 0, equal = 0;
    for (double v : x) {
      if (v < x[i]) ++less;
      if (v == x[i]) ++equal;
    }
    r[i] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(count_ranks(x), count_ranks(y));
}

}  // namespace oracle
