#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library.

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <vector>

namespace oracle {

inline mpz_class fact(long n) {
  mpz_class r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline mpz_class choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  return fact(n) / (fact(k) * fact(n - k));
}

// Plane partitions fitting in an a x b x c box: a x b arrays with entries in
// [0, c], nonincreasing along rows and columns.
inline long count_plane_partitions(int a, int b, int c) {
  if (a == 0 || b == 0) return 1;
  std::vector<int> cell(static_cast<std::size_t>(a * b), 0);
  std::function<long(int)> fill = [&](int pos) -> long {
    if (pos == a * b) return 1;
    const int i = pos / b, j = pos % b;
    int cap = c;
    if (i > 0) cap = std::min(cap, cell[static_cast<std::size_t>((i - 1) * b + j)]);
    if (j > 0) cap = std::min(cap, cell[static_cast<std::size_t>(i * b + j - 1)]);
    long total = 0;
    for (int v = 0; v <= cap; ++v) {
      cell[static_cast<std::size_t>(pos)] = v;
      total += fill(pos + 1);
    }
    return total;
  };
  return fill(0);
}

inline mpq_class prefactor(long n, long m, long l) {
  mpq_class c = 1;
  for (long j = 0; j < n; ++j)
    c *= mpq_class(fact(l - n + j - 1) * fact(m - n + j), fact(l - 2) * fact(m - 1));
  c.canonicalize();
  return c;
}

// Log-gas sum over every (unordered) N-tuple of sites.
inline mpq_class tau_full_sum(long n, long m, long l, const mpq_class& x) {
  const long top = std::min(l - 2, m - 1);
  std::vector<mpq_class> nu;
  mpq_class xp = 1;
  for (long k = 0; k <= top; ++k) {
    nu.push_back(mpq_class(choose(l - 2, k) * choose(m - 1, k)) / (xp * (k + 1)));
    xp *= x;
  }
  std::vector<long> ks(static_cast<std::size_t>(n), 0);
  mpq_class sum = 0;
  for (;;) {
    mpz_class vdm = 1;
    mpq_class w = 1;
    for (long i = 0; i < n; ++i) {
      w *= nu[static_cast<std::size_t>(ks[static_cast<std::size_t>(i)])];
      for (long j = i + 1; j < n; ++j) {
        const long d = ks[static_cast<std::size_t>(j)] - ks[static_cast<std::size_t>(i)];
        vdm *= d * d;
      }
    }
    sum += w * vdm;
    long p = 0;
    while (p < n && ks[static_cast<std::size_t>(p)] == top) ks[static_cast<std::size_t>(p++)] = 0;
    if (p == n) break;
    ++ks[static_cast<std::size_t>(p)];
  }
  return prefactor(n, m, l) * sum;
}

}  // namespace oracle
