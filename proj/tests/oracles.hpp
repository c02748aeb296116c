#pragma once

// Reference implementations used only by tests. Each one takes a different
// route from the library code it checks: plain bools instead of packed words,
// entry-wise matrix access, enumeration instead of elimination.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "scsprbg/generators.hpp"
#include "scsprbg/gf2.hpp"
#include "scsprbg/pick.hpp"

namespace oracle {

// Rank via the size of the row span: enumerate all 2^nrows XOR combinations.
// Rows must fit in 64 bits and nrows must be small.
inline std::size_t rank_by_span(const std::vector<std::uint64_t>& rows) {
  std::set<std::uint64_t> span;
  const std::uint64_t total = std::uint64_t{1} << rows.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if ((mask >> i) & 1U) acc ^= rows[i];
    }
    span.insert(acc);
  }
  std::size_t r = 0;
  while ((std::size_t{1} << r) < span.size()) ++r;
  return r;
}

// QUAD evaluation over unpacked bools, quadratic terms first with the outer
// loop on the larger index, then linear, then constant.
inline std::vector<bool> quad_eval(const scsprbg::QuadSystem& sys, const std::vector<bool>& x) {
  const std::size_t n = sys.n();
  std::vector<bool> out(sys.outputs(), false);
  for (std::size_t h = 0; h < sys.outputs(); ++h) {
    const auto& eq = sys.equation(h);
    bool v = false;
    for (std::size_t j = n; j-- > 0;) {
      for (std::size_t i = 0; i < j; ++i) {
        const std::size_t t = 1 + n + (i * n - i * (i + 1) / 2) + (j - i - 1);
        if (eq.test(t) && x[i] && x[j]) v = !v;
      }
    }
    for (std::size_t i = n; i-- > 0;) {
      if (eq.test(1 + i) && x[i]) v = !v;
    }
    if (eq.test(0)) v = !v;
    out[h] = v;
  }
  return out;
}

inline std::vector<bool> to_bools(const scsprbg::BitVec& v) {
  std::vector<bool> b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b[i] = v.test(i);
  return b;
}

inline scsprbg::BitVec from_bools(const std::vector<bool>& b) {
  scsprbg::BitVec v(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) v.set(i, b[i]);
  return v;
}

// QUAD keystream: state = first n outputs, chunk = the rest.
inline std::vector<bool> quad_keystream(const scsprbg::QuadSystem& sys, std::vector<bool> x,
                                        std::size_t nbits) {
  std::vector<bool> out;
  while (out.size() < nbits) {
    const auto y = quad_eval(sys, x);
    x.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(sys.n()));
    for (std::size_t i = sys.n(); i < y.size() && out.size() < nbits; ++i) out.push_back(y[i]);
  }
  return out;
}

// Right-to-left square-and-multiply with 64-bit words (modulus < 2^32).
inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

// pick via entry-by-entry matrix reads.
inline scsprbg::BitVec pick(const scsprbg::PickMatrix& pm, const scsprbg::BitVec& input) {
  const auto& p = pm.params();
  const auto& mat = pm.matrix();
  scsprbg::BitVec out(p.lrows());
  for (std::size_t r = 0; r < p.lrows(); ++r) {
    bool v = false;
    for (std::size_t b = 0; b < p.m; ++b) {
      std::size_t j = 0;
      for (std::size_t i = 0; i < p.k; ++i) {
        if (input.test(b * p.k + i)) j += std::size_t{1} << i;
      }
      if (mat.get(r, b * (std::size_t{1} << p.k) + j)) v = !v;
    }
    out.set(r, v);
  }
  return out;
}

inline scsprbg::BitVec random_bits(std::mt19937_64& rng, std::size_t n) {
  scsprbg::BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1U);
  return v;
}

inline scsprbg::BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  scsprbg::BitMatrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) m.set(r, c, rng() & 1U);
  }
  return m;
}

}  // namespace oracle
