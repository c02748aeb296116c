#pragma once

// Inverting pick(k, m) as a multivariate quadratic system over GF(2).
//
// Variable q_u (u = block * 2^k + j) is 1 iff column j of block `block` was
// selected. Constraints:
//   - for each output bit h:  sum_u M[h][u] q_u = y_h
//   - for each block:         sum_{u in block} q_u = 1
//   - q_u q_v = 0 for within-block pairs u < v: all pairs (full mode) or only
//     same-parity pairs (minimal mode; the block sum then forces exactly one).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scsprbg/errors.hpp"
#include "scsprbg/gf2.hpp"
#include "scsprbg/pick.hpp"

namespace scsprbg::analysis {

enum class MqMode { kFull, kMinimal };

struct LinearEquation {
  BitVec coeffs;
  bool rhs = false;
};

struct MQSystem {
  PickParams params;
  std::size_t nvars = 0;
  std::vector<LinearEquation> linear;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> quadratic_zero;
  MqMode mode = MqMode::kMinimal;
};

// Closed-form sizes of the encoding.
struct MqCounts {
  std::uint64_t nvars;
  std::uint64_t linear;
  std::uint64_t quadratic_full;
  std::uint64_t quadratic_minimal;
};

inline MqCounts mq_counts(const PickParams& p) {
  p.validate();
  const std::uint64_t bc = p.block_cols();
  const std::uint64_t half = bc / 2;
  return {std::uint64_t{p.m} * bc, p.lrows() + std::uint64_t{p.m},
          std::uint64_t{p.m} * (bc * (bc - 1) / 2), std::uint64_t{p.m} * half * (half - 1)};
}

inline MQSystem encode_pick_mq(const PickMatrix& pm, const BitVec& output, MqMode mode) {
  const PickParams& p = pm.params();
  if (output.size() != p.lrows()) {
    throw WidthMismatch("encode_pick_mq: output has " + std::to_string(output.size()) +
                        " bits, expected " + std::to_string(p.lrows()));
  }
  MQSystem sys;
  sys.params = p;
  sys.nvars = p.ncols();
  sys.mode = mode;
  sys.linear.reserve(p.lrows() + p.m);

  const BitMatrix& mat = pm.matrix();
  std::vector<BitVec> rows(p.lrows(), BitVec(sys.nvars));
  for (std::size_t c = 0; c < sys.nvars; ++c) {
    const auto col = mat.column_words(c);
    for (std::size_t w = 0; w < col.size(); ++w) {
      Word bits = col[w];
      while (bits != 0) {
        const std::size_t r = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        rows[r].set(c);
      }
    }
  }
  for (std::size_t h = 0; h < p.lrows(); ++h) {
    sys.linear.push_back({std::move(rows[h]), output.test(h)});
  }

  const std::size_t bc = p.block_cols();
  for (std::size_t b = 0; b < p.m; ++b) {
    BitVec sum(sys.nvars);
    for (std::size_t j = 0; j < bc; ++j) sum.set(b * bc + j);
    sys.linear.push_back({std::move(sum), true});
  }

  const auto counts = mq_counts(p);
  sys.quadratic_zero.reserve(mode == MqMode::kFull ? counts.quadratic_full
                                                   : counts.quadratic_minimal);
  for (std::size_t b = 0; b < p.m; ++b) {
    const auto base = static_cast<std::uint32_t>(b * bc);
    for (std::uint32_t i = 0; i < bc; ++i) {
      for (std::uint32_t j = i + 1; j < bc; ++j) {
        if (mode == MqMode::kMinimal && ((i + j) & 1U) != 0) continue;
        sys.quadratic_zero.emplace_back(base + i, base + j);
      }
    }
  }
  return sys;
}

inline bool mq_satisfies(const MQSystem& sys, const BitVec& assignment) {
  if (assignment.size() != sys.nvars) {
    throw WidthMismatch("mq_satisfies: assignment has " + std::to_string(assignment.size()) +
                        " bits, expected " + std::to_string(sys.nvars));
  }
  for (const auto& [u, v] : sys.quadratic_zero) {
    if (assignment.test(u) && assignment.test(v)) return false;
  }
  for (const auto& eq : sys.linear) {
    if (eq.coeffs.dot(assignment) != eq.rhs) return false;
  }
  return true;
}

// One-hot encoding of a pick input: the assignment of the true selection.
inline BitVec selection_assignment(const PickParams& p, const BitVec& input) {
  if (input.size() != p.input_bits()) throw WidthMismatch("selection_assignment: bad input width");
  BitVec a(p.ncols());
  for (std::size_t b = 0; b < p.m; ++b) {
    a.set((b << p.k) + input.extract(b * p.k, p.k));
  }
  return a;
}

// Inverse of selection_assignment; nullopt unless every block is one-hot.
inline std::optional<BitVec> decode_assignment(const PickParams& p, const BitVec& assignment) {
  if (assignment.size() != p.ncols()) throw WidthMismatch("decode_assignment: bad width");
  BitVec input(p.input_bits());
  const std::size_t bc = p.block_cols();
  for (std::size_t b = 0; b < p.m; ++b) {
    std::optional<std::size_t> sel;
    for (std::size_t j = 0; j < bc; ++j) {
      if (!assignment.test(b * bc + j)) continue;
      if (sel) return std::nullopt;
      sel = j;
    }
    if (!sel) return std::nullopt;
    for (std::uint32_t i = 0; i < p.k; ++i) input.set(b * p.k + i, (*sel >> i) & 1U);
  }
  return input;
}

// Pivot variables of the linear part expressed as affine functions of the
// free variables.
struct LinearSubstitution {
  std::size_t nvars = 0;
  std::size_t rank = 0;
  bool consistent = true;
  std::vector<std::size_t> pivot_vars;
  std::vector<std::size_t> free_vars;
  // Row i: q_{pivot_vars[i]} + sum_f rows[i][f] q_f = rhs[i], with rows[i]
  // zero on every other pivot variable.
  std::vector<BitVec> rows;
  BitVec rhs;

  std::size_t free_count() const { return free_vars.size(); }

  // Full assignment from values of the free variables (in free_vars order).
  BitVec expand(const BitVec& free_values) const {
    if (free_values.size() != free_vars.size()) {
      throw WidthMismatch("LinearSubstitution::expand: wrong free-variable count");
    }
    BitVec x(nvars);
    for (std::size_t i = 0; i < free_vars.size(); ++i) {
      if (free_values.test(i)) x.set(free_vars[i]);
    }
    std::vector<bool> vals(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) vals[r] = rhs.test(r) ^ rows[r].dot(x);
    for (std::size_t r = 0; r < rows.size(); ++r) x.set(pivot_vars[r], vals[r]);
    return x;
  }
};

inline LinearSubstitution solve_linear(std::span<const BitVec> rows, std::size_t nvars,
                                       const BitVec& rhs) {
  auto g = gf2_gauss_rows(rows, nvars, &rhs, /*want_nullspace=*/false);
  LinearSubstitution sub;
  sub.nvars = nvars;
  sub.rank = g.rank;
  sub.consistent = g.consistent();
  sub.pivot_vars = g.pivots;
  std::vector<bool> is_pivot(nvars, false);
  for (auto p : g.pivots) is_pivot[p] = true;
  for (std::size_t v = 0; v < nvars; ++v) {
    if (!is_pivot[v]) sub.free_vars.push_back(v);
  }
  sub.rows = std::move(g.echelon);
  for (std::size_t r = 0; r < sub.rows.size(); ++r) sub.rows[r].set(sub.pivot_vars[r], false);
  sub.rhs = std::move(g.reduced_rhs);
  return sub;
}

inline LinearSubstitution mq_eliminate_linear(const MQSystem& sys) {
  std::vector<BitVec> rows;
  rows.reserve(sys.linear.size());
  BitVec rhs(sys.linear.size());
  for (std::size_t i = 0; i < sys.linear.size(); ++i) {
    rows.push_back(sys.linear[i].coeffs);
    rhs.set(i, sys.linear[i].rhs);
  }
  return solve_linear(rows, sys.nvars, rhs);
}

}  // namespace scsprbg::analysis
