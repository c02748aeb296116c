#pragma once

// Executable toy-scale attacks on pick(k, m): exhaustive search and the
// probabilistic "fix t variables per block to zero" attack.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "scsprbg/analysis/mq.hpp"
#include "scsprbg/errors.hpp"
#include "scsprbg/pick.hpp"

namespace scsprbg::analysis {

inline constexpr std::size_t kToyInputBitsLimit = 24;

inline void check_toy_guard(const PickParams& p, const char* who) {
  if (p.input_bits() > kToyInputBitsLimit) {
    throw GuardError(std::string(who) + ": m*k = " + std::to_string(p.input_bits()) +
                     " exceeds the toy-scale limit of " + std::to_string(kToyInputBitsLimit));
  }
}

// Every input x with pick_expand(pm, x) == output, in increasing integer order.
inline std::vector<BitVec> bruteforce_preimages(const PickMatrix& pm, const BitVec& output) {
  const PickParams& p = pm.params();
  check_toy_guard(p, "bruteforce_preimages");
  if (output.size() != p.lrows()) throw WidthMismatch("bruteforce_preimages: bad output width");
  std::vector<BitVec> found;
  BitVec y(p.lrows());
  const std::uint64_t total = std::uint64_t{1} << p.input_bits();
  for (std::uint64_t v = 0; v < total; ++v) {
    const BitVec x = BitVec::from_uint(v, p.input_bits());
    pick_expand_into(pm, x, y.mutable_words());
    if (y == output) found.push_back(x);
  }
  return found;
}

struct ProbabilisticResult {
  std::optional<BitVec> input;
  std::uint64_t trials = 0;
};

namespace detail {

inline std::vector<bool> fixed_of(const std::vector<BitVec>& rows, std::size_t first,
                                  std::size_t nvars) {
  std::vector<bool> fixed(nvars, false);
  for (std::size_t r = first; r < rows.size(); ++r) {
    for (std::size_t u = 0; u < nvars; ++u) {
      if (rows[r].test(u)) fixed[u] = true;
    }
  }
  return fixed;
}

// Depth-first search for a one-hot assignment (one unfixed column per block)
// satisfying the reduced linear rows. A row is checked as soon as every block
// it touches has been assigned.
inline std::optional<BitVec> search_one_hot(const PickParams& p, const GaussResult& g,
                                            const std::vector<bool>& fixed) {
  const std::size_t bc = p.block_cols();
  const std::size_t nvars = p.ncols();
  std::vector<std::vector<std::size_t>> due(p.m);
  for (std::size_t r = 0; r < g.rank; ++r) {
    std::size_t last = 0;
    for (std::size_t u = 0; u < nvars; ++u) {
      if (g.echelon[r].test(u)) last = u;
    }
    due[last / bc].push_back(r);
  }
  std::vector<bool> acc(g.rank, false);
  std::vector<std::size_t> sel(p.m, 0);

  auto dfs = [&](auto&& self, std::size_t b) -> bool {
    if (b == p.m) return true;
    for (std::size_t j = 0; j < bc; ++j) {
      const std::size_t u = b * bc + j;
      if (fixed[u]) continue;
      for (std::size_t r = 0; r < g.rank; ++r) {
        if (g.echelon[r].test(u)) acc[r] = !acc[r];
      }
      bool ok = true;
      for (auto r : due[b]) {
        if (acc[r] != g.reduced_rhs.test(r)) {
          ok = false;
          break;
        }
      }
      sel[b] = u;
      if (ok && self(self, b + 1)) return true;
      for (std::size_t r = 0; r < g.rank; ++r) {
        if (g.echelon[r].test(u)) acc[r] = !acc[r];
      }
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  BitVec a(nvars);
  for (auto u : sel) a.set(u);
  return a;
}

}  // namespace detail

// Each trial zeroes t uniformly chosen variables in every block, solves the
// resulting linear system and searches its affine solution set for an
// assignment that meets the quadratic constraints: exhaustively for small
// solution spaces, else by a pruned search over one-hot selections. With a
// unique preimage a trial succeeds with probability ((2^k - t) / 2^k)^m.
inline ProbabilisticResult probabilistic_attack(const PickMatrix& pm, const BitVec& output,
                                                std::uint32_t t, std::uint64_t max_trials,
                                                std::uint64_t rng_seed) {
  const PickParams& p = pm.params();
  check_toy_guard(p, "probabilistic_attack");
  const std::size_t bc = p.block_cols();
  if (t < 1 || t >= bc) {
    throw ParamError("probabilistic_attack: need 1 <= t < 2^k");
  }
  const MQSystem sys = encode_pick_mq(pm, output, MqMode::kMinimal);

  std::vector<BitVec> rows;
  rows.reserve(sys.linear.size() + t * p.m);
  for (const auto& eq : sys.linear) rows.push_back(eq.coeffs);
  const std::size_t base_rows = rows.size();
  BitVec rhs(base_rows + t * p.m);
  for (std::size_t i = 0; i < base_rows; ++i) rhs.set(i, sys.linear[i].rhs);
  for (std::size_t i = 0; i < t * p.m; ++i) rows.emplace_back(sys.nvars);

  std::mt19937_64 rng(rng_seed);
  std::vector<std::uint32_t> slots(bc);
  ProbabilisticResult result;

  constexpr std::size_t kExhaustiveDim = 20;

  for (std::uint64_t trial = 0; trial < max_trials; ++trial) {
    result.trials = trial + 1;
    std::size_t r = base_rows;
    for (std::size_t b = 0; b < p.m; ++b) {
      std::iota(slots.begin(), slots.end(), 0U);
      for (std::uint32_t i = 0; i < t; ++i) {
        std::uniform_int_distribution<std::size_t> pick_slot(i, bc - 1);
        std::swap(slots[i], slots[pick_slot(rng)]);
        rows[r] = BitVec(sys.nvars);
        rows[r].set(b * bc + slots[i]);
        ++r;
      }
    }
    const auto g = gf2_gauss_rows(rows, sys.nvars, &rhs);
    if (!g.consistent()) continue;

    const std::size_t dim = g.nullspace.size();
    auto try_point = [&](const BitVec& a) -> bool {
      if (!mq_satisfies(sys, a)) return false;
      auto x = decode_assignment(p, a);
      if (!x || pick_expand(pm, *x) != output) return false;
      result.input = std::move(x);
      return true;
    };

    if (dim <= kExhaustiveDim) {
      // Gray-code walk over the affine space.
      BitVec a = *g.solution;
      const std::uint64_t points = std::uint64_t{1} << dim;
      if (try_point(a)) return result;
      for (std::uint64_t i = 1; i < points; ++i) {
        a ^= g.nullspace[static_cast<std::size_t>(std::countr_zero(i))];
        if (try_point(a)) return result;
      }
    } else {
      const auto fixed = detail::fixed_of(rows, base_rows, sys.nvars);
      if (auto a = detail::search_one_hot(p, g, fixed); a && try_point(*a)) return result;
    }
  }
  return result;
}

}  // namespace scsprbg::analysis
