#pragma once

// Cost model and attack-complexity calculators for pick(k, m).
// Every quantity that can exceed double range is carried as log10.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

#include "scsprbg/analysis/mq.hpp"
#include "scsprbg/errors.hpp"
#include "scsprbg/pick.hpp"

namespace scsprbg::analysis {

struct CostModel {
  double t1 = 3000.0;          // cycles/bit of the plain generator
  double t2 = 12.0;            // cycles/bit of the expander
  double d = 32.0;             // machine word width
  double omega = 2.37;         // linear-algebra exponent
  double verify_cost = 1.0e4;  // cycles per probabilistic-attack verification

  void validate() const {
    if (!(t1 > 0 && t2 > 0 && d > 0 && omega > 0 && verify_cost > 0)) {
      throw ParamError("CostModel: all fields must be positive");
    }
  }
};

struct AttackOptions {
  unsigned xl_degree = 12;      // XL degree for strategy 2
  std::uint32_t fixed_per_block = 31;  // t for strategy 4
};

inline double log10_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return -INFINITY;
  k = std::min(k, n - k);
  double s = 0.0;
  for (std::uint64_t i = 0; i < k; ++i) {
    s += std::log10(static_cast<double>(n - i)) - std::log10(static_cast<double>(i + 1));
  }
  return s;
}

// First degree whose coefficient in (1+z)^nvars / (1+z^2)^neqs is <= 0
// (exact integer coefficients); nvars + 1 when no coefficient drops.
inline unsigned hilbert_regularity_degree(std::uint64_t nvars, std::uint64_t neqs) {
  if (nvars < 1) throw ParamError("hilbert_regularity_degree: nvars must be >= 1");
  mpz_class binom_n;
  mpz_class binom_m;
  for (std::uint64_t d = 0; d <= nvars; ++d) {
    mpz_class coeff = 0;
    for (std::uint64_t j = 0; 2 * j <= d; ++j) {
      // 1/(1+z^2)^m = sum_j (-1)^j C(m+j-1, j) z^{2j}
      if (neqs == 0 && j > 0) break;
      mpz_bin_uiui(binom_n.get_mpz_t(), nvars, d - 2 * j);
      if (j == 0) {
        binom_m = 1;
      } else {
        mpz_bin_uiui(binom_m.get_mpz_t(), neqs + j - 1, j);
      }
      if (j % 2 == 0) {
        coeff += binom_n * binom_m;
      } else {
        coeff -= binom_n * binom_m;
      }
    }
    if (coeff <= 0) return static_cast<unsigned>(d);
  }
  return static_cast<unsigned>(nvars + 1);
}

// Asymptotic degree of regularity of a semi-regular quadratic system over
// GF(2) with neqs = a * nvars equations (field equations included):
//   D ~ n * (-a + 1/2 + 1/2 sqrt(2a^2 - 10a - 1 + 2(a+2) sqrt(a(a+2)))).
inline double bardet_estimate(std::uint64_t nvars, std::uint64_t neqs) {
  if (nvars < 1 || neqs < nvars) {
    throw ParamError("bardet_estimate: need 1 <= nvars <= neqs");
  }
  const long double n = static_cast<long double>(nvars);
  const long double a = static_cast<long double>(neqs) / n;
  const long double inner = 2 * a * a - 10 * a - 1 + 2 * (a + 2) * std::sqrt(a * (a + 2));
  return static_cast<double>(n * (-a + 0.5L + 0.5L * std::sqrt(inner)));
}

// Integer degree used by the cost estimate: floor of bardet_estimate, >= 1.
inline unsigned bardet_degree(std::uint64_t nvars, std::uint64_t neqs) {
  const double est = bardet_estimate(nvars, neqs);
  return static_cast<unsigned>(std::max(1.0, std::floor(est)));
}

struct ComplexityReport {
  PickParams params;
  MultiplicationFactor r;
  double xor_per_bit = 0;
  std::uint64_t matrix_bytes = 0;
  double cost_cycles_per_bit = 0;
  MqCounts counts{};
  std::uint64_t free_vars = 0;

  struct ExhaustiveSearch {
    std::uint64_t free_blocks = 0;
    double log2_trials = 0;
    double per_trial_cycles = 0;
    double log10_cycles = 0;
  } strategy1;

  struct Xl {
    unsigned degree = 0;
    double log10_ops = 0;
  } strategy2;

  struct Groebner {
    std::uint64_t equations = 0;
    double eq_var_ratio = 0;
    double bardet_estimate = 0;
    unsigned degree = 0;
    double log10_ops = 0;
    unsigned series_degree = 0;
    double series_log10_ops = 0;
  } strategy3;

  struct Probabilistic {
    std::uint32_t t = 0;
    double log10_success = 0;
    double log10_expected_cycles = 0;
    // (t / 2^k)^m, the fraction of fixed rather than free variables.
    double log10_literal_success = 0;
    double log10_literal_expected_cycles = 0;
  } strategy4;
};

inline ComplexityReport complexity_report(const PickParams& params, const CostModel& cm,
                                          const AttackOptions& opts = {}) {
  params.validate();
  cm.validate();
  ComplexityReport rep;
  rep.params = params;
  rep.r = multiplication_factor(params);
  rep.xor_per_bit = static_cast<double>(params.m - 1) / cm.d;
  rep.matrix_bytes = params.matrix_bytes();
  rep.cost_cycles_per_bit = cm.t1 / rep.r.value() + cm.t2;
  rep.counts = mq_counts(params);
  // Assumes the linear part has full rank, as it does for random matrices.
  rep.free_vars = rep.counts.nvars > rep.counts.linear ? rep.counts.nvars - rep.counts.linear : 0;

  const std::uint64_t bc = params.block_cols();
  const double log10_2 = std::log10(2.0);

  auto& s1 = rep.strategy1;
  s1.free_blocks = rep.free_vars / bc;
  s1.log2_trials = static_cast<double>(params.k) * static_cast<double>(s1.free_blocks);
  // One word XOR per selected column beyond the first.
  s1.per_trial_cycles = s1.free_blocks > 1 ? static_cast<double>(s1.free_blocks - 1) : 1.0;
  s1.log10_cycles = std::log10(s1.per_trial_cycles) + s1.log2_trials * log10_2;

  rep.strategy2.degree = opts.xl_degree;
  rep.strategy2.log10_ops = cm.omega * log10_binomial(rep.free_vars, opts.xl_degree);

  auto& s3 = rep.strategy3;
  s3.equations = rep.counts.quadratic_full;
  if (rep.free_vars > 0) {
    s3.eq_var_ratio = static_cast<double>(s3.equations) / static_cast<double>(rep.free_vars);
    if (s3.equations >= rep.free_vars) {
      s3.bardet_estimate = bardet_estimate(rep.free_vars, s3.equations);
      s3.degree = bardet_degree(rep.free_vars, s3.equations);
      s3.log10_ops = cm.omega * log10_binomial(rep.free_vars, s3.degree);
    }
    s3.series_degree = hilbert_regularity_degree(rep.free_vars, s3.equations);
    s3.series_log10_ops = cm.omega * log10_binomial(rep.free_vars, s3.series_degree);
  }

  auto& s4 = rep.strategy4;
  s4.t = opts.fixed_per_block;
  if (s4.t < 1 || s4.t >= bc) throw ParamError("complexity_report: need 1 <= t < 2^k");
  const double kbits = static_cast<double>(params.k) * log10_2;
  s4.log10_success =
      static_cast<double>(params.m) * (std::log10(static_cast<double>(bc - s4.t)) - kbits);
  s4.log10_expected_cycles = std::log10(cm.verify_cost) - s4.log10_success;
  s4.log10_literal_success =
      static_cast<double>(params.m) * (std::log10(static_cast<double>(s4.t)) - kbits);
  s4.log10_literal_expected_cycles = std::log10(cm.verify_cost) - s4.log10_literal_success;
  return rep;
}

}  // namespace scsprbg::analysis
