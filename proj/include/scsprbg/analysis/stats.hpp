#pragma once

// Frequency (monobit), runs, and block-frequency tests in the usual
// SP 800-22 formulation.

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <cstddef>
#include <string>

#include "scsprbg/errors.hpp"
#include "scsprbg/gf2.hpp"

namespace scsprbg::analysis {

inline constexpr std::size_t kMinStatBits = 1000;
inline constexpr std::size_t kBlockFrequencySize = 128;

struct StatReport {
  std::size_t nbits = 0;
  double alpha = 0.001;

  double monobit_z = 0;  // |#ones - #zeros| / sqrt(n)
  double monobit_p = 0;

  bool runs_prerequisite = false;  // |pi - 1/2| < 2/sqrt(n)
  std::size_t runs = 0;
  double runs_z = 0;
  double runs_p = 0;

  std::size_t block_size = kBlockFrequencySize;
  std::size_t blocks = 0;
  double block_chi2 = 0;
  double block_p = 0;

  bool monobit_pass() const { return monobit_p >= alpha; }
  bool runs_pass() const { return runs_prerequisite && runs_p >= alpha; }
  bool block_pass() const { return block_p >= alpha; }
  bool pass() const { return monobit_pass() && runs_pass() && block_pass(); }
};

inline StatReport stat_tests(const BitVec& bits, double alpha = 0.001) {
  const std::size_t n = bits.size();
  if (n < kMinStatBits) {
    throw ParamError("stat_tests: need at least " + std::to_string(kMinStatBits) + " bits, got " +
                     std::to_string(n));
  }
  StatReport rep;
  rep.nbits = n;
  rep.alpha = alpha;
  const double dn = static_cast<double>(n);

  const std::size_t ones = bits.count();
  const double s = static_cast<double>(ones) - static_cast<double>(n - ones);
  rep.monobit_z = std::fabs(s) / std::sqrt(dn);
  rep.monobit_p = std::erfc(rep.monobit_z / std::sqrt(2.0));

  const double pi = static_cast<double>(ones) / dn;
  rep.runs_prerequisite = std::fabs(pi - 0.5) < 2.0 / std::sqrt(dn);
  std::size_t runs = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) runs += bits.test(i) != bits.test(i + 1);
  rep.runs = runs;
  const double spread = pi * (1.0 - pi);
  if (spread > 0) {
    rep.runs_z = (static_cast<double>(runs) - 2.0 * dn * spread) / (2.0 * std::sqrt(dn) * spread);
    rep.runs_p = std::erfc(std::fabs(rep.runs_z) / std::sqrt(2.0));
  }
  if (!rep.runs_prerequisite) rep.runs_p = 0.0;

  rep.blocks = n / rep.block_size;
  double sum = 0;
  for (std::size_t b = 0; b < rep.blocks; ++b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < rep.block_size; ++i) c += bits.test(b * rep.block_size + i);
    const double frac = static_cast<double>(c) / static_cast<double>(rep.block_size) - 0.5;
    sum += frac * frac;
  }
  rep.block_chi2 = 4.0 * static_cast<double>(rep.block_size) * sum;
  rep.block_p = boost::math::gamma_q(static_cast<double>(rep.blocks) / 2.0, rep.block_chi2 / 2.0);
  return rep;
}

}  // namespace scsprbg::analysis
