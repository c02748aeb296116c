#pragma once

// Security-bound calculators for the two base generators.
//
// RSAPRG: a (T, delta) distinguisher for (n, e, r, l)-RSAPRG yields an
// inverter for (n, e, r, w)-CopRSA with
//   C_S   = 64 (l/delta)^2 n log(n)
//   T_INV = C_S (T + (l/r) log(e) n^2)        (O(.) dropped)
//   eps   = delta/9 - 4 / 2^(n/2)
//   w     = 3 log(2l/delta) + 5
//
// QUAD: a (T, eps) distinguisher on L = lambda (kq-1) n keystream bits yields
// a preimage finder succeeding with probability >= eps / (2^3 lambda) in time
//   T' = (2^7 n^2 lambda^2 / eps^2) (T + (lambda+2) T_S + log(2^7 n lambda^2 / eps^2))
//        + (2^7 n lambda^2 / eps^2) T_S
//
// log is base 2 unless the input says otherwise.

#include <cmath>
#include <string>

#include "scsprbg/errors.hpp"

namespace scsprbg::analysis {

enum class LogBase { kTwo, kE };

inline long double log_in(LogBase base, long double x) {
  return base == LogBase::kTwo ? std::log2(x) : std::log(x);
}

struct RsaPrgBoundInput {
  double n = 6144;         // modulus bits
  double e = 3;
  double r = 1024;         // output bits per iteration
  double l = 4294967296.0; // total output bits
  double t = 0;            // distinguisher time T
  double delta = 0.01;     // distinguisher advantage
  LogBase log_base = LogBase::kTwo;
};

struct RsaPrgBoundOutput {
  double c_s = 0;
  double t_inv = 0;
  double eps_inv = 0;
  double w = 0;
  double log10_c_s = 0;
  double log10_t_inv = 0;
  // The reduction is stated for n >= 2^9 only.
  bool below_theorem_range = false;
};

inline RsaPrgBoundOutput rsaprg_bound(const RsaPrgBoundInput& in) {
  if (!(in.delta > 0 && in.delta <= 1)) throw ParamError("rsaprg_bound: delta must be in (0, 1]");
  if (!(in.n >= 2 && in.e >= 3 && in.r >= 1 && in.l > 0 && in.t >= 0)) {
    throw ParamError("rsaprg_bound: need n >= 2, e >= 3, r >= 1, l > 0, T >= 0");
  }
  const long double n = in.n;
  const long double ratio = static_cast<long double>(in.l) / in.delta;
  const long double logn = log_in(in.log_base, n);
  const long double c_s = 64.0L * ratio * ratio * n * logn;
  const long double inner =
      static_cast<long double>(in.t) +
      (static_cast<long double>(in.l) / in.r) * log_in(in.log_base, in.e) * n * n;

  RsaPrgBoundOutput out;
  out.c_s = static_cast<double>(c_s);
  out.t_inv = static_cast<double>(c_s * inner);
  out.eps_inv = static_cast<double>(static_cast<long double>(in.delta) / 9.0L -
                                    4.0L * std::exp2(-n / 2.0L));
  out.w = static_cast<double>(3.0L * log_in(in.log_base, 2.0L * ratio) + 5.0L);
  out.log10_c_s = static_cast<double>(std::log10(64.0L) + 2.0L * std::log10(ratio) +
                                      std::log10(n) + std::log10(logn));
  out.log10_t_inv = out.log10_c_s + static_cast<double>(std::log10(inner));
  out.below_theorem_range = in.n < 512;
  return out;
}

struct QuadBoundInput {
  double n = 160;
  double kq = 2;
  double lambda = 1;
  double t_s = 0;   // time of one iteration
  double t = 0;     // distinguisher time
  double eps = 1;   // distinguisher advantage
  LogBase log_base = LogBase::kTwo;
};

struct QuadBoundOutput {
  double keystream_bits = 0;  // L
  double t_prime = 0;
  double log10_t_prime = 0;
  double success_lower_bound = 0;
};

inline QuadBoundOutput quad_bound(const QuadBoundInput& in) {
  if (!(in.eps > 0 && in.eps <= 1)) throw ParamError("quad_bound: eps must be in (0, 1]");
  if (!(in.lambda >= 1 && in.n >= 1 && in.kq >= 2 && in.t >= 0 && in.t_s >= 0)) {
    throw ParamError("quad_bound: need lambda >= 1, n >= 1, kq >= 2, T >= 0, T_S >= 0");
  }
  const long double n = in.n;
  const long double lam = in.lambda;
  const long double eps2 = static_cast<long double>(in.eps) * in.eps;
  const long double a = 128.0L * n * lam * lam / eps2;  // 2^7 n lambda^2 / eps^2
  const long double inner = static_cast<long double>(in.t) + (lam + 2.0L) * in.t_s +
                            log_in(in.log_base, a);
  const long double t_prime = n * a * inner + a * in.t_s;

  QuadBoundOutput out;
  out.keystream_bits = static_cast<double>(lam * (in.kq - 1.0L) * n);
  out.t_prime = static_cast<double>(t_prime);
  out.log10_t_prime = static_cast<double>(std::log10(t_prime));
  out.success_lower_bound = static_cast<double>(in.eps / (8.0L * lam));
  return out;
}

}  // namespace scsprbg::analysis
