#pragma once

// pick(k, m): the weakly one-way expander.
//
// A public matrix M has lrows = m * 2^(k-1) rows and m blocks of 2^k columns.
// The m*k input bits are cut into m segments of k bits; segment i (first bit
// is the least significant) names column j_i of block i, and the output is
// the XOR of the m selected columns.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scsprbg/errors.hpp"
#include "scsprbg/gf2.hpp"

namespace scsprbg {

struct PickParams {
  std::uint32_t k = 1;  // bits per segment
  std::uint32_t m = 1;  // number of blocks

  static constexpr std::uint32_t kMaxK = 30;

  void validate() const {
    if (k < 1 || k > kMaxK) throw ParamError("PickParams: k must be in [1, 30]");
    if (m < 1) throw ParamError("PickParams: m must be >= 1");
  }

  std::size_t block_cols() const { return std::size_t{1} << k; }
  std::size_t lrows() const { return std::size_t{m} << (k - 1); }
  std::size_t ncols() const { return std::size_t{m} << k; }
  std::size_t input_bits() const { return std::size_t{m} * k; }
  std::size_t matrix_bytes() const { return lrows() * ncols() / 8; }

  // The (l, h) form: h = k, 2^(l-h) = m. Requires m to be a power of two.
  static PickParams from_lh(std::uint32_t l, std::uint32_t h) {
    if (h < 1 || l < h) throw ParamError("PickParams::from_lh: need 1 <= h <= l");
    PickParams p{h, std::uint32_t{1} << (l - h)};
    p.validate();
    return p;
  }

  friend bool operator==(const PickParams&, const PickParams&) = default;
};

struct MultiplicationFactor {
  std::uint64_t num = 1;  // 2^(k-1)
  std::uint64_t den = 1;  // k
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  MultiplicationFactor reduced() const {
    const auto g = std::gcd(num, den);
    return {num / g, den / g};
  }
};

// R = 2^(k-1) / k, output bits per input bit. Kept unreduced (k=6 -> 32/6).
inline MultiplicationFactor multiplication_factor(const PickParams& p) {
  p.validate();
  return {std::uint64_t{1} << (p.k - 1), p.k};
}

class PickMatrix {
 public:
  PickMatrix(PickParams params, BitMatrix mat, Seed64 seed = {})
      : params_(params), mat_(std::move(mat)), seed_(seed) {
    params_.validate();
    if (mat_.rows() != params_.lrows() || mat_.cols() != params_.ncols()) {
      throw WidthMismatch("PickMatrix: matrix is " + std::to_string(mat_.rows()) + "x" +
                          std::to_string(mat_.cols()) + ", expected " +
                          std::to_string(params_.lrows()) + "x" +
                          std::to_string(params_.ncols()));
    }
  }

  const PickParams& params() const { return params_; }
  const BitMatrix& matrix() const { return mat_; }
  Seed64 seed() const { return seed_; }

  // Column-major, ceil(lrows/8) bytes per column, LSB-first.
  std::vector<std::uint8_t> packed() const {
    const std::size_t per = bytes_for_bits(params_.lrows());
    std::vector<std::uint8_t> out(per * params_.ncols());
    for (std::size_t c = 0; c < params_.ncols(); ++c) {
      const auto w = mat_.column_words(c);
      for (std::size_t b = 0; b < per; ++b) {
        out[c * per + b] = static_cast<std::uint8_t>(w[b / 8] >> (8 * (b % 8)));
      }
    }
    return out;
  }

  static PickMatrix from_packed(PickParams params, std::span<const std::uint8_t> bytes,
                                Seed64 seed = {}) {
    params.validate();
    const std::size_t per = bytes_for_bits(params.lrows());
    if (bytes.size() != per * params.ncols()) {
      throw FormatError("PickMatrix: packed matrix size mismatch");
    }
    BitMatrix mat(params.lrows(), params.ncols());
    for (std::size_t c = 0; c < params.ncols(); ++c) {
      auto w = mat.mutable_column_words(c);
      for (std::size_t b = 0; b < per; ++b) {
        w[b / 8] |= Word{bytes[c * per + b]} << (8 * (b % 8));
      }
      const std::size_t rem = params.lrows() % kWordBits;
      if (rem != 0) w.back() &= (Word{1} << rem) - 1;
    }
    return PickMatrix(params, std::move(mat), seed);
  }

  friend bool operator==(const PickMatrix& a, const PickMatrix& b) {
    return a.params_ == b.params_ && a.mat_ == b.mat_;
  }

 private:
  PickParams params_;
  BitMatrix mat_;
  Seed64 seed_;
};

inline PickMatrix pick_matrix_from_seed(const PickParams& params, Seed64 seed) {
  params.validate();
  const std::size_t per = bytes_for_bits(params.lrows());
  const auto bytes = splitmix_stream(seed, per * params.ncols());
  return PickMatrix::from_packed(params, bytes, seed);
}

// Hot path: `out` must hold words_for_bits(lrows) words.
inline void pick_expand_into(const PickMatrix& pm, const BitVec& input, std::span<Word> out) {
  const PickParams& p = pm.params();
  if (input.size() != p.input_bits()) {
    throw WidthMismatch("pick_expand: input has " + std::to_string(input.size()) +
                        " bits, expected " + std::to_string(p.input_bits()));
  }
  const BitMatrix& mat = pm.matrix();
  const std::size_t stride = mat.stride();
  const Word* base = mat.data().data();
  Word* acc = out.data();
  std::fill(out.begin(), out.end(), Word{0});
  const Word* in = input.words().data();
  for (std::size_t i = 0; i < p.m; ++i) {
    const std::size_t j = detail::read_bits(in, i * p.k, p.k);
    const Word* col = base + ((i << p.k) + j) * stride;
    detail::xor_words(acc, col, stride);
  }
}

inline BitVec pick_expand(const PickMatrix& pm, const BitVec& input) {
  BitVec out(pm.params().lrows());
  pick_expand_into(pm, input, out.mutable_words());
  return out;
}

// Iterated expander; each stage's output width must equal the next stage's
// input width.
class PickChain {
 public:
  PickChain() = default;
  explicit PickChain(std::vector<PickMatrix> stages) : stages_(std::move(stages)) {
    if (stages_.empty()) throw ParamError("PickChain: at least one stage required");
    for (std::size_t s = 0; s + 1 < stages_.size(); ++s) {
      const auto out = stages_[s].params().lrows();
      const auto in = stages_[s + 1].params().input_bits();
      if (out != in) {
        throw WidthMismatch("PickChain: stage " + std::to_string(s) + " outputs " +
                            std::to_string(out) + " bits but stage " + std::to_string(s + 1) +
                            " takes " + std::to_string(in));
      }
    }
  }

  const std::vector<PickMatrix>& stages() const { return stages_; }
  bool empty() const { return stages_.empty(); }
  std::size_t input_bits() const { return stages_.front().params().input_bits(); }
  std::size_t output_bits() const { return stages_.back().params().lrows(); }

 private:
  std::vector<PickMatrix> stages_;
};

inline BitVec pick_chain_expand(const PickChain& chain, const BitVec& input) {
  if (chain.empty()) throw ParamError("pick_chain_expand: empty chain");
  BitVec cur = pick_expand(chain.stages().front(), input);
  for (std::size_t s = 1; s < chain.stages().size(); ++s) {
    cur = pick_expand(chain.stages()[s], cur);
  }
  return cur;
}

}  // namespace scsprbg
