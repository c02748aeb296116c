#pragma once

// Iterated-one-way-function generators: x_{i+1} = f(x_i), y_i = g(x_i).
//
// QUAD: f and g come from one random quadratic system S of kq*n equations in
// n variables. The first n values of S(x) are the next state, the remaining
// (kq-1)*n values are the output chunk.
//
// RSAPRG (Micali-Schnorr variant): x_{i+1} = x_i^e mod N, output chunk is the
// r least-significant bits of x_{i+1}.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scsprbg/errors.hpp"
#include "scsprbg/gf2.hpp"

namespace scsprbg {

// Secure-profile defaults (desk tests use far smaller, insecure sizes).
inline constexpr std::size_t kSecureQuadN = 160;
inline constexpr std::size_t kSecureQuadKq = 2;
inline constexpr std::size_t kSecureRsaBits = 6144;
inline constexpr std::uint64_t kRsaPrgOutputCapBits = std::uint64_t{1} << 32;

enum class GeneratorKind : std::uint8_t { kQuad = 0x02, kRsaPrg = 0x03 };

// ---------------------------------------------------------------------------
// QUAD

class QuadSystem {
 public:
  // Each equation is a term vector of terms_per_equation(n) bits:
  // [constant | x_0..x_{n-1} | x_i x_j for i<j in lexicographic order].
  QuadSystem(std::size_t n, std::size_t kq, std::vector<BitVec> equations)
      : n_(n), kq_(kq), equations_(std::move(equations)) {
    if (n_ < 1) throw ParamError("QuadSystem: n must be >= 1");
    if (kq_ < 2) throw ParamError("QuadSystem: expansion kq must be >= 2");
    if (equations_.size() != kq_ * n_) {
      throw ParamError("QuadSystem: expected " + std::to_string(kq_ * n_) +
                       " equations, got " + std::to_string(equations_.size()));
    }
    for (const auto& eq : equations_) {
      if (eq.size() != terms_per_equation(n_)) {
        throw WidthMismatch("QuadSystem: equation has wrong term count");
      }
    }
    build_monomial_table();
  }

  // Equation h draws bytes_per_equation(n) consecutive bytes from
  // splitmix_stream(seed, kq*n*bytes_per_equation(n)), LSB-first.
  static QuadSystem from_seed(std::size_t n, std::size_t kq, Seed64 seed) {
    const std::size_t per = bytes_per_equation(n);
    const auto bytes = splitmix_stream(seed, kq * n * per);
    return from_packed(n, kq, bytes);
  }

  static QuadSystem from_packed(std::size_t n, std::size_t kq,
                                std::span<const std::uint8_t> bytes) {
    const std::size_t per = bytes_per_equation(n);
    if (bytes.size() != kq * n * per) {
      throw FormatError("QuadSystem: packed coefficient size mismatch");
    }
    std::vector<BitVec> eqs;
    eqs.reserve(kq * n);
    for (std::size_t h = 0; h < kq * n; ++h) {
      eqs.push_back(BitVec::from_bytes(bytes.subspan(h * per, per), terms_per_equation(n)));
    }
    return QuadSystem(n, kq, std::move(eqs));
  }

  std::vector<std::uint8_t> packed() const {
    std::vector<std::uint8_t> out;
    out.reserve(equations_.size() * bytes_per_equation(n_));
    for (const auto& eq : equations_) {
      const auto b = eq.to_bytes();
      out.insert(out.end(), b.begin(), b.end());
    }
    return out;
  }

  static constexpr std::size_t num_pairs(std::size_t n) { return n * (n - 1) / 2; }
  static constexpr std::size_t terms_per_equation(std::size_t n) { return 1 + n + num_pairs(n); }
  static constexpr std::size_t bytes_per_equation(std::size_t n) {
    return bytes_for_bits(terms_per_equation(n));
  }
  // Position of x_i x_j (i < j) among the quadratic terms.
  static constexpr std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }
  static constexpr std::size_t linear_term(std::size_t i) { return 1 + i; }
  static constexpr std::size_t quadratic_term(std::size_t n, std::size_t i, std::size_t j) {
    return 1 + n + pair_index(n, i, j);
  }

  std::size_t n() const { return n_; }
  std::size_t kq() const { return kq_; }
  std::size_t outputs() const { return kq_ * n_; }
  const BitVec& equation(std::size_t h) const { return equations_[h]; }
  const std::vector<BitVec>& equations() const { return equations_; }

  // Evaluates S(x) by XOR-ing the equation-value column of every active
  // monomial. `out` must hold words_for_bits(outputs()) words.
  void eval_into(const BitVec& x, std::span<Word> out) const {
    if (x.size() != n_) throw WidthMismatch("QuadSystem::eval: |x| != n");
    const std::size_t s = stride_;
    const Word* tab = table_.data();
    std::copy_n(tab, s, out.begin());
    std::vector<std::size_t> active;
    active.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (x.test(i)) active.push_back(i);
    }
    Word* acc = out.data();
    for (std::size_t a = 0; a < active.size(); ++a) {
      const std::size_t i = active[a];
      detail::xor_words(acc, tab + linear_term(i) * s, s);
      const std::size_t row = 1 + n_ + i * n_ - i * (i + 1) / 2 - i - 1;
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        detail::xor_words(acc, tab + (row + active[b]) * s, s);
      }
    }
  }

  BitVec eval(const BitVec& x) const {
    BitVec out(outputs());
    eval_into(x, out.mutable_words());
    return out;
  }

  friend bool operator==(const QuadSystem& a, const QuadSystem& b) {
    return a.n_ == b.n_ && a.kq_ == b.kq_ && a.equations_ == b.equations_;
  }

 private:
  void build_monomial_table() {
    stride_ = words_for_bits(outputs());
    const std::size_t nterms = terms_per_equation(n_);
    table_.assign(nterms * stride_, 0);
    for (std::size_t h = 0; h < equations_.size(); ++h) {
      const auto w = equations_[h].words();
      for (std::size_t wi = 0; wi < w.size(); ++wi) {
        Word bits = w[wi];
        while (bits != 0) {
          const std::size_t t = wi * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
          bits &= bits - 1;
          table_[t * stride_ + h / kWordBits] |= Word{1} << (h % kWordBits);
        }
      }
    }
  }

  std::size_t n_;
  std::size_t kq_;
  std::vector<BitVec> equations_;
  // Monomial-major transpose: column t holds term t's coefficient in every equation.
  std::vector<Word> table_;
  std::size_t stride_ = 0;
};

// Term-by-term evaluator used as the reference for QuadSystem::eval.
inline BitVec quad_eval_naive(const QuadSystem& sys, const BitVec& x) {
  const std::size_t n = sys.n();
  if (x.size() != n) throw WidthMismatch("quad_eval_naive: |x| != n");
  BitVec out(sys.outputs());
  for (std::size_t h = 0; h < sys.outputs(); ++h) {
    const BitVec& eq = sys.equation(h);
    bool v = eq.test(0);
    for (std::size_t i = 0; i < n; ++i) {
      v ^= eq.test(QuadSystem::linear_term(i)) && x.test(i);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        v ^= eq.test(QuadSystem::quadratic_term(n, i, j)) && x.test(i) && x.test(j);
      }
    }
    out.set(h, v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// RSAPRG

class RsaPrgParams {
 public:
  RsaPrgParams(mpz_class modulus, unsigned e, unsigned r)
      : modulus_(std::move(modulus)), e_(e), r_(r) {
    if (modulus_ < 15 || mpz_even_p(modulus_.get_mpz_t())) {
      throw ParamError("RsaPrgParams: modulus must be odd and >= 15");
    }
    nbits_ = static_cast<unsigned>(mpz_sizeinbase(modulus_.get_mpz_t(), 2));
    if (e_ < 3) throw ParamError("RsaPrgParams: exponent must be >= 3");
    if (r_ < 1 || r_ >= nbits_) {
      throw ParamError("RsaPrgParams: need 1 <= r < nbits (" + std::to_string(nbits_) + ")");
    }
  }

  const mpz_class& modulus() const { return modulus_; }
  unsigned e() const { return e_; }
  unsigned r() const { return r_; }
  unsigned nbits() const { return nbits_; }

  friend bool operator==(const RsaPrgParams& a, const RsaPrgParams& b) {
    return a.modulus_ == b.modulus_ && a.e_ == b.e_ && a.r_ == b.r_;
  }

 private:
  mpz_class modulus_;
  unsigned e_;
  unsigned r_;
  unsigned nbits_ = 0;
};

// Low `nbits` bits of a non-negative integer.
inline BitVec low_bits(const mpz_class& x, std::size_t nbits) {
  const std::size_t need = std::max<std::size_t>(
      words_for_bits(nbits), words_for_bits(mpz_sizeinbase(x.get_mpz_t(), 2)));
  std::vector<Word> buf(need + 1, 0);
  std::size_t count = 0;
  mpz_export(buf.data(), &count, -1, sizeof(Word), 0, 0, x.get_mpz_t());
  return BitVec::from_words(buf, nbits);
}

// ---------------------------------------------------------------------------
// State and single steps

struct GeneratorState {
  GeneratorKind kind = GeneratorKind::kQuad;
  BitVec quad_x;       // kind == kQuad
  mpz_class rsa_x;     // kind == kRsaPrg
  std::uint64_t index = 0;

  static GeneratorState quad(BitVec x0) {
    GeneratorState s;
    s.kind = GeneratorKind::kQuad;
    s.quad_x = std::move(x0);
    return s;
  }
  static GeneratorState rsaprg(mpz_class x0) {
    GeneratorState s;
    s.kind = GeneratorKind::kRsaPrg;
    s.rsa_x = std::move(x0);
    return s;
  }
};

// One iteration's output y_i.
using TcsChunk = BitVec;

struct StepResult {
  GeneratorState state;
  TcsChunk chunk;
};

inline StepResult quad_step(const QuadSystem& sys, const GeneratorState& state) {
  if (state.kind != GeneratorKind::kQuad) throw ParamError("quad_step: state is not a QUAD state");
  if (state.quad_x.size() != sys.n()) throw WidthMismatch("quad_step: state width != n");
  const BitVec y = sys.eval(state.quad_x);
  StepResult res;
  res.state = GeneratorState::quad(y.slice(0, sys.n()));
  res.state.index = state.index + 1;
  res.chunk = y.slice(sys.n(), sys.outputs() - sys.n());
  return res;
}

inline StepResult rsaprg_step(const RsaPrgParams& params, const GeneratorState& state) {
  if (state.kind != GeneratorKind::kRsaPrg) {
    throw ParamError("rsaprg_step: state is not an RSAPRG state");
  }
  if (state.rsa_x < 0 || state.rsa_x >= params.modulus()) {
    throw WidthMismatch("rsaprg_step: state must lie in [0, N)");
  }
  mpz_class next;
  mpz_powm_ui(next.get_mpz_t(), state.rsa_x.get_mpz_t(), params.e(), params.modulus().get_mpz_t());
  StepResult res;
  res.chunk = low_bits(next, params.r());
  res.state = GeneratorState::rsaprg(std::move(next));
  res.state.index = state.index + 1;
  return res;
}

// ---------------------------------------------------------------------------
// Generator: a parameter set plus its evolving state.

class Generator {
 public:
  Generator(std::shared_ptr<const QuadSystem> sys, BitVec x0)
      : quad_(std::move(sys)), state_(GeneratorState::quad(std::move(x0))) {
    if (!quad_) throw ParamError("Generator: null QUAD system");
    if (state_.quad_x.size() != quad_->n()) throw WidthMismatch("Generator: |x0| != n");
    scratch_ = BitVec(quad_->outputs());
  }

  Generator(std::shared_ptr<const RsaPrgParams> params, mpz_class x0,
            std::uint64_t output_cap_bits = kRsaPrgOutputCapBits)
      : rsa_(std::move(params)),
        state_(GeneratorState::rsaprg(std::move(x0))),
        output_cap_bits_(output_cap_bits) {
    if (!rsa_) throw ParamError("Generator: null RSAPRG params");
    if (state_.rsa_x < 0 || state_.rsa_x >= rsa_->modulus()) {
      throw WidthMismatch("Generator: x0 must lie in [0, N)");
    }
  }

  GeneratorKind kind() const { return state_.kind; }
  const GeneratorState& state() const { return state_; }
  const QuadSystem* quad_system() const { return quad_.get(); }
  const RsaPrgParams* rsaprg_params() const { return rsa_.get(); }

  std::size_t chunk_bits() const {
    return quad_ ? quad_->outputs() - quad_->n() : rsa_->r();
  }

  TcsChunk next() {
    if (quad_) {
      // In-place variant of quad_step, reusing the evaluation buffer.
      quad_->eval_into(state_.quad_x, scratch_.mutable_words());
      const std::size_t n = quad_->n();
      TcsChunk chunk = scratch_.slice(n, quad_->outputs() - n);
      detail::copy_bits(scratch_.words().data(), 0, state_.quad_x.mutable_words().data(), 0, n);
      ++state_.index;
      return chunk;
    }
    produced_bits_ += rsa_->r();
    if (produced_bits_ > output_cap_bits_) {
      throw GuardError("RSAPRG output cap of " + std::to_string(output_cap_bits_) +
                       " bits exceeded");
    }
    auto res = rsaprg_step(*rsa_, state_);
    state_ = std::move(res.state);
    return std::move(res.chunk);
  }

 private:
  std::shared_ptr<const QuadSystem> quad_;
  std::shared_ptr<const RsaPrgParams> rsa_;
  GeneratorState state_;
  BitVec scratch_;
  std::uint64_t produced_bits_ = 0;
  std::uint64_t output_cap_bits_ = 0;
};

// s = y_1 || y_2 || ... truncated to nbits.
inline BitVec tcs_keystream(Generator gen, std::size_t nbits) {
  BitVec out(nbits);
  std::size_t off = 0;
  while (off < nbits) {
    const TcsChunk c = gen.next();
    const std::size_t take = std::min(c.size(), nbits - off);
    detail::copy_bits(c.words().data(), 0, out.mutable_words().data(), off, take);
    off += take;
  }
  return out;
}

inline BitVec tcs_keystream(const QuadSystem& sys, const BitVec& x0, std::size_t nbits) {
  return tcs_keystream(Generator(std::make_shared<const QuadSystem>(sys), x0), nbits);
}

inline BitVec tcs_keystream(const RsaPrgParams& params, const mpz_class& x0, std::size_t nbits) {
  return tcs_keystream(Generator(std::make_shared<const RsaPrgParams>(params), x0,
                                 ~std::uint64_t{0}),
                       nbits);
}

}  // namespace scsprbg
