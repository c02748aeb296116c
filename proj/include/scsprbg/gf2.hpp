#pragma once

// Packed GF(2) vectors and column-major matrices, Gaussian elimination, and
// the SplitMix64 byte stream used to derive public parameters from a seed.
//
// Bit convention everywhere: bit i lives in word i / 64 at position i % 64,
// and bytes are packed LSB-first (bit 8b + j is bit j of byte b).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scsprbg/errors.hpp"

namespace scsprbg {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for_bits(std::size_t nbits) {
  return (nbits + kWordBits - 1) / kWordBits;
}

constexpr std::size_t bytes_for_bits(std::size_t nbits) {
  return (nbits + 7) / 8;
}

namespace detail {

// Reads `width` (<= 64) bits starting at bit `off`. Bits past the end of the
// buffer must not be requested.
inline Word read_bits(const Word* src, std::size_t off, unsigned width) {
  if (width == 0) return 0;
  const std::size_t w = off / kWordBits;
  const unsigned s = static_cast<unsigned>(off % kWordBits);
  Word v = src[w] >> s;
#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Warray-bounds"  // gcc 11 misses the precondition
#endif
  if (s != 0 && s + width > kWordBits) v |= src[w + 1] << (kWordBits - s);
#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic pop
#endif
  if (width < kWordBits) v &= (Word{1} << width) - 1;
  return v;
}

// Copies n bits from src[src_off..] to dst[dst_off..]; other dst bits kept.
inline void copy_bits(const Word* src, std::size_t src_off, Word* dst,
                      std::size_t dst_off, std::size_t n) {
  while (n > 0) {
    const unsigned ds = static_cast<unsigned>(dst_off % kWordBits);
    const unsigned take =
        static_cast<unsigned>(std::min<std::size_t>(n, kWordBits - ds));
    const Word v = read_bits(src, src_off, take);
    const Word mask = (take == kWordBits) ? ~Word{0}
                                          : (((Word{1} << take) - 1) << ds);
    Word& d = dst[dst_off / kWordBits];
    d = (d & ~mask) | ((v << ds) & mask);
    src_off += take;
    dst_off += take;
    n -= take;
  }
}

inline void xor_words(Word* dst, const Word* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Seed-derived byte stream

struct Seed64 {
  std::uint64_t value = 0;
  friend bool operator==(Seed64, Seed64) = default;
};

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Each SplitMix64 output is emitted as 8 little-endian bytes; the final
// output is truncated so exactly nbytes are returned.
inline std::vector<std::uint8_t> splitmix_stream(Seed64 seed,
                                                 std::size_t nbytes) {
  std::vector<std::uint8_t> out(nbytes);
  SplitMix64 gen(seed.value);
  std::size_t i = 0;
  while (i < nbytes) {
    const std::uint64_t z = gen.next();
    for (int b = 0; b < 8 && i < nbytes; ++b, ++i) {
      out[i] = static_cast<std::uint8_t>(z >> (8 * b));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// BitVec

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits)
      : nbits_(nbits), words_(words_for_bits(nbits), 0) {}

  // Uses the first nbits of `bytes` (LSB-first); extra bytes are ignored.
  static BitVec from_bytes(std::span<const std::uint8_t> bytes,
                           std::size_t nbits) {
    if (bytes.size() * 8 < nbits) {
      throw WidthMismatch("BitVec::from_bytes: not enough bytes for " +
                          std::to_string(nbits) + " bits");
    }
    BitVec v(nbits);
    const std::size_t nb = bytes_for_bits(nbits);
    for (std::size_t b = 0; b < nb; ++b) {
      v.words_[b / 8] |= Word{bytes[b]} << (8 * (b % 8));
    }
    v.trim();
    return v;
  }

  static BitVec from_words(std::span<const Word> words, std::size_t nbits) {
    if (words.size() * kWordBits < nbits) {
      throw WidthMismatch("BitVec::from_words: not enough words");
    }
    BitVec v(nbits);
    std::copy_n(words.begin(), v.words_.size(), v.words_.begin());
    v.trim();
    return v;
  }

  // "1010" -> bit0=1, bit1=0, bit2=1, bit3=0.
  static BitVec from_string(std::string_view s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(i);
      } else if (s[i] != '0') {
        throw FormatError("BitVec::from_string: expected only 0/1");
      }
    }
    return v;
  }

  static BitVec from_uint(std::uint64_t value, std::size_t nbits) {
    BitVec v(nbits);
    if (!v.words_.empty()) v.words_[0] = value;
    v.trim();
    return v;
  }

  static BitVec concat(std::span<const BitVec> parts) {
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    BitVec out(total);
    std::size_t off = 0;
    for (const auto& p : parts) {
      detail::copy_bits(p.words_.data(), 0, out.words_.data(), off, p.size());
      off += p.size();
    }
    return out;
  }

  std::size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool test(std::size_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  void set(std::size_t i, bool value = true) {
    const Word bit = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= bit;
    } else {
      words_[i / kWordBits] &= ~bit;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  std::span<const Word> words() const { return words_; }
  // Writers must leave the bits past size() zero (call trim() if unsure).
  std::span<Word> mutable_words() { return words_; }

  void trim() {
    const std::size_t rem = nbits_ % kWordBits;
    if (rem != 0) words_.back() &= (Word{1} << rem) - 1;
  }

  // Up to 64 bits starting at pos, bit pos in the result's LSB.
  Word extract(std::size_t pos, unsigned width) const {
    if (pos + width > nbits_) throw WidthMismatch("BitVec::extract out of range");
    return detail::read_bits(words_.data(), pos, width);
  }

  BitVec slice(std::size_t pos, std::size_t n) const {
    if (pos + n > nbits_) throw WidthMismatch("BitVec::slice out of range");
    BitVec out(n);
    detail::copy_bits(words_.data(), pos, out.words_.data(), 0, n);
    return out;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  std::vector<std::uint8_t> to_bytes() const {
    std::vector<std::uint8_t> out(bytes_for_bits(nbits_));
    for (std::size_t b = 0; b < out.size(); ++b) {
      out[b] = static_cast<std::uint8_t>(words_[b / 8] >> (8 * (b % 8)));
    }
    return out;
  }

  std::string to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

  BitVec& operator^=(const BitVec& other) {
    if (other.nbits_ != nbits_) {
      throw WidthMismatch("BitVec xor: length " + std::to_string(nbits_) +
                          " vs " + std::to_string(other.nbits_));
    }
    detail::xor_words(words_.data(), other.words_.data(), words_.size());
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  // GF(2) inner product.
  bool dot(const BitVec& other) const {
    if (other.nbits_ != nbits_) throw WidthMismatch("BitVec::dot: length mismatch");
    Word acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
  }

  friend bool operator==(const BitVec&, const BitVec&) = default;
  friend auto operator<=>(const BitVec& a, const BitVec& b) {
    if (auto c = a.nbits_ <=> b.nbits_; c != 0) return c;
    return std::lexicographical_compare_three_way(
        a.words_.rbegin(), a.words_.rend(), b.words_.rbegin(), b.words_.rend());
  }

 private:
  std::size_t nbits_ = 0;
  std::vector<Word> words_;
};

inline BitVec bitvec_xor(const BitVec& a, const BitVec& b) { return a ^ b; }

// ---------------------------------------------------------------------------
// BitMatrix (column-major; every column padded to whole words)

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t nrows, std::size_t ncols)
      : nrows_(nrows),
        ncols_(ncols),
        stride_(words_for_bits(nrows)),
        data_(stride_ * ncols, 0) {}

  static BitMatrix from_columns(std::span<const BitVec> columns, std::size_t nrows) {
    BitMatrix m(nrows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != nrows) {
        throw WidthMismatch("BitMatrix::from_columns: column " + std::to_string(c) +
                            " has wrong length");
      }
      std::copy(columns[c].words().begin(), columns[c].words().end(),
                m.data_.begin() + static_cast<std::ptrdiff_t>(c * m.stride_));
    }
    return m;
  }

  static BitMatrix from_rows(std::span<const BitVec> rows, std::size_t ncols) {
    BitMatrix m(rows.size(), ncols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != ncols) {
        throw WidthMismatch("BitMatrix::from_rows: row " + std::to_string(r) +
                            " has wrong length");
      }
      for (std::size_t c = 0; c < ncols; ++c) {
        if (rows[r].test(c)) m.set(r, c);
      }
    }
    return m;
  }

  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }
  std::size_t stride() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[c * stride_ + r / kWordBits] >> (r % kWordBits)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) {
    Word& w = data_[c * stride_ + r / kWordBits];
    const Word bit = Word{1} << (r % kWordBits);
    w = value ? (w | bit) : (w & ~bit);
  }

  std::span<const Word> column_words(std::size_t c) const {
    return {data_.data() + c * stride_, stride_};
  }
  std::span<Word> mutable_column_words(std::size_t c) {
    return {data_.data() + c * stride_, stride_};
  }
  std::span<const Word> data() const { return data_; }

  BitVec column(std::size_t c) const { return BitVec::from_words(column_words(c), nrows_); }

  BitVec row(std::size_t r) const {
    BitVec v(ncols_);
    for (std::size_t c = 0; c < ncols_; ++c) {
      if (get(r, c)) v.set(c);
    }
    return v;
  }

  std::vector<BitVec> to_rows() const {
    std::vector<BitVec> out;
    out.reserve(nrows_);
    for (std::size_t r = 0; r < nrows_; ++r) out.push_back(row(r));
    return out;
  }

  // Matrix-vector product over GF(2): XOR of the columns selected by x.
  BitVec operator*(const BitVec& x) const {
    if (x.size() != ncols_) throw WidthMismatch("BitMatrix * BitVec: width mismatch");
    BitVec out(nrows_);
    auto acc = out.mutable_words();
    for (std::size_t c = 0; c < ncols_; ++c) {
      if (x.test(c)) detail::xor_words(acc.data(), data_.data() + c * stride_, stride_);
    }
    return out;
  }

  friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) {
    if (a.nrows_ != b.nrows_ || a.ncols_ != b.ncols_) {
      throw WidthMismatch("BitMatrix xor: dimension mismatch");
    }
    detail::xor_words(a.data_.data(), b.data_.data(), a.data_.size());
    return a;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

// ---------------------------------------------------------------------------
// Gaussian elimination

enum class Solvability { kNoRhs, kConsistent, kInconsistent };

struct GaussResult {
  // Reduced row echelon form: `rank` rows of width ncols, row i has its
  // leading one at pivots[i] and zeros in every other pivot column.
  std::vector<BitVec> echelon;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  Solvability status = Solvability::kNoRhs;
  // rhs transformed alongside `echelon` (length rank); only with rhs.
  BitVec reduced_rhs;
  // Particular solution (free variables zero) and a nullspace basis; only
  // with a consistent rhs.
  std::optional<BitVec> solution;
  std::vector<BitVec> nullspace;

  bool consistent() const { return status != Solvability::kInconsistent; }
};

// Row-oriented elimination; each row has width ncols.
inline GaussResult gf2_gauss_rows(std::span<const BitVec> rows, std::size_t ncols,
                                  const BitVec* rhs = nullptr,
                                  bool want_nullspace = true) {
  if (rhs != nullptr && rhs->size() != rows.size()) {
    throw WidthMismatch("gf2_gauss: rhs length " + std::to_string(rhs->size()) +
                        " != rows " + std::to_string(rows.size()));
  }
  const std::size_t width = ncols + (rhs != nullptr ? 1 : 0);
  const std::size_t nw = words_for_bits(width);
  const std::size_t nrows = rows.size();

  // Flat augmented row storage.
  std::vector<Word> a(nrows * nw, 0);
  for (std::size_t r = 0; r < nrows; ++r) {
    if (rows[r].size() != ncols) throw WidthMismatch("gf2_gauss: ragged rows");
    auto src = rows[r].words();
    std::copy(src.begin(), src.end(), a.begin() + static_cast<std::ptrdiff_t>(r * nw));
    if (rhs != nullptr && rhs->test(r)) {
      a[r * nw + ncols / kWordBits] |= Word{1} << (ncols % kWordBits);
    }
  }
  auto row_ptr = [&](std::size_t r) { return a.data() + r * nw; };

  GaussResult res;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
    const std::size_t cw = c / kWordBits;
    const Word bit = Word{1} << (c % kWordBits);
    std::size_t p = rank;
    while (p < nrows && (row_ptr(p)[cw] & bit) == 0) ++p;
    if (p == nrows) continue;
    if (p != rank) std::swap_ranges(row_ptr(p), row_ptr(p) + nw, row_ptr(rank));
    const Word* prow = row_ptr(rank);
    // Pivot row is zero left of c, so XOR can start at word cw.
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == rank) continue;
      Word* rr = row_ptr(r);
      if (rr[cw] & bit) detail::xor_words(rr + cw, prow + cw, nw - cw);
    }
    res.pivots.push_back(c);
    ++rank;
  }
  res.rank = rank;

  res.echelon.reserve(rank);
  for (std::size_t r = 0; r < rank; ++r) {
    res.echelon.push_back(BitVec::from_words({row_ptr(r), nw}, ncols));
  }
  if (rhs == nullptr) return res;

  auto rhs_bit = [&](std::size_t r) {
    return (row_ptr(r)[ncols / kWordBits] >> (ncols % kWordBits)) & 1U;
  };
  res.reduced_rhs = BitVec(rank);
  for (std::size_t r = 0; r < rank; ++r) res.reduced_rhs.set(r, rhs_bit(r));
  res.status = Solvability::kConsistent;
  for (std::size_t r = rank; r < nrows; ++r) {
    if (rhs_bit(r)) {
      res.status = Solvability::kInconsistent;
      return res;
    }
  }

  BitVec x(ncols);
  for (std::size_t r = 0; r < rank; ++r) x.set(res.pivots[r], rhs_bit(r));
  res.solution = std::move(x);

  if (want_nullspace) {
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : res.pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < ncols; ++f) {
      if (is_pivot[f]) continue;
      BitVec v(ncols);
      v.set(f);
      for (std::size_t r = 0; r < rank; ++r) {
        if (res.echelon[r].test(f)) v.set(res.pivots[r]);
      }
      res.nullspace.push_back(std::move(v));
    }
  }
  return res;
}

inline GaussResult gf2_gauss(const BitMatrix& mat, const std::optional<BitVec>& rhs = std::nullopt) {
  const auto rows = mat.to_rows();
  return gf2_gauss_rows(rows, mat.cols(), rhs ? &*rhs : nullptr);
}

}  // namespace scsprbg
