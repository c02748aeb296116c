#pragma once

// "SCSP" parameter files.
//
//   "SCSP" | 0x01 | kind | body          (integers little-endian)
//   kind 0x01 pick   : u32 k, u32 m, u64 seed, matrix columns, ceil(lrows/8) bytes each
//   kind 0x02 quad   : u32 n, u32 kq, u64 seed, per equation ceil(terms/8) bytes
//   kind 0x03 rsaprg : u32 nbits, u32 e, u32 r, modulus big-endian in ceil(nbits/8) bytes

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "scsprbg/errors.hpp"
#include "scsprbg/generators.hpp"
#include "scsprbg/pick.hpp"

namespace scsprbg {

inline constexpr std::array<std::uint8_t, 4> kParamsMagic{'S', 'C', 'S', 'P'};
inline constexpr std::uint8_t kParamsVersion = 0x01;

enum class ParamsKind : std::uint8_t { kPick = 0x01, kQuad = 0x02, kRsaPrg = 0x03 };

struct QuadRecord {
  QuadSystem system;
  Seed64 seed;
  friend bool operator==(const QuadRecord& a, const QuadRecord& b) {
    return a.system == b.system && a.seed == b.seed;
  }
};

using ParamsFile = std::variant<PickMatrix, QuadRecord, RsaPrgParams>;

namespace detail {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}
  std::uint8_t u8() { return need(1)[0]; }
  std::uint32_t u32() {
    auto b = need(4);
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < 4; ++i) v |= std::uint32_t{b[i]} << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    auto b = need(8);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
    return v;
  }
  std::span<const std::uint8_t> bytes(std::size_t n) { return need(n); }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::span<const std::uint8_t> need(std::size_t n) {
    if (remaining() < n) throw FormatError("SCSP: truncated file");
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

inline std::vector<std::uint8_t> modulus_bytes(const mpz_class& n, std::size_t len) {
  std::vector<std::uint8_t> raw(len + 1, 0);
  std::size_t count = 0;
  mpz_export(raw.data(), &count, 1, 1, 1, 0, n.get_mpz_t());
  std::vector<std::uint8_t> out(len, 0);
  std::copy_n(raw.begin(), count, out.begin() + static_cast<std::ptrdiff_t>(len - count));
  return out;
}

}  // namespace detail

inline ParamsKind params_kind(const ParamsFile& p) {
  return static_cast<ParamsKind>(p.index() + 1);
}

inline std::vector<std::uint8_t> serialize_params(const ParamsFile& params) {
  detail::ByteWriter w;
  w.bytes(kParamsMagic);
  w.u8(kParamsVersion);
  w.u8(static_cast<std::uint8_t>(params_kind(params)));
  if (const auto* pm = std::get_if<PickMatrix>(&params)) {
    w.u32(pm->params().k);
    w.u32(pm->params().m);
    w.u64(pm->seed().value);
    w.bytes(pm->packed());
  } else if (const auto* q = std::get_if<QuadRecord>(&params)) {
    w.u32(static_cast<std::uint32_t>(q->system.n()));
    w.u32(static_cast<std::uint32_t>(q->system.kq()));
    w.u64(q->seed.value);
    w.bytes(q->system.packed());
  } else {
    const auto& r = std::get<RsaPrgParams>(params);
    w.u32(r.nbits());
    w.u32(r.e());
    w.u32(r.r());
    w.bytes(detail::modulus_bytes(r.modulus(), bytes_for_bits(r.nbits())));
  }
  return w.take();
}

inline ParamsFile parse_params(std::span<const std::uint8_t> bytes) {
  detail::ByteReader rd(bytes);
  const auto magic = rd.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), kParamsMagic.begin())) {
    throw FormatError("SCSP: bad magic");
  }
  if (const auto v = rd.u8(); v != kParamsVersion) {
    throw FormatError("SCSP: unsupported version " + std::to_string(v));
  }
  const auto kind = rd.u8();
  auto finish = [&](auto value) -> ParamsFile {
    if (rd.remaining() != 0) throw FormatError("SCSP: trailing bytes");
    return value;
  };
  try {
    switch (static_cast<ParamsKind>(kind)) {
      case ParamsKind::kPick: {
        PickParams p{rd.u32(), rd.u32()};
        p.validate();
        const Seed64 seed{rd.u64()};
        const std::size_t len = bytes_for_bits(p.lrows()) * p.ncols();
        return finish(PickMatrix::from_packed(p, rd.bytes(len), seed));
      }
      case ParamsKind::kQuad: {
        const std::uint32_t n = rd.u32();
        const std::uint32_t kq = rd.u32();
        if (n < 1 || kq < 2 || n > 4096 || kq > 64) throw FormatError("SCSP: bad QUAD sizes");
        const Seed64 seed{rd.u64()};
        const std::size_t len = std::size_t{kq} * n * QuadSystem::bytes_per_equation(n);
        return finish(QuadRecord{QuadSystem::from_packed(n, kq, rd.bytes(len)), seed});
      }
      case ParamsKind::kRsaPrg: {
        const std::uint32_t nbits = rd.u32();
        const std::uint32_t e = rd.u32();
        const std::uint32_t r = rd.u32();
        const auto mod = rd.bytes(bytes_for_bits(nbits));
        mpz_class n;
        mpz_import(n.get_mpz_t(), mod.size(), 1, 1, 1, 0, mod.data());
        RsaPrgParams params(n, e, r);
        if (params.nbits() != nbits) throw FormatError("SCSP: modulus bit length mismatch");
        return finish(std::move(params));
      }
    }
  } catch (const ParamError& e) {
    throw FormatError(std::string("SCSP: invalid parameters: ") + e.what());
  }
  throw FormatError("SCSP: unknown kind byte " + std::to_string(kind));
}

}  // namespace scsprbg
