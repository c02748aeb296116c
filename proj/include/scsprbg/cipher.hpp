#pragma once

// XOR stream encryption over a FIFO keystream, plus the "SCSC" frame format.
//
// Frame layout (little-endian):
//   "SCSC" | 0x01 | u64 stream_offset (bits) | u64 payload length | payload
// There is no authentication tag.

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scsprbg/errors.hpp"
#include "scsprbg/gf2.hpp"
#include "scsprbg/pipeline.hpp"

namespace scsprbg {

inline constexpr std::array<std::uint8_t, 4> kFrameMagic{'S', 'C', 'S', 'C'};
inline constexpr std::uint8_t kFrameVersion = 0x01;
inline constexpr std::size_t kFrameHeaderBytes = 4 + 1 + 8 + 8;

// Anything that hands out keystream bits in FIFO order with their offset.
template <typename T>
concept KeystreamReader = requires(T& r, std::size_t n) {
  { r.take(n) } -> std::same_as<TakenBits>;
  { r.head_offset() } -> std::convertible_to<std::uint64_t>;
};

inline std::vector<std::uint8_t> xor_apply(std::span<const std::uint8_t> data,
                                           std::span<const std::uint8_t> key) {
  if (data.size() != key.size()) {
    throw WidthMismatch("xor_apply: data has " + std::to_string(data.size()) +
                        " bytes, key has " + std::to_string(key.size()));
  }
  std::vector<std::uint8_t> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i] ^ key[i];
  return out;
}

struct CipherFrame {
  std::uint64_t stream_offset = 0;
  std::vector<std::uint8_t> payload;

  std::uint64_t length() const { return payload.size(); }
  friend bool operator==(const CipherFrame&, const CipherFrame&) = default;
};

template <KeystreamReader Reader>
CipherFrame seal(std::span<const std::uint8_t> plaintext, Reader& keystream) {
  TakenBits ks = keystream.take(plaintext.size() * 8);
  const auto key = ks.bits.to_bytes();
  return {ks.offset, xor_apply(plaintext, key)};
}

// The reader must be positioned exactly at frame.stream_offset.
template <KeystreamReader Reader>
std::vector<std::uint8_t> open(const CipherFrame& frame, Reader& keystream) {
  const std::uint64_t pos = keystream.head_offset();
  if (pos != frame.stream_offset) {
    throw DesyncError("open: frame starts at keystream bit " +
                      std::to_string(frame.stream_offset) + " but receiver is at bit " +
                      std::to_string(pos));
  }
  TakenBits ks = keystream.take(frame.payload.size() * 8);
  const auto key = ks.bits.to_bytes();
  return xor_apply(frame.payload, key);
}

namespace detail {

inline void put_u64le(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint64_t get_u64le(std::span<const std::uint8_t> in) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{in[static_cast<std::size_t>(i)]} << (8 * i);
  return v;
}

}  // namespace detail

inline void append_frame(std::vector<std::uint8_t>& out, const CipherFrame& frame) {
  out.insert(out.end(), kFrameMagic.begin(), kFrameMagic.end());
  out.push_back(kFrameVersion);
  detail::put_u64le(out, frame.stream_offset);
  detail::put_u64le(out, frame.payload.size());
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
}

inline std::vector<std::uint8_t> encode_frame(const CipherFrame& frame) {
  std::vector<std::uint8_t> out;
  out.reserve(kFrameHeaderBytes + frame.payload.size());
  append_frame(out, frame);
  return out;
}

// Parses a concatenation of zero or more frames.
inline std::vector<CipherFrame> decode_frames(std::span<const std::uint8_t> bytes) {
  std::vector<CipherFrame> frames;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < kFrameHeaderBytes) {
      throw FormatError("SCSC: truncated frame header at byte " + std::to_string(pos));
    }
    if (!std::equal(kFrameMagic.begin(), kFrameMagic.end(), bytes.begin() + static_cast<std::ptrdiff_t>(pos))) {
      throw FormatError("SCSC: bad magic at byte " + std::to_string(pos));
    }
    if (bytes[pos + 4] != kFrameVersion) {
      throw FormatError("SCSC: unsupported version " + std::to_string(bytes[pos + 4]));
    }
    CipherFrame f;
    f.stream_offset = detail::get_u64le(bytes.subspan(pos + 5, 8));
    const std::uint64_t len = detail::get_u64le(bytes.subspan(pos + 13, 8));
    pos += kFrameHeaderBytes;
    if (len > bytes.size() - pos) throw FormatError("SCSC: truncated payload");
    f.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                     bytes.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
    frames.push_back(std::move(f));
  }
  return frames;
}

}  // namespace scsprbg
