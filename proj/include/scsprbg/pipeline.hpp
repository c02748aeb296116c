#pragma once

// Generator -> expander composition (z_i = w(y_i)) and the FIFO keystream
// buffer that decouples production from consumption.

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "scsprbg/errors.hpp"
#include "scsprbg/generators.hpp"
#include "scsprbg/gf2.hpp"
#include "scsprbg/pick.hpp"

namespace scsprbg {

// A generator with an optional expander chain. Without the chain it is the
// plain (correspondent) generator and next() returns one generator chunk.
//
// With the chain, generator output is staged as a bit FIFO: each next()
// consumes exactly chain.input_bits() generator bits, in order, and an
// expander input may span two generator chunks.
class Pipeline {
 public:
  explicit Pipeline(Generator gen, std::optional<PickChain> expander = std::nullopt)
      : gen_(std::move(gen)), chain_(std::move(expander)) {
    if (chain_) {
      if (chain_->empty()) throw ParamError("Pipeline: empty expander chain");
      const std::size_t in = chain_->input_bits();
      stage_.assign(words_for_bits(in + gen_.chunk_bits()) + 1, 0);
      scratch_.assign(stage_.size(), 0);
    }
  }

  bool has_expander() const { return chain_.has_value(); }
  const Generator& generator() const { return gen_; }
  const std::optional<PickChain>& expander() const { return chain_; }

  // Width of each next() result.
  std::size_t chunk_bits() const {
    return chain_ ? chain_->output_bits() : gen_.chunk_bits();
  }
  // Generator bits consumed per next().
  std::size_t generator_bits_per_chunk() const {
    return chain_ ? chain_->input_bits() : gen_.chunk_bits();
  }

  BitVec next() {
    if (!chain_) return gen_.next();
    const std::size_t in = chain_->input_bits();
    while (staged_ < in) {
      const TcsChunk c = gen_.next();
      detail::copy_bits(c.words().data(), 0, stage_.data(), staged_, c.size());
      staged_ += c.size();
    }
    const BitVec input = BitVec::from_words(stage_, in);
    const std::size_t rest = staged_ - in;
    std::fill(scratch_.begin(), scratch_.end(), Word{0});
    detail::copy_bits(stage_.data(), in, scratch_.data(), 0, rest);
    stage_.swap(scratch_);
    staged_ = rest;
    return pick_chain_expand(*chain_, input);
  }

 private:
  Generator gen_;
  std::optional<PickChain> chain_;
  std::vector<Word> stage_;
  std::vector<Word> scratch_;
  std::size_t staged_ = 0;
};

inline BitVec pipeline_next(Pipeline& p) { return p.next(); }

struct TakenBits {
  BitVec bits;
  std::uint64_t offset = 0;  // absolute bit index of bits[0] in the stream
};

// Bounded single-producer / single-consumer bit FIFO.
//
// Every operation takes the internal lock, so produce and take may run on
// different threads. produce() blocks while full and take() blocks while
// empty; the try_ variants never block. Bits leave in exactly the order they
// entered, and head_offset() counts every bit ever taken.
class KeystreamBuffer {
 public:
  static constexpr std::size_t kDefaultCapacityBits = std::size_t{1} << 23;

  explicit KeystreamBuffer(std::size_t capacity_bits = kDefaultCapacityBits)
      : capacity_(capacity_bits), ring_(words_for_bits(capacity_bits) + 1, 0) {
    if (capacity_ == 0) throw ParamError("KeystreamBuffer: capacity must be positive");
    ring_bits_ = ring_.size() * kWordBits;
  }

  KeystreamBuffer(const KeystreamBuffer&) = delete;
  KeystreamBuffer& operator=(const KeystreamBuffer&) = delete;

  // False (nothing appended) when the chunk does not fit: back-pressure.
  bool try_produce(const BitVec& chunk) {
    check_chunk(chunk);
    {
      std::lock_guard lk(mu_);
      if (closed_) throw Error("KeystreamBuffer: produce after close");
      if (size_ + chunk.size() > capacity_) return false;
      append_locked(chunk);
    }
    cv_.notify_all();
    return true;
  }

  // Blocks while full. Returns false if the buffer was closed meanwhile.
  bool produce(const BitVec& chunk) {
    check_chunk(chunk);
    {
      std::unique_lock lk(mu_);
      cv_.wait(lk, [&] { return closed_ || size_ + chunk.size() <= capacity_; });
      if (closed_) return false;
      append_locked(chunk);
    }
    cv_.notify_all();
    return true;
  }

  std::optional<TakenBits> try_take(std::size_t nbits) {
    check_take(nbits);
    std::optional<TakenBits> out;
    {
      std::lock_guard lk(mu_);
      if (size_ < nbits) return std::nullopt;
      out = take_locked(nbits);
    }
    cv_.notify_all();
    return out;
  }

  // Blocks until nbits are buffered. Throws if the buffer is closed first.
  TakenBits take(std::size_t nbits) {
    check_take(nbits);
    TakenBits out;
    {
      std::unique_lock lk(mu_);
      cv_.wait(lk, [&] { return closed_ || size_ >= nbits; });
      if (size_ < nbits) throw Error("KeystreamBuffer: closed with insufficient keystream");
      out = take_locked(nbits);
    }
    cv_.notify_all();
    return out;
  }

  // Wakes all waiters; later produce() calls fail, buffered bits stay takeable.
  void close() {
    {
      std::lock_guard lk(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const {
    std::lock_guard lk(mu_);
    return size_;
  }
  std::uint64_t head_offset() const {
    std::lock_guard lk(mu_);
    return head_offset_;
  }
  std::uint64_t produced_bits() const {
    std::lock_guard lk(mu_);
    return head_offset_ + size_;
  }

 private:
  void check_chunk(const BitVec& chunk) const {
    if (chunk.size() > capacity_) {
      throw ParamError("KeystreamBuffer: chunk of " + std::to_string(chunk.size()) +
                       " bits exceeds capacity " + std::to_string(capacity_));
    }
  }
  void check_take(std::size_t nbits) const {
    if (nbits > capacity_) {
      throw ParamError("KeystreamBuffer: take of " + std::to_string(nbits) +
                       " bits exceeds capacity " + std::to_string(capacity_));
    }
  }

  void append_locked(const BitVec& chunk) {
    std::size_t pos = (head_ + size_) % ring_bits_;
    std::size_t src = 0;
    std::size_t left = chunk.size();
    while (left > 0) {
      const std::size_t run = std::min(left, ring_bits_ - pos);
      detail::copy_bits(chunk.words().data(), src, ring_.data(), pos, run);
      src += run;
      left -= run;
      pos = (pos + run) % ring_bits_;
    }
    size_ += chunk.size();
  }

  TakenBits take_locked(std::size_t nbits) {
    TakenBits out{BitVec(nbits), head_offset_};
    std::size_t dst = 0;
    std::size_t left = nbits;
    while (left > 0) {
      const std::size_t run = std::min(left, ring_bits_ - head_);
      detail::copy_bits(ring_.data(), head_, out.bits.mutable_words().data(), dst, run);
      dst += run;
      left -= run;
      head_ = (head_ + run) % ring_bits_;
    }
    size_ -= nbits;
    head_offset_ += nbits;
    return out;
  }

  const std::size_t capacity_;
  std::vector<Word> ring_;
  std::size_t ring_bits_ = 0;
  std::size_t head_ = 0;  // ring position of the next unconsumed bit
  std::size_t size_ = 0;
  std::uint64_t head_offset_ = 0;
  bool closed_ = false;
  mutable std::mutex mu_;
  std::condition_variable cv_;
};

inline bool buffer_produce(KeystreamBuffer& buf, const BitVec& chunk) {
  return buf.try_produce(chunk);
}
inline TakenBits buffer_take(KeystreamBuffer& buf, std::size_t nbits) { return buf.take(nbits); }

// Single-threaded keystream reader: take() pumps the pipeline into the
// buffer until enough bits are queued.
class KeystreamSource {
 public:
  explicit KeystreamSource(Pipeline pipeline,
                           std::size_t capacity_bits = KeystreamBuffer::kDefaultCapacityBits)
      : pipeline_(std::move(pipeline)), buf_(capacity_bits) {
    if (pipeline_.chunk_bits() > capacity_bits) {
      throw ParamError("KeystreamSource: pipeline chunk larger than buffer capacity");
    }
  }

  // Moves one pipeline chunk into the buffer; false if it does not fit yet.
  bool pump() {
    if (!pending_) pending_ = pipeline_.next();
    if (!buf_.try_produce(*pending_)) return false;
    pending_.reset();
    return true;
  }

  TakenBits take(std::size_t nbits) {
    const std::uint64_t start = buf_.head_offset();
    const std::size_t max_piece = buf_.capacity() - pipeline_.chunk_bits() + 1;
    if (nbits <= max_piece) return take_piece(nbits);
    std::vector<BitVec> parts;
    std::size_t left = nbits;
    while (left > 0) {
      const std::size_t n = std::min(left, max_piece);
      parts.push_back(take_piece(n).bits);
      left -= n;
    }
    return {BitVec::concat(parts), start};
  }

  std::uint64_t head_offset() const { return buf_.head_offset(); }
  const KeystreamBuffer& buffer() const { return buf_; }
  const Pipeline& pipeline() const { return pipeline_; }

 private:
  // n <= capacity - chunk_bits + 1, so a pump never stalls before n bits are queued.
  TakenBits take_piece(std::size_t n) {
    while (buf_.size() < n) {
      if (!pump()) throw Error("KeystreamSource: buffer stalled");
    }
    return buf_.take(n);
  }

  Pipeline pipeline_;
  KeystreamBuffer buf_;
  std::optional<BitVec> pending_;
};

// Runs a pipeline on its own thread, feeding `buf` until stop() (or
// destruction). The consumer reads with buf.take() on its own thread.
class BackgroundProducer {
 public:
  BackgroundProducer(Pipeline pipeline, KeystreamBuffer& buf)
      : buf_(buf), thread_([this, p = std::move(pipeline)](std::stop_token st) mutable {
          while (!st.stop_requested()) {
            if (!buf_.produce(p.next())) break;
          }
        }) {}

  BackgroundProducer(const BackgroundProducer&) = delete;
  BackgroundProducer& operator=(const BackgroundProducer&) = delete;

  ~BackgroundProducer() { stop(); }

  void stop() {
    thread_.request_stop();
    buf_.close();
    if (thread_.joinable()) thread_.join();
  }

 private:
  KeystreamBuffer& buf_;
  std::jthread thread_;
};

}  // namespace scsprbg
