#pragma once

// Throughput measurement for a pipeline and its two components.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "scsprbg/errors.hpp"
#include "scsprbg/gf2.hpp"
#include "scsprbg/pick.hpp"
#include "scsprbg/pipeline.hpp"

namespace scsprbg {

struct RateSample {
  std::uint64_t bits = 0;
  double seconds = 0;

  double mbit_per_s() const { return seconds > 0 ? static_cast<double>(bits) / seconds / 1e6 : 0; }
  double mbyte_per_s() const { return mbit_per_s() / 8.0; }
  double cycles_per_bit(double cpu_ghz) const {
    return bits > 0 ? seconds * cpu_ghz * 1e9 / static_cast<double>(bits) : 0;
  }
};

struct BenchReport {
  double cpu_ghz = 1.0;
  RateSample pipeline;   // generator + expander as configured
  RateSample generator;  // plain generator alone
  RateSample expander;   // expander chain alone (absent -> zero sample)
  // Generator bits consumed per pipeline output bit (1/R with an expander).
  double generator_bits_per_output_bit = 1.0;
  // XOR-fold of the first kDigestBits bits produced by the pipeline.
  std::uint64_t prefix_digest = 0;

  static constexpr std::size_t kDigestBits = std::size_t{1} << 16;

  std::uint64_t bytes_produced() const { return pipeline.bits / 8; }
  double speedup_vs_generator() const {
    return generator.mbit_per_s() > 0 ? pipeline.mbit_per_s() / generator.mbit_per_s() : 0;
  }
  // Share of pipeline time spent in each component, from the component rates.
  double generator_share() const {
    if (generator.bits == 0 || pipeline.bits == 0) return 0;
    const double t_gen = generator_bits_per_output_bit / generator.mbit_per_s();
    const double t_all = 1.0 / pipeline.mbit_per_s();
    return std::min(1.0, t_gen / t_all);
  }
};

// Calls `step` (returning bits produced) until `seconds` elapse.
inline RateSample measure_rate(const std::function<std::size_t()>& step, double seconds) {
  using clock = std::chrono::steady_clock;
  RateSample s;
  const auto start = clock::now();
  const auto limit = std::chrono::duration<double>(seconds);
  auto now = start;
  do {
    s.bits += step();
    now = clock::now();
  } while (now - start < limit);
  s.seconds = std::chrono::duration<double>(now - start).count();
  return s;
}

// Runs the pipeline, the plain generator, and the expander alone for
// `seconds` each. Works on copies; `proto` is not advanced.
inline BenchReport bench_pipeline(const Pipeline& proto, double seconds, double cpu_ghz = 1.0) {
  if (!(seconds > 0)) throw ParamError("bench_pipeline: seconds must be positive");
  if (!(cpu_ghz > 0)) throw ParamError("bench_pipeline: cpu_ghz must be positive");
  BenchReport rep;
  rep.cpu_ghz = cpu_ghz;
  rep.generator_bits_per_output_bit = static_cast<double>(proto.generator_bits_per_chunk()) /
               static_cast<double>(proto.chunk_bits());

  {
    Pipeline p = proto;
    std::uint64_t digest = 0;
    std::size_t seen = 0;
    while (seen < BenchReport::kDigestBits) {
      const BitVec z = p.next();
      for (Word w : z.words()) digest ^= w + 0x9E3779B97F4A7C15ULL * (seen + 1);
      seen += z.size();
    }
    rep.prefix_digest = digest;
  }

  {
    Pipeline p = proto;
    rep.pipeline = measure_rate([&] { return p.next().size(); }, seconds);
  }
  {
    Generator g = proto.generator();
    rep.generator = measure_rate([&] { return g.next().size(); }, seconds);
  }
  if (proto.expander()) {
    const PickChain& chain = *proto.expander();
    std::vector<BitVec> inputs;
    const auto bytes = splitmix_stream(Seed64{0x5EED}, 64 * bytes_for_bits(chain.input_bits()));
    for (std::size_t i = 0; i < 64; ++i) {
      const std::size_t per = bytes_for_bits(chain.input_bits());
      inputs.push_back(BitVec::from_bytes(
          std::span<const std::uint8_t>(bytes).subspan(i * per, per), chain.input_bits()));
    }
    std::size_t i = 0;
    rep.expander = measure_rate(
        [&] { return pick_chain_expand(chain, inputs[i++ % inputs.size()]).size(); }, seconds);
  }
  return rep;
}

}  // namespace scsprbg
