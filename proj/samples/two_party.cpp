// Two parties derive the same keystream from a shared seed. The sender runs
// its generator on a background thread feeding a FIFO buffer; the receiver
// regenerates on demand. Messages travel as SCSC frames.

#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "scsprbg/cipher.hpp"
#include "scsprbg/pipeline.hpp"

using namespace scsprbg;

namespace {

Pipeline make_pipeline(const std::shared_ptr<const QuadSystem>& sys, const PickChain& chain,
                       const std::vector<std::uint8_t>& seed) {
  return Pipeline(Generator(sys, BitVec::from_bytes(seed, sys->n())), chain);
}

}  // namespace

int main() {
  // Public parameters: QUAD(160, 2) followed by pick(6, 128).
  auto sys = std::make_shared<const QuadSystem>(
      QuadSystem::from_seed(kSecureQuadN, kSecureQuadKq, Seed64{1}));
  const PickChain chain({pick_matrix_from_seed(PickParams{6, 128}, Seed64{2})});
  const auto shared_seed = splitmix_stream(Seed64{0xA11CEB0B}, 20);

  KeystreamBuffer alice_buf;
  BackgroundProducer alice_producer(make_pipeline(sys, chain, shared_seed), alice_buf);
  KeystreamSource bob(make_pipeline(sys, chain, shared_seed));

  const std::vector<std::string> messages = {"hello bob", "the keystream is used once",
                                             "no padding needed"};
  for (const auto& m : messages) {
    const std::vector<std::uint8_t> plain(m.begin(), m.end());
    const auto wire = encode_frame(seal(std::span<const std::uint8_t>(plain), alice_buf));
    const auto frame = decode_frames(wire).front();
    const auto back = open(frame, bob);
    std::cout << "offset " << frame.stream_offset << ": "
              << std::string(back.begin(), back.end()) << "\n";
  }
  alice_producer.stop();
  return 0;
}
