#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "scsprbg/pick.hpp"

using namespace scsprbg;

namespace {

TEST(PickParams, Sizes) {
  const PickParams p{6, 128};
  EXPECT_EQ(p.lrows(), 4096u);
  EXPECT_EQ(p.ncols(), 8192u);
  EXPECT_EQ(p.input_bits(), 768u);
  EXPECT_EQ(p.matrix_bytes(), 4194304u);
  EXPECT_EQ(PickParams::from_lh(13, 6), p);
  EXPECT_THROW((PickParams{0, 1}.validate()), ParamError);
  EXPECT_THROW((PickParams{31, 1}.validate()), ParamError);
  EXPECT_THROW((PickParams{2, 0}.validate()), ParamError);
  EXPECT_THROW(PickParams::from_lh(3, 4), ParamError);
}

TEST(PickParams, MultiplicationFactor) {
  const auto r6 = multiplication_factor(PickParams{6, 128});
  EXPECT_EQ(r6.num, 32u);
  EXPECT_EQ(r6.den, 6u);
  EXPECT_EQ(r6.reduced().num, 16u);
  EXPECT_EQ(r6.reduced().den, 3u);
  EXPECT_DOUBLE_EQ(multiplication_factor(PickParams{1, 1}).value(), 1.0);
  EXPECT_DOUBLE_EQ(multiplication_factor(PickParams{2, 5}).value(), 1.0);
  EXPECT_DOUBLE_EQ(multiplication_factor(PickParams{3, 5}).value(), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(multiplication_factor(PickParams{4, 5}).value(), 2.0);
}

TEST(Pick, SingleBitExpander) {
  // k=1, m=1: one row, two columns; input bit b selects column b.
  BitMatrix mat(1, 2);
  mat.set(0, 1);
  const PickMatrix pm(PickParams{1, 1}, mat);
  EXPECT_EQ(pick_expand(pm, BitVec::from_string("0")), BitVec::from_string("0"));
  EXPECT_EQ(pick_expand(pm, BitVec::from_string("1")), BitVec::from_string("1"));
}

TEST(Pick, SegmentValueIsLittleEndian) {
  // k=2, m=1, columns c0..c3 are distinct two-bit vectors.
  BitMatrix mat(2, 4);
  mat.set(0, 1);
  mat.set(1, 2);
  mat.set(0, 3);
  mat.set(1, 3);
  const PickMatrix pm(PickParams{2, 1}, mat);
  // input "10" = bit0 set -> segment value 1 -> column 1.
  EXPECT_EQ(pick_expand(pm, BitVec::from_string("10")), mat.column(1));
  EXPECT_EQ(pick_expand(pm, BitVec::from_string("01")), mat.column(2));
  EXPECT_EQ(pick_expand(pm, BitVec::from_string("11")), mat.column(3));
}

TEST(Pick, MatrixFromSeedDeterministicAndSized) {
  const PickParams p{6, 128};
  const auto a = pick_matrix_from_seed(p, Seed64{5});
  EXPECT_EQ(a.matrix().rows(), 4096u);
  EXPECT_EQ(a.matrix().cols(), 8192u);
  EXPECT_EQ(a, pick_matrix_from_seed(p, Seed64{5}));
  EXPECT_FALSE(a == pick_matrix_from_seed(p, Seed64{6}));
  // Column 0 is the first 512 bytes of the seed stream.
  const auto bytes = splitmix_stream(Seed64{5}, 512);
  EXPECT_EQ(a.matrix().column(0), BitVec::from_bytes(bytes, 4096));
}

TEST(Pick, PackedRoundTrip) {
  for (PickParams p : {PickParams{1, 3}, PickParams{3, 5}, PickParams{4, 7}}) {
    const auto a = pick_matrix_from_seed(p, Seed64{9});
    EXPECT_EQ(PickMatrix::from_packed(p, a.packed()), a);
  }
  EXPECT_THROW(PickMatrix::from_packed(PickParams{2, 2}, std::vector<std::uint8_t>(3)),
               FormatError);
}

TEST(Pick, WrongShapesRejected) {
  EXPECT_THROW(PickMatrix(PickParams{2, 2}, BitMatrix(3, 8)), WidthMismatch);
  const auto pm = pick_matrix_from_seed(PickParams{2, 2}, Seed64{1});
  EXPECT_THROW(pick_expand(pm, BitVec(3)), WidthMismatch);
}

TEST(Pick, MatchesEntrywiseOracleExhaustively) {
  for (PickParams p : {PickParams{1, 4}, PickParams{2, 3}, PickParams{3, 2}, PickParams{4, 3}}) {
    const auto pm = pick_matrix_from_seed(p, Seed64{p.k * 100 + p.m});
    const std::uint64_t total = std::uint64_t{1} << p.input_bits();
    for (std::uint64_t v = 0; v < total; ++v) {
      const auto x = BitVec::from_uint(v, p.input_bits());
      ASSERT_EQ(pick_expand(pm, x), oracle::pick(pm, x)) << "k=" << p.k << " m=" << p.m;
    }
  }
}

TEST(Pick, MatchesOracleOnRandomInputsLarge) {
  std::mt19937_64 rng(10);
  for (PickParams p : {PickParams{6, 128}, PickParams{7, 9}, PickParams{5, 33}}) {
    const auto pm = pick_matrix_from_seed(p, Seed64{p.k});
    for (int i = 0; i < 5; ++i) {
      const auto x = oracle::random_bits(rng, p.input_bits());
      EXPECT_EQ(pick_expand(pm, x), oracle::pick(pm, x));
    }
  }
}

TEST(Pick, LinearInTheMatrix) {
  std::mt19937_64 rng(11);
  const PickParams p{3, 6};
  for (int i = 0; i < 20; ++i) {
    const auto a = oracle::random_matrix(rng, p.lrows(), p.ncols());
    const auto b = oracle::random_matrix(rng, p.lrows(), p.ncols());
    const auto x = oracle::random_bits(rng, p.input_bits());
    const auto lhs = pick_expand(PickMatrix(p, a ^ b), x);
    const auto rhs = pick_expand(PickMatrix(p, a), x) ^ pick_expand(PickMatrix(p, b), x);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Pick, SegmentChangeSwapsOneColumn) {
  std::mt19937_64 rng(12);
  const PickParams p{4, 8};
  const auto pm = pick_matrix_from_seed(p, Seed64{12});
  for (int i = 0; i < 50; ++i) {
    auto x = oracle::random_bits(rng, p.input_bits());
    const std::size_t blk = rng() % p.m;
    const auto j_old = x.extract(blk * p.k, p.k);
    const std::size_t j_new = (j_old + 1 + rng() % 15) % 16;
    auto y = x;
    for (std::size_t t = 0; t < p.k; ++t) y.set(blk * p.k + t, (j_new >> t) & 1U);
    const auto diff = pick_expand(pm, x) ^ pick_expand(pm, y);
    EXPECT_EQ(diff, pm.matrix().column(blk * 16 + j_old) ^ pm.matrix().column(blk * 16 + j_new));
  }
}

TEST(PickChain, TwoStagesCompose) {
  // (2,4) maps 8 bits to 8 bits, so it chains with itself.
  const auto s1 = pick_matrix_from_seed(PickParams{2, 4}, Seed64{1});
  const auto s2 = pick_matrix_from_seed(PickParams{2, 4}, Seed64{2});
  const PickChain chain({s1, s2});
  EXPECT_EQ(chain.input_bits(), 8u);
  EXPECT_EQ(chain.output_bits(), 8u);
  for (std::uint64_t v = 0; v < 256; ++v) {
    const auto x = BitVec::from_uint(v, 8);
    EXPECT_EQ(pick_chain_expand(chain, x), pick_expand(s2, pick_expand(s1, x)));
  }
  // (3,2): 6 -> 8 bits, then (4,2): 8 -> 16 bits.
  const PickChain grow({pick_matrix_from_seed(PickParams{3, 2}, Seed64{3}),
                        pick_matrix_from_seed(PickParams{4, 2}, Seed64{4})});
  EXPECT_EQ(grow.input_bits(), 6u);
  EXPECT_EQ(grow.output_bits(), 16u);
}

TEST(PickChain, MismatchedStagesRejected) {
  EXPECT_THROW(PickChain({pick_matrix_from_seed(PickParams{3, 2}, Seed64{1}),
                          pick_matrix_from_seed(PickParams{3, 2}, Seed64{2})}),
               WidthMismatch);
  EXPECT_THROW(PickChain(std::vector<PickMatrix>{}), ParamError);
}

}  // namespace
