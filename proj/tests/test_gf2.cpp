#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "scsprbg/gf2.hpp"

using namespace scsprbg;

namespace {

TEST(SplitMix, SeedZeroFirstWord) {
  // 0xE220A8397B1DCDAF, little-endian.
  const auto b = splitmix_stream(Seed64{0}, 8);
  const std::vector<std::uint8_t> expect{0xAF, 0xCD, 0x1D, 0x7B, 0x39, 0xA8, 0x20, 0xE2};
  EXPECT_EQ(b, expect);
}

TEST(SplitMix, EmptyAndPrefix) {
  EXPECT_TRUE(splitmix_stream(Seed64{7}, 0).empty());
  const auto a = splitmix_stream(Seed64{7}, 8);
  const auto b = splitmix_stream(Seed64{7}, 16);
  const auto c = splitmix_stream(Seed64{7}, 13);
  EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
  EXPECT_TRUE(std::equal(c.begin(), c.end(), b.begin()));
  EXPECT_EQ(splitmix_stream(Seed64{7}, 100), splitmix_stream(Seed64{7}, 100));
  EXPECT_NE(splitmix_stream(Seed64{7}, 16), splitmix_stream(Seed64{8}, 16));
}

TEST(BitVec, XorDefinitionAndIdentities) {
  EXPECT_EQ(bitvec_xor(BitVec::from_string("1010"), BitVec::from_string("0110")),
            BitVec::from_string("1100"));
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 300;
    const auto a = oracle::random_bits(rng, n);
    const auto b = oracle::random_bits(rng, n);
    const auto c = oracle::random_bits(rng, n);
    EXPECT_EQ(a ^ BitVec(n), a);
    EXPECT_TRUE((a ^ a).none());
    EXPECT_EQ(a ^ b, b ^ a);
    EXPECT_EQ((a ^ b) ^ c, a ^ (b ^ c));
  }
}

TEST(BitVec, XorLengthMismatchThrows) {
  EXPECT_THROW(bitvec_xor(BitVec(3), BitVec(4)), WidthMismatch);
}

TEST(BitVec, BytesAreLsbFirst) {
  const std::vector<std::uint8_t> bytes{0x01, 0x80};
  const auto v = BitVec::from_bytes(bytes, 16);
  EXPECT_TRUE(v.test(0));
  EXPECT_TRUE(v.test(15));
  EXPECT_EQ(v.count(), 2u);
  EXPECT_EQ(v.to_bytes(), bytes);
  // Truncation clears the unused high bits.
  const auto t = BitVec::from_bytes(std::vector<std::uint8_t>{0xFF}, 3);
  EXPECT_EQ(t.to_bytes(), std::vector<std::uint8_t>{0x07});
  EXPECT_EQ(t.words()[0], 0x07u);
}

TEST(BitVec, SliceAndConcatAgree) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = oracle::random_bits(rng, rng() % 200);
    const auto b = oracle::random_bits(rng, rng() % 200);
    const std::vector<BitVec> parts{a, b};
    const auto ab = BitVec::concat(parts);
    ASSERT_EQ(ab.size(), a.size() + b.size());
    EXPECT_EQ(ab.slice(0, a.size()), a);
    EXPECT_EQ(ab.slice(a.size(), b.size()), b);
  }
}

TEST(BitMatrix, ColumnsAndRowsRoundTrip) {
  std::mt19937_64 rng(3);
  const auto m = oracle::random_matrix(rng, 37, 70);
  const auto rows = m.to_rows();
  EXPECT_EQ(BitMatrix::from_rows(rows, 70), m);
  std::vector<BitVec> cols;
  for (std::size_t c = 0; c < 70; ++c) cols.push_back(m.column(c));
  EXPECT_EQ(BitMatrix::from_columns(cols, 37), m);
  EXPECT_THROW(BitMatrix::from_columns(cols, 36), WidthMismatch);
}

TEST(Gauss, IdentityGivesUniqueSolution) {
  const std::size_t n = 70;
  BitMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id.set(i, i);
  std::mt19937_64 rng(4);
  const auto b = oracle::random_bits(rng, n);
  const auto g = gf2_gauss(id, b);
  EXPECT_EQ(g.rank, n);
  ASSERT_EQ(g.status, Solvability::kConsistent);
  EXPECT_EQ(*g.solution, b);
  EXPECT_TRUE(g.nullspace.empty());
}

TEST(Gauss, ZeroMatrix) {
  const BitMatrix z(5, 9);
  const auto g = gf2_gauss(z, BitVec(5));
  EXPECT_EQ(g.rank, 0u);
  EXPECT_EQ(g.status, Solvability::kConsistent);
  EXPECT_EQ(g.nullspace.size(), 9u);
  // Nonzero rhs on a zero matrix is inconsistent, and reported as such.
  auto rhs = BitVec(5);
  rhs.set(2);
  const auto bad = gf2_gauss(z, rhs);
  EXPECT_EQ(bad.status, Solvability::kInconsistent);
  EXPECT_FALSE(bad.solution.has_value());
}

TEST(Gauss, RhsWidthChecked) {
  EXPECT_THROW(gf2_gauss(BitMatrix(4, 4), BitVec(3)), WidthMismatch);
}

TEST(Gauss, RankMatchesSpanEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    // Mix of full-rank and deliberately dependent 12x20 instances.
    auto m = oracle::random_matrix(rng, 12, 20);
    if (trial % 3 == 0) {
      for (std::size_t c = 0; c < 20; ++c) m.set(11, c, m.get(0, c) ^ m.get(1, c));
    }
    if (trial % 5 == 0) {
      for (std::size_t c = 0; c < 20; ++c) m.set(10, c, m.get(9, c));
    }
    std::vector<std::uint64_t> rows(12, 0);
    for (std::size_t r = 0; r < 12; ++r) {
      for (std::size_t c = 0; c < 20; ++c) {
        if (m.get(r, c)) rows[r] |= std::uint64_t{1} << c;
      }
    }
    const auto g = gf2_gauss(m);
    EXPECT_EQ(g.rank, oracle::rank_by_span(rows)) << "trial " << trial;
    EXPECT_LE(g.rank, 12u);
    EXPECT_EQ(g.pivots.size(), g.rank);
  }
}

TEST(Gauss, SolutionsReproduceRhsUpTo64x64) {
  std::mt19937_64 rng(6);
  int consistent = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 64;
    const std::size_t cols = 1 + rng() % 64;
    const auto m = oracle::random_matrix(rng, rows, cols);
    // Half the right-hand sides come from the column space.
    const BitVec rhs = (trial % 2 == 0) ? m * oracle::random_bits(rng, cols)
                                        : oracle::random_bits(rng, rows);
    const auto g = gf2_gauss(m, rhs);
    if (g.status == Solvability::kInconsistent) {
      EXPECT_NE(trial % 2, 0);
      continue;
    }
    ++consistent;
    EXPECT_EQ(m * *g.solution, rhs);
    EXPECT_EQ(g.nullspace.size(), cols - g.rank);
    for (const auto& v : g.nullspace) {
      EXPECT_TRUE((m * v).none());
      EXPECT_EQ(m * (*g.solution ^ v), rhs);
    }
  }
  EXPECT_GE(consistent, 100);
}

TEST(Gauss, PivotColumnsAreIndependent) {
  std::mt19937_64 rng(7);
  const auto m = oracle::random_matrix(rng, 20, 40);
  const auto g = gf2_gauss(m);
  std::vector<BitVec> pcols;
  for (auto p : g.pivots) pcols.push_back(m.column(p));
  const auto sub = BitMatrix::from_columns(pcols, 20);
  EXPECT_EQ(gf2_gauss(sub).rank, g.pivots.size());
}

}  // namespace
