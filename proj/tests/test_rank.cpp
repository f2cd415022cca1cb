#include <flatrank/koszul.hpp>
#include <flatrank/rank.hpp>

#include "block_instances.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace flatrank;

namespace {

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density, long span) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<long> c(-span, span);
    SparseMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t k = 0; k < cols; ++k) {
            if (u(rng) < density) m.accumulate(r, k, c(rng));
        }
    }
    return m;
}

/// Rank-deficient by construction: product of rows x k and k x cols factors.
SparseMatrix low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t k) {
    const auto a = random_matrix(rng, rows, k, 1.0, 3);
    const auto b = random_matrix(rng, k, cols, 1.0, 3);
    SparseMatrix out(rows, cols);
    for (const auto& [ra, va] : a.entries()) {
        for (const auto& [rb, vb] : b.entries()) {
            if (ra.second == rb.first) out.accumulate(ra.first, rb.second, va * vb);
        }
    }
    return out;
}

oracle::Matrix dense(const SparseMatrix& m) {
    oracle::Matrix d(m.rows(), std::vector<long>(m.cols(), 0));
    for (const auto& [rc, v] : m.entries()) d[rc.first][rc.second] = v;
    return d;
}

} // namespace

TEST(Rank, IdentityAndZero) {
    for (std::size_t n : {1U, 5U, 40U}) {
        SparseMatrix id(n, n);
        for (std::size_t i = 0; i < n; ++i) id.accumulate(i, i, 1);
        EXPECT_EQ(rank_mod_p(id).rank, n);
        EXPECT_EQ(rank_exact(id).rank, n);
        EXPECT_EQ(rank_mod_p(SparseMatrix(n, n + 3)).rank, 0U);
        EXPECT_EQ(rank_exact(SparseMatrix(n + 3, n)).rank, 0U);
    }
    EXPECT_EQ(rank_exact(SparseMatrix(0, 0)).rank, 0U);
}

TEST(Rank, KernelsAgreeWithOracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 1 + rng() % 12;
        const std::size_t cols = 1 + rng() % 12;
        const auto m = trial % 2 ? random_matrix(rng, rows, cols, 0.4, 4)
                                 : low_rank(rng, rows, cols, 1 + rng() % std::min(rows, cols));
        const auto expected = oracle::rank_q(dense(m));
        EXPECT_EQ(fraction_free_rank(m), expected);
        EXPECT_EQ(bareiss_rank(m), expected);
        EXPECT_EQ(dense_rank_mod_p(m, kDefaultPrime), oracle::rank_p(dense(m), kDefaultPrime));
        EXPECT_EQ(sparse_rank_mod_p(m, kDefaultPrime), oracle::rank_p(dense(m), kDefaultPrime));
        EXPECT_EQ(dense_rank_mod_p(m, 7), oracle::rank_p(dense(m), 7));
        EXPECT_EQ(sparse_rank_mod_p(m, 7), oracle::rank_p(dense(m), 7));
    }
}

TEST(Rank, TransposeInvariant) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const auto m = low_rank(rng, 15, 9, 1 + trial % 8);
        EXPECT_EQ(rank_mod_p(m).rank, rank_mod_p(m.transpose()).rank);
        EXPECT_EQ(rank_exact(m).rank, rank_exact(m.transpose()).rank);
    }
    const auto f = restricted_flattening(5, 2, Variant::Tq).matrix();
    EXPECT_EQ(rank_mod_p(f).rank, rank_mod_p(f.transpose()).rank);
}

TEST(Rank, ModPNeverExceedsExact) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = random_matrix(rng, 6, 6, 0.7, 9);
        EXPECT_LE(rank_mod_p(m, 5).rank, rank_exact(m).rank);
        EXPECT_LE(rank_mod_p(m, 1000003).rank, rank_exact(m).rank);
    }
    // det = 7: full rank over Q, singular mod 7.
    SparseMatrix d(2, 2);
    d.accumulate(0, 0, 4);
    d.accumulate(0, 1, 1);
    d.accumulate(1, 0, 1);
    d.accumulate(1, 1, 2);
    EXPECT_EQ(rank_exact(d).rank, 2U);
    EXPECT_EQ(rank_mod_p(d, 7).rank, 1U);
}

TEST(Rank, DenseSparseSwitchAndLargeSparse) {
    // Above the dense threshold the sparse kernel takes over.
    const std::size_t n = kDenseMaxDim + 10;
    SparseMatrix m(n, 3);
    for (std::size_t i = 0; i < n; ++i) m.accumulate(i, i % 3, 1 + static_cast<std::int64_t>(i % 5));
    const auto r = rank_mod_p(m);
    EXPECT_EQ(r.method, RankMethod::SparseElimination);
    EXPECT_EQ(r.rank, 3U);
    EXPECT_EQ(rank_mod_p(SparseMatrix(4, 4)).method, RankMethod::DenseElimination);
}

TEST(Rank, RejectsCompositeModulus) {
    SparseMatrix m(2, 2);
    EXPECT_THROW(rank_mod_p(m, 15), ArgumentError);
    EXPECT_THROW(rank_mod_p(m, 1), ArgumentError);
}

TEST(Rank, ExactCapacity) {
    SparseMatrix big(kExactCap + 1, 2);
    try {
        rank_exact(big);
        FAIL() << "expected CapacityError";
    } catch (const CapacityError& e) {
        EXPECT_NE(std::string(e.what()).find("multi-prime"), std::string::npos);
    }
    EXPECT_NO_THROW(rank_exact(SparseMatrix(kExactCap, 2)));
    EXPECT_THROW(rank_exact(SparseMatrix(10, 10), 5), CapacityError);
}

TEST(Rank, FractionFreeHandlesEntryGrowth) {
    // Hilbert-like integer matrix (scaled) has full rank but large cofactors.
    const std::size_t n = 12;
    SparseMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) h.accumulate(i, j, static_cast<std::int64_t>(27720 / (i + j + 1)));
    }
    EXPECT_EQ(fraction_free_rank(h), bareiss_rank(h));
    EXPECT_EQ(fraction_free_rank(h), oracle::rank_q(dense(h)));
}

TEST(Certified, SandwichPath) {
    SparseMatrix id(5, 5);
    for (std::size_t i = 0; i < 5; ++i) id.accumulate(i, i, 1);
    const auto r = rank_certified(id, 5);
    EXPECT_TRUE(r.certified);
    EXPECT_EQ(r.justification, "sandwich");
    EXPECT_EQ(r.primes, std::vector<std::uint64_t>{kDefaultPrime});
}

TEST(Certified, EscalatesToExactBelowCap) {
    SparseMatrix m(3, 3);
    m.accumulate(0, 0, 1);
    m.accumulate(1, 1, 1);
    const auto r = rank_certified(m, 3);
    EXPECT_EQ(r.rank, 2U);
    EXPECT_TRUE(r.certified);
    EXPECT_EQ(r.justification, "exact");
    EXPECT_EQ(r.primes.size(), 2U);
}

TEST(Certified, ProbabilisticWithoutExact) {
    SparseMatrix m(3, 3);
    m.accumulate(0, 0, 1);
    const auto r = rank_certified(m, 3, CertifyPolicy{kDefaultPrime, kFallbackPrime, 0});
    EXPECT_EQ(r.rank, 1U);
    EXPECT_FALSE(r.certified);
    EXPECT_EQ(r.justification, "certified-probabilistic");
}

TEST(Certified, PrimeDisagreementReportsLargerRank) {
    SparseMatrix m(1, 1);
    m.accumulate(0, 0, static_cast<std::int64_t>(kDefaultPrime));
    const auto r = rank_certified(m, 1, CertifyPolicy{kDefaultPrime, kFallbackPrime, 0});
    EXPECT_EQ(r.rank, 1U);
    EXPECT_FALSE(r.certified);
    EXPECT_EQ(r.justification, "prime-disagreement");
}

TEST(BlockRankSum, UnimodularPairsInvert) {
    std::mt19937_64 rng(1);
    for (std::size_t n : {1U, 2U, 5U}) {
        const auto [p, inv] = blocks::unimodular(rng, n);
        EXPECT_EQ(blocks::mul(p, inv), blocks::identity(n));
    }
}

TEST(BlockRankSum, GeneratedInstancesSatisfyHypotheses) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) EXPECT_TRUE(blocks::hypotheses_hold(blocks::random_instance(rng)));
}

TEST(BlockRankSum, HypothesesAloneDoNotFixTheRank) {
    // f = projection onto e1, U = <e1>, g(e1) = e2, g(e2) = 0: X = <e2> meets
    // Im f trivially and V = U ⊕ Ker f, yet f + g has rank 1, not 2.
    blocks::Instance in;
    in.f = {{1, 0}, {0, 0}};
    in.g = {{0, 0}, {1, 0}};
    in.u = {{1}, {0}};
    in.x = {{0}, {1}};
    in.dim_x = 1;
    ASSERT_TRUE(blocks::hypotheses_hold(in));
    EXPECT_EQ(blocks::rank(blocks::add(in.f, in.g)), 1U);
    EXPECT_FALSE(blocks::conclusion_holds(in));
}

TEST(BlockRankSum, DisjointBlocksAdd) {
    // The form the flattening decomposition actually has: f and g live on
    // complementary input blocks and land in complementary output blocks.
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n1 = 1 + rng() % 5, n2 = 1 + rng() % 5, w1 = 1 + rng() % 5, w2 = 1 + rng() % 5;
        const auto a = low_rank(rng, w1, n1, 1 + rng() % std::min(w1, n1));
        const auto b = random_matrix(rng, w2, n2, 0.6, 3);
        SparseMatrix f(w1 + w2, n1 + n2);
        SparseMatrix g(w1 + w2, n1 + n2);
        for (const auto& [rc, v] : a.entries()) f.accumulate(rc.first, rc.second, v);
        for (const auto& [rc, v] : b.entries()) g.accumulate(w1 + rc.first, n1 + rc.second, v);
        EXPECT_EQ(rank_exact(f + g).rank, rank_exact(f).rank + rank_exact(g).rank);
    }
}

TEST(FrozenRanks, SquareRestrictedFlattenings) {
    // Independent Gauss-Jordan reference values for q = 2..12.
    const std::vector<std::size_t> t{20, 38, 60, 86, 116, 150, 188, 230, 276, 326, 380};
    const std::vector<std::size_t> p{4, 20, 38, 60, 86, 116, 150, 188, 230, 276, 326};
    const std::vector<std::size_t> s{16, 18, 22, 26, 30, 34, 38, 42, 46, 50, 54};
    for (std::uint32_t q = 2; q <= 12; ++q) {
        EXPECT_EQ(rank_mod_p(restricted_flattening(q, 2, Variant::Tq).matrix()).rank, t[q - 2]) << "q=" << q;
        EXPECT_EQ(rank_mod_p(restricted_flattening(q, 2, Variant::TqMinus1).matrix()).rank, p[q - 2]) << "q=" << q;
        EXPECT_EQ(rank_mod_p(restricted_flattening(q, 2, Variant::Sq).matrix()).rank, s[q - 2]) << "q=" << q;
    }
}

TEST(FrozenRanks, CubeRestrictedFlattenings) {
    const std::vector<std::size_t> t{42, 128, 274, 492};
    const std::vector<std::size_t> s{38, 86, 146, 218};
    for (std::uint32_t q = 2; q <= 5; ++q) {
        EXPECT_EQ(rank_mod_p(restricted_flattening(q, 3, Variant::Tq).matrix()).rank, t[q - 2]) << "q=" << q;
        EXPECT_EQ(rank_mod_p(restricted_flattening(q, 3, Variant::Sq).matrix()).rank, s[q - 2]) << "q=" << q;
    }
}

TEST(FrozenRanks, ExactMatchesModPOnSmallFlattenings) {
    for (std::uint32_t q : {2U, 3U, 4U}) {
        for (auto v : {Variant::Tq, Variant::TqMinus1, Variant::Sq}) {
            const auto m = restricted_flattening(q, 2, v).matrix();
            EXPECT_EQ(rank_exact(m).rank, rank_mod_p(m).rank);
            EXPECT_EQ(rank_exact(m).rank, oracle::rank_q(dense(m)));
        }
    }
}
