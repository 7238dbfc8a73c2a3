#include <gtest/gtest.h>

#include "exptk/witnesses.hpp"
#include "oracles.hpp"

using namespace exptk;

TEST(RpHomology, Examples)
{
    EXPECT_EQ(rp_homology(3, 1).orders, std::vector<long long>{2});
    EXPECT_TRUE(rp_homology(3, 2).is_zero());
    EXPECT_TRUE(rp_homology(3, 0).is_zero());
}

TEST(RpHomology, MatchesCellularChains)
{
    // reduced homology of RP^{2r}: Z/2 in odd degrees below 2r, 0 otherwise (top class is not a cycle)
    for (int r = 1; r <= 12; ++r) {
        auto h = oracle::cellular_homology(oracle::rp_boundaries(2 * r));
        for (int i = 0; i <= 2 * r + 3; ++i) {
            auto got = rp_homology(r, i);
            long long want = (i >= 1 && i <= 2 * r) ? h[static_cast<std::size_t>(i)] : 1;
            if (want == 1) {
                EXPECT_TRUE(got.is_zero()) << r << " " << i;
            }
            else {
                EXPECT_EQ(got.orders, std::vector<long long>{want}) << r << " " << i;
            }
        }
    }
}

TEST(BSigmaHomology, Examples)
{
    EXPECT_EQ(bsigma_homology(Prime(3), 3).orders, std::vector<long long>{3});
    EXPECT_TRUE(bsigma_homology(Prime(3), 4).is_zero());
    EXPECT_EQ(bsigma_homology(Prime(3), 0).orders, std::vector<long long>{0});
    EXPECT_THROW(bsigma_homology(Prime(2), 1), std::invalid_argument);
}

TEST(BSigmaHomology, Pattern)
{
    for (int p : {3, 5, 7}) {
        const int q = 2 * p - 2;
        for (int i = 1; i <= 10 * q; ++i) {
            bool torsion = (i + 1) % q == 0;
            auto h = bsigma_homology(Prime(p), i);
            if (torsion) {
                EXPECT_EQ(h.orders, std::vector<long long>{p}) << p << " " << i;
            }
            else {
                EXPECT_TRUE(h.is_zero()) << p << " " << i;
            }
        }
    }
}

TEST(Witness, Examples)
{
    auto a = lower_bound_witness(Prime(2), 5);
    EXPECT_EQ(a.degree, 9);
    EXPECT_EQ(a.lower.value, 4);
    EXPECT_EQ(a.k_order_exponent, 5);
    EXPECT_EQ(a.lower.kind, CertificateKind::Lower);

    auto b = lower_bound_witness(Prime(3), 3);
    EXPECT_EQ(b.degree, 9);
    EXPECT_EQ(b.lower.value, 2);
    EXPECT_EQ(b.k_order_exponent, 3);

    auto c = lower_bound_witness(Prime(2), 1);
    EXPECT_EQ(c.degree, 1);
    EXPECT_EQ(c.lower.value, 0);

    EXPECT_THROW(lower_bound_witness(Prime(2), 0), std::invalid_argument);
}

TEST(Witness, CellRangesAndCitations)
{
    for (int p : {2, 3, 5, 7})
        for (int param = 1; param <= 100; ++param) {
            auto w = lower_bound_witness(Prime(p), param);
            EXPECT_LE(w.cell_bottom, w.cell_top);
            EXPECT_FALSE(w.k_theory.source.empty());
            // the top cell lies one degree above the truncation degree plus one cell-length gap
            EXPECT_GE(w.cell_top, w.degree);
            EXPECT_EQ(w.lower.value, main_lower_value(Prime(p), w.degree));
            EXPECT_LE(w.lower.value, main_upper_value(Prime(p), w.degree));
        }
}

TEST(ConsistencySweep, Empty)
{
    EXPECT_TRUE(consistency_sweep(Prime(2), 99).empty());
    EXPECT_TRUE(consistency_sweep(Prime(3), 9).empty());
    EXPECT_TRUE(consistency_sweep(Prime(2), 1).empty());
    for (int p : {5, 7, 11, 97})
        EXPECT_TRUE(consistency_sweep(Prime(p), 5000).empty());
}
