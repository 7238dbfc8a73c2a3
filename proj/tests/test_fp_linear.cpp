#include <gtest/gtest.h>

#include <random>

#include "exptk/fp_linear.hpp"
#include "oracles.hpp"

using namespace exptk;

namespace {

FpMatrix random_matrix(std::mt19937& rng, Prime p, std::size_t rows, std::size_t cols, double density)
{
    FpMatrix m(p, rows, cols);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> v(1, p.value() - 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (u(rng) < density)
                m.set(r, c, static_cast<std::uint32_t>(v(rng)));
    return m;
}

bool is_rref(const RowReduction& rr)
{
    const auto& m = rr.reduced;
    for (std::size_t i = 0; i < rr.rank; ++i) {
        if (m.at(i, rr.pivots[i]) != 1)
            return false;
        for (std::size_t c = 0; c < rr.pivots[i]; ++c)
            if (m.at(i, c))
                return false;
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != i && m.at(r, rr.pivots[i]))
                return false;
    }
    for (std::size_t r = rr.rank; r < m.rows(); ++r)
        if (!m.row(r).empty())
            return false;
    return std::is_sorted(rr.pivots.begin(), rr.pivots.end());
}

}  // namespace

TEST(RowReduce, Examples)
{
    Prime two(2);
    auto zero = row_reduce(FpMatrix(two, 3, 4));
    EXPECT_EQ(zero.rank, 0u);
    EXPECT_TRUE(zero.pivots.empty());

    auto id = row_reduce(FpMatrix::identity(two, 3));
    EXPECT_EQ(id.rank, 3u);
    EXPECT_EQ(id.pivots, (std::vector<std::size_t>{0, 1, 2}));

    EXPECT_EQ(row_reduce(FpMatrix::from_dense(two, {{1, 1}, {1, 1}})).rank, 1u);
}

TEST(KernelBasis, Examples)
{
    Prime two(2);
    EXPECT_TRUE(kernel_basis(FpMatrix::identity(two, 4)).empty());
    EXPECT_EQ(kernel_basis(FpMatrix(two, 2, 3)).size(), 3u);
    auto k = kernel_basis(FpMatrix::from_dense(two, {{1, 1}}));
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0], FpVector::from_dense(two, {1, 1}));
}

TEST(Solve, Examples)
{
    Prime two(2);
    auto b = FpVector::from_dense(two, {1, 0, 1});
    EXPECT_EQ(solve(FpMatrix::identity(two, 3), b), b);
    EXPECT_FALSE(solve(FpMatrix(two, 3, 3), b).has_value());
    auto x = solve(FpMatrix::from_dense(two, {{1, 1}, {0, 1}}), FpVector::from_dense(two, {0, 1}));
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(*x, FpVector::from_dense(two, {1, 1}));
    EXPECT_THROW(solve(FpMatrix::identity(two, 2), b), std::invalid_argument);
}

TEST(FpLinear, RandomMatrixProperties)
{
    std::mt19937 rng(1234);
    for (int p : {2, 3, 5, 7}) {
        Prime prime(p);
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t rows = 1 + rng() % 25, cols = 1 + rng() % 25;
            double density = (trial % 3 == 0) ? 0.8 : 0.15;
            auto m = random_matrix(rng, prime, rows, cols, density);
            auto rr = row_reduce(m);
            EXPECT_TRUE(is_rref(rr));
            EXPECT_LE(rr.rank, std::min(rows, cols));
            auto kernel = kernel_basis(m);
            EXPECT_EQ(rr.rank + kernel.size(), cols);
            for (const auto& v : kernel)
                EXPECT_TRUE((m * v).is_zero());
            // kernel vectors are independent
            Subspace span(prime, cols);
            for (const auto& v : kernel)
                EXPECT_TRUE(span.add(v));
            // row space preserved: every original row lies in the span of the reduced rows
            Subspace rowspace(prime, cols);
            for (std::size_t r = 0; r < rr.rank; ++r) {
                FpVector v(prime, cols);
                for (const auto& [c, x] : rr.reduced.row(r))
                    v.push_back(c, x);
                rowspace.add(v);
            }
            for (std::size_t r = 0; r < rows; ++r) {
                FpVector v(prime, cols);
                for (const auto& [c, x] : m.row(r))
                    v.push_back(c, x);
                EXPECT_TRUE(rowspace.contains(v));
            }
            // determinism
            EXPECT_EQ(row_reduce(m).reduced, rr.reduced);
        }
    }
}

TEST(FpLinear, KernelDimensionMatchesEnumeration)
{
    std::mt19937 rng(99);
    for (int p : {2, 3}) {
        Prime prime(p);
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % (p == 2 ? 10 : 6);
            auto m = random_matrix(rng, prime, rows, cols, 0.4);
            EXPECT_EQ(kernel_basis(m).size(), oracle::kernel_dimension_brute(m));
        }
    }
}

TEST(FpLinear, SolveReproducesRightHandSide)
{
    std::mt19937 rng(5);
    for (int p : {2, 5}) {
        Prime prime(p);
        for (int trial = 0; trial < 80; ++trial) {
            std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
            auto m = random_matrix(rng, prime, rows, cols, 0.3);
            FpVector b(prime, rows);
            if (trial % 2 == 0) {
                // b in the column space by construction
                FpVector x(prime, cols);
                for (std::size_t c = 0; c < cols; ++c)
                    x.push_back(c, static_cast<std::uint32_t>(rng() % p));
                b = m * x;
            }
            else {
                for (std::size_t r = 0; r < rows; ++r)
                    b.push_back(r, static_cast<std::uint32_t>(rng() % p));
            }
            auto x = solve(m, b);
            Subspace columns(prime, rows);
            for (std::size_t c = 0; c < cols; ++c)
                columns.add(m.column(c));
            EXPECT_EQ(x.has_value(), columns.contains(b));
            if (x) {
                EXPECT_EQ(m * *x, b);
            }
        }
    }
}

TEST(FpLinear, DenseFallbackGivesSameAnswer)
{
    // Same matrix reduced through mostly-sparse and mostly-dense working rows.
    std::mt19937 rng(77);
    Prime three(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto sparse = random_matrix(rng, three, 30, 30, 0.05);
        auto dense = random_matrix(rng, three, 30, 30, 0.9);
        for (const auto* m : {&sparse, &dense}) {
            auto rr = row_reduce(*m);
            EXPECT_TRUE(is_rref(rr));
            // rank agrees with incremental insertion of the rows
            Subspace rows(three, 30);
            std::size_t added = 0;
            for (std::size_t r = 0; r < 30; ++r) {
                FpVector v(three, 30);
                for (const auto& [c, x] : m->row(r))
                    v.push_back(c, x);
                added += rows.add(v);
            }
            EXPECT_EQ(rr.rank, added);
        }
    }
}

TEST(Subspace, AddAndContain)
{
    Prime five(5);
    Subspace s(five, 3);
    EXPECT_TRUE(s.add(FpVector::from_dense(five, {1, 2, 0})));
    EXPECT_FALSE(s.add(FpVector::from_dense(five, {2, 4, 0})));
    EXPECT_TRUE(s.contains(FpVector::from_dense(five, {3, 1, 0})));
    EXPECT_FALSE(s.contains(FpVector::from_dense(five, {0, 0, 1})));
    EXPECT_EQ(s.dimension(), 1u);
}
