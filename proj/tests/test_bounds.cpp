#include <gtest/gtest.h>

#include <random>

#include "exptk/bounds.hpp"
#include "oracles.hpp"

using namespace exptk;

namespace {

// Independent restatements of the closed forms using only integer division on nonnegatives.
int upper_ref(int p, int n)
{
    if (p == 2)
        return (n + 1) / 2 + 3;
    int q = 2 * p - 2;
    return (n + 3 + q - 1) / q + 1;
}

int lower_ref(int p, int n) { return (n - 1) / (p == 2 ? 2 : 2 * p - 2); }

GroupFixedPointData sigma3()
{
    return {"Sigma3", {{"e", 6, 0}, {"C2", 1, 0}, {"C3", 2, 0}, {"Sigma3", 1, 0}}};
}

}  // namespace

TEST(ClosedForm, SpotValues)
{
    EXPECT_EQ(closed_form_bound(BoundKind::MainUpper, Prime(2), 10).value, 8);
    EXPECT_EQ(closed_form_bound(BoundKind::MainLower, Prime(2), 10).value, 4);
    EXPECT_EQ(closed_form_bound(BoundKind::MainLower, Prime(3), 13).value, 3);
    EXPECT_EQ(closed_form_bound(BoundKind::MainUpper, Prime(3), 13).value, 5);
    EXPECT_EQ(closed_form_bound(BoundKind::MainUpper, Prime(3), 10).value, 5);
    EXPECT_EQ(closed_form_bound(BoundKind::MainLower, Prime(3), 10).value, 2);
    EXPECT_EQ(closed_form_bound(BoundKind::MainUpper, Prime(2), 1).value, 4);
    EXPECT_EQ(closed_form_bound(BoundKind::MainLower, Prime(2), 1).value, 0);
    EXPECT_EQ(closed_form_bound(BoundKind::HurewiczCokernel, Prime(5), 10).value, 3);
    EXPECT_EQ(closed_form_bound(BoundKind::InfiniteLoopKernel, Prime(2), 7, {.m = 3}).value, 5);
    EXPECT_EQ(closed_form_bound(BoundKind::TorsionInterval, Prime(2), 0, {.k = 1, .ell = 4}).value, 11);
    EXPECT_EQ(closed_form_bound(BoundKind::ClassifyingSpace, Prime(2), 4, {.group_order = 6}).value, 6);
    EXPECT_EQ(closed_form_bound(BoundKind::KInvariant, Prime(2), 9).value, 8);
    EXPECT_EQ(closed_form_bound(BoundKind::KInvariant, Prime(3), 9).value, 4);
    EXPECT_EQ(closed_form_bound(BoundKind::KInvariant, Prime(2), 1).value, 4);
}

TEST(ClosedForm, KindsAndErrors)
{
    EXPECT_EQ(closed_form_bound(BoundKind::MainLower, Prime(2), 5).kind, CertificateKind::Lower);
    EXPECT_EQ(closed_form_bound(BoundKind::MainUpper, Prime(2), 5).kind, CertificateKind::Upper);
    EXPECT_THROW(closed_form_bound(BoundKind::MainUpper, Prime(2), 0), std::invalid_argument);
    EXPECT_THROW(closed_form_bound(BoundKind::InfiniteLoopKernel, Prime(2), 5, {.m = 6}), std::invalid_argument);
    EXPECT_THROW(closed_form_bound(BoundKind::TorsionInterval, Prime(2), 0, {.k = 1, .ell = 0}), std::invalid_argument);
    EXPECT_THROW(closed_form_bound(BoundKind::ClassifyingSpace, Prime(2), 3), std::invalid_argument);
}

TEST(ClosedForm, AgreesWithReferenceArithmetic)
{
    for (int p : {2, 3, 5, 7, 11, 13, 97})
        for (int n = 1; n <= 2000; ++n) {
            EXPECT_EQ(main_upper_value(Prime(p), n), upper_ref(p, n));
            EXPECT_EQ(main_lower_value(Prime(p), n), lower_ref(p, n));
        }
}

TEST(ClosedForm, Monotone)
{
    for (int p : {2, 3, 5})
        for (int n = 1; n < 500; ++n) {
            EXPECT_LE(main_upper_value(Prime(p), n), main_upper_value(Prime(p), n + 1));
            EXPECT_LE(main_lower_value(Prime(p), n), main_lower_value(Prime(p), n + 1));
            EXPECT_LE(main_lower_value(Prime(p), n), main_upper_value(Prime(p), n));
        }
}

TEST(ClosedForm, HurewiczCokernelIsUpperOneDegreeDown)
{
    for (int p : {2, 3, 5, 7})
        for (int n = 2; n <= 300; ++n)
            EXPECT_EQ(closed_form_bound(BoundKind::HurewiczCokernel, Prime(p), n).value, main_upper_value(Prime(p), n - 1));
}

TEST(PAdicValuation, Values)
{
    EXPECT_EQ(p_adic_valuation(6, Prime(2)), 1);
    EXPECT_EQ(p_adic_valuation(6, Prime(3)), 1);
    EXPECT_EQ(p_adic_valuation(6, Prime(5)), 0);
    EXPECT_EQ(p_adic_valuation(1024, Prime(2)), 10);
    EXPECT_THROW(p_adic_valuation(0, Prime(2)), std::invalid_argument);
}

TEST(ExponentBoundFromVanishing, Examples)
{
    auto a = exponent_bound_from_vanishing(VanishingFunction::affine(Prime(2), 3, -5), 10);
    ASSERT_EQ(a.status, VanishingBound::Status::Found);
    EXPECT_EQ(a.m, 8);
    auto b = exponent_bound_from_vanishing(VanishingFunction::affine(Prime(3), 5, -6), 13);
    ASSERT_EQ(b.status, VanishingBound::Status::Found);
    EXPECT_EQ(b.m, 5);
    for (int n : {0, 1, 17, 400})
        EXPECT_EQ(exponent_bound_from_vanishing(VanishingFunction::affine(Prime(2), 1, 0), n).status,
                  VanishingBound::Status::None);
}

TEST(ExponentBoundFromVanishing, AffineMatchesSearch)
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 5000; ++trial) {
        int a = static_cast<int>(rng() % 8);
        int b = static_cast<int>(rng() % 41) - 20;
        int n = static_cast<int>(rng() % 200);
        auto got = exponent_bound_from_vanishing(VanishingFunction::affine(Prime(2), a, b), n);
        int want = oracle::vanishing_m_brute(a, b, n, 1000);
        if (want < 0) {
            EXPECT_EQ(got.status, VanishingBound::Status::None) << a << " " << b << " " << n;
        }
        else {
            ASSERT_EQ(got.status, VanishingBound::Status::Found) << a << " " << b << " " << n;
            EXPECT_EQ(got.m, want) << a << " " << b << " " << n;
        }
    }
}

TEST(ExponentBoundFromVanishing, ClosedFormsThroughThousand)
{
    for (int n = 1; n <= 1000; ++n)
        EXPECT_EQ(exponent_bound_from_vanishing(VanishingFunction::affine(Prime(2), 3, -5), n).m, main_upper_value(Prime(2), n));
    for (int p : {3, 5, 7, 11})
        for (int n = 1; n <= 1000; ++n)
            EXPECT_EQ(exponent_bound_from_vanishing(VanishingFunction::affine(Prime(p), 2 * p - 1, -2 * p), n).m,
                      main_upper_value(Prime(p), n));
}

TEST(VanishingFromChart, Examples)
{
    auto hz = vanishing_function_from_chart(compute_chart(Prime(2), BuiltinModule::Hz, 6, 12));
    auto sphere = vanishing_function_from_chart(compute_chart(Prime(2), BuiltinModule::Sphere, 6, 12));
    for (int s = 0; s <= 6; ++s) {
        EXPECT_EQ(hz.at(s), s);
        EXPECT_EQ(sphere.at(s), s);
    }
    ExtChart empty;
    empty.prime = Prime(2);
    empty.s_max = 4;
    empty.t_max = 9;
    auto f = vanishing_function_from_chart(empty);
    for (int s = 0; s <= 4; ++s)
        EXPECT_TRUE(f.window_limited(s));
}

TEST(VanishingFromChart, TableBound)
{
    // diagonal chart: f(s) = s gives no bound
    auto hz = vanishing_function_from_chart(compute_chart(Prime(2), BuiltinModule::Hz, 5, 10));
    EXPECT_EQ(exponent_bound_from_vanishing(hz, 3).status, VanishingBound::Status::WindowLimited);
    // rows beyond the window count as t_max + 1
    ExtChart empty;
    empty.prime = Prime(2);
    empty.s_max = 3;
    empty.t_max = 9;
    auto b = exponent_bound_from_vanishing(vanishing_function_from_chart(empty), 5);
    ASSERT_EQ(b.status, VanishingBound::Status::Found);
    EXPECT_EQ(b.m, 0);
}

TEST(Combinators, Examples)
{
    Prime two(2);
    auto up = [&](int v) { return ExponentCertificate{two, CertificateKind::Upper, v, "x", "test"}; };
    EXPECT_EQ(cofiber_combine(up(2), up(3)).value, 5);
    EXPECT_EQ(cofiber_combine(up(0), up(4)).value, 4);
    EXPECT_EQ(cofiber_combine(up(4), up(0)).value, 4);

    std::vector<int> rho{1, 1, 3};
    EXPECT_EQ(interval_product_bound(two, rho).value, 5);
    EXPECT_EQ(interval_product_bound(two, std::span<const int>{}).value, 0);
    std::vector<int> single{7};
    EXPECT_EQ(interval_product_bound(two, single).value, 7);

    EXPECT_EQ(truncate_cert(up(4)).value, 4);
    EXPECT_EQ(smash_combine(up(3), up(5)).value, 3);
    EXPECT_EQ(smash_combine(up(0), up(5)).value, 0);

    ExponentCertificate lower{two, CertificateKind::Lower, 2, "x", "test"};
    EXPECT_THROW(cofiber_combine(lower, up(1)), std::invalid_argument);
    EXPECT_THROW(smash_combine(up(1), lower), std::invalid_argument);
    EXPECT_THROW(cofiber_combine(up(1), ExponentCertificate{Prime(3), CertificateKind::Upper, 1, "y", "t"}),
                 std::invalid_argument);
}

TEST(Combinators, AlgebraicLaws)
{
    std::mt19937 rng(8);
    Prime three(3);
    auto up = [&](int v) { return ExponentCertificate{three, CertificateKind::Upper, v, "x", "t"}; };
    for (int trial = 0; trial < 500; ++trial) {
        int a = rng() % 50, b = rng() % 50, c = rng() % 50;
        EXPECT_EQ(cofiber_combine(up(a), up(b)).value, cofiber_combine(up(b), up(a)).value);
        EXPECT_EQ(cofiber_combine(cofiber_combine(up(a), up(b)), up(c)).value,
                  cofiber_combine(up(a), cofiber_combine(up(b), up(c))).value);
        EXPECT_LE(smash_combine(up(a), up(b)).value, cofiber_combine(up(a), up(b)).value);
        EXPECT_EQ(smash_combine(up(a), up(b)).value, smash_combine(up(b), up(a)).value);
    }
}

TEST(Hurewicz, FromCertificates)
{
    auto b = hurewicz_bounds(Prime(2), 10, default_certificate_source(Prime(2)));
    EXPECT_EQ(b.kernel.value, 8);
    EXPECT_EQ(b.cokernel.value, 8);
    auto one = hurewicz_bounds(Prime(2), 1, default_certificate_source(Prime(2)));
    EXPECT_EQ(one.kernel.value, 4);
    EXPECT_EQ(one.cokernel.value, 0);
    EXPECT_EQ(hurewicz_bounds(Prime(3), 5, default_certificate_source(Prime(3))).kernel.value, 3);
    EXPECT_THROW(hurewicz_bounds(Prime(3), 5, default_certificate_source(Prime(2))), std::invalid_argument);
}

TEST(Hurewicz, ArlettazComparison)
{
    std::vector<int> rho{1, 1, 3};
    EXPECT_EQ(arlettaz_bound(Prime(2), rho, 3, HurewiczPart::Kernel).value, 5);
    EXPECT_EQ(arlettaz_bound(Prime(2), rho, 1, HurewiczPart::Kernel).value, 1);
    EXPECT_GE(arlettaz_bound(Prime(2), rho, 3, HurewiczPart::Kernel).value, main_upper_value(Prime(2), 3));
    EXPECT_THROW(arlettaz_bound(Prime(2), rho, 4, HurewiczPart::Kernel), std::invalid_argument);
    EXPECT_EQ(arlettaz_bound(Prime(2), rho, 4, HurewiczPart::Cokernel).value, 5);
}

TEST(KInvariant, EqualsCertificate)
{
    EXPECT_EQ(k_invariant_bound(Prime(2), 9, main_upper_certificate(Prime(2), 9)).value, 8);
    EXPECT_EQ(k_invariant_bound(Prime(3), 9, main_upper_certificate(Prime(3), 9)).value, 4);
    EXPECT_EQ(k_invariant_bound(Prime(2), 1, main_upper_certificate(Prime(2), 1)).value, 4);
    EXPECT_THROW(k_invariant_bound(Prime(3), 9, main_upper_certificate(Prime(2), 9)), std::invalid_argument);
}

TEST(Equivariant, Sigma3)
{
    auto g = sigma3();
    EXPECT_EQ(equivariant_bound(g, 3, Prime(2), default_certificate_source(Prime(2))).value, 6);
    // V = 0 collapses to v_p(|G|) + cert(n)
    for (int n = 1; n <= 30; ++n)
        for (int p : {2, 3}) {
            Prime prime(p);
            EXPECT_EQ(equivariant_bound(g, n, prime, default_certificate_source(prime)).value,
                      p_adic_valuation(6, prime) + main_upper_value(prime, n));
        }
}

TEST(Equivariant, TrivialGroupAndEmptyContributions)
{
    GroupFixedPointData trivial{"e", {{"e", 1, 0}}};
    EXPECT_EQ(equivariant_bound(trivial, 5, Prime(2), default_certificate_source(Prime(2))).value,
              main_upper_value(Prime(2), 5));
    GroupFixedPointData high{"C2", {{"e", 2, 9}, {"C2", 1, 7}}};
    auto c = equivariant_bound(high, 5, Prime(2), default_certificate_source(Prime(2)));
    EXPECT_EQ(c.value, 0);
    EXPECT_EQ(c.provenance, "no contributing subgroups");
}

TEST(Equivariant, HypothesisViolation)
{
    GroupFixedPointData g{"C2", {{"e", 2, 4}, {"C2", 1, 1}}};
    try {
        equivariant_bound(g, 4, Prime(2), default_certificate_source(Prime(2)));
        FAIL() << "expected HypothesisViolation";
    }
    catch (const HypothesisViolation& e) {
        EXPECT_EQ(e.subgroup(), "e");
    }
    EXPECT_EQ(equivariant_bound(g, 3, Prime(2), default_certificate_source(Prime(2))).value,
              main_upper_value(Prime(2), 2));
}

TEST(Equivariant, LcmForm)
{
    auto g = sigma3();
    std::vector<Prime> primes{Prime(2), Prime(3)};
    // 2^(1 + 5) * 3^(1 + 3)
    EXPECT_EQ(equivariant_lcm_bound(g, 3, primes, default_certificate_source), 64ull * 81ull);
}

TEST(VanishingFromChart, Tau1ChartBoundSitsBetweenClosedForms)
{
    for (int p : {2, 3}) {
        Prime prime(p);
        auto f = vanishing_function_from_chart(compute_chart(prime, BuiltinModule::Tau1, 8, p == 2 ? 32 : 60));
        int checked = 0;
        for (int n = 1; n <= 16; ++n) {
            auto b = exponent_bound_from_vanishing(f, n);
            if (b.status != VanishingBound::Status::Found || f.window_limited(b.m))
                continue;
            ++checked;
            EXPECT_LE(main_lower_value(prime, n), b.m) << p << " " << n;
            EXPECT_LE(b.m, main_upper_value(prime, n)) << p << " " << n;
        }
        EXPECT_GE(checked, 10);
    }
}
