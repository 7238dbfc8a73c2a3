#pragma once

// Exponent certificates and the explicit torsion-exponent bounds for Postnikov
// sections of the sphere and their consequences.
//
// All values are p-exponents: a certificate with value e says p^e annihilates the
// subject (upper) or that p^e is a lower bound for its exponent (lower).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exptk/resolution.hpp"
#include "exptk/steenrod.hpp"

namespace exptk {

enum class CertificateKind { Upper, Lower };

struct ExponentCertificate {
    Prime prime{2};
    CertificateKind kind = CertificateKind::Upper;
    int value = 0;
    std::string subject;
    std::string provenance;
};

/// Raised when the fixed-point dimension hypothesis of the equivariant bound fails.
class HypothesisViolation : public std::invalid_argument {
public:
    HypothesisViolation(const std::string& what, std::string subgroup)
        : std::invalid_argument(what), subgroup_(std::move(subgroup))
    {
    }
    const std::string& subgroup() const { return subgroup_; }

private:
    std::string subgroup_;
};

namespace detail {

inline long long floor_div(long long a, long long b)
{
    long long q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

inline std::string tau_label(int a, int b) { return "tau[" + std::to_string(a) + "," + std::to_string(b) + "]S^0"; }

inline void require_upper(const ExponentCertificate& c, const char* op)
{
    if (c.kind != CertificateKind::Upper)
        throw std::invalid_argument(std::string(op) + " only combines upper-bound certificates");
    if (c.value < 0)
        throw std::invalid_argument(std::string(op) + ": negative certificate value");
}

}  // namespace detail

inline int p_adic_valuation(long long n, Prime p)
{
    if (n == 0)
        throw std::invalid_argument("valuation of zero");
    int v = 0;
    n = n < 0 ? -n : n;
    while (n % p.value() == 0) {
        n /= p.value();
        ++v;
    }
    return v;
}

// Upper bound for exp_p(tau[1,n] S^0): ceil(n/2) + 3 at p = 2, ceil((n+3)/(2p-2)) + 1 at odd p.
inline int main_upper_value(Prime p, int n)
{
    if (n < 1)
        return 0;  // tau[1,n]S^0 = 0
    if (p.is_two())
        return static_cast<int>(detail::ceil_div(n, 2)) + 3;
    return static_cast<int>(detail::ceil_div(n + 3, 2LL * (p.value() - 1))) + 1;
}

// Lower bound for exp_p(tau[1,n] S^0): floor((n-1)/2) at p = 2, floor((n-1)/(2p-2)) at odd p.
inline int main_lower_value(Prime p, int n)
{
    if (n < 1)
        return 0;
    return static_cast<int>(detail::floor_div(n - 1, p.is_two() ? 2 : 2LL * (p.value() - 1)));
}

/// Upper certificate for tau[1,n] S^0 from the closed-form vanishing-line bound.
/// For n < 1 the truncation is contractible and the value is 0.
inline ExponentCertificate main_upper_certificate(Prime p, int n)
{
    ExponentCertificate c{p, CertificateKind::Upper, main_upper_value(p, n), detail::tau_label(1, n), ""};
    c.provenance = n < 1 ? "trivial truncation" : "vanishing-line bound on tau[1,n]S^0";
    return c;
}

using CertificateSource = std::function<ExponentCertificate(int)>;

inline CertificateSource default_certificate_source(Prime p)
{
    return [p](int n) { return main_upper_certificate(p, n); };
}

// ---------------------------------------------------------------------------
// Closed-form bounds

enum class BoundKind {
    MainUpper,
    MainLower,
    HurewiczKernel,
    HurewiczCokernel,
    KInvariant,
    InfiniteLoopKernel,
    TorsionInterval,
    ClassifyingSpace,
};

struct BoundParameters {
    int m = 0;                    // connectivity + 1 of the infinite loop space
    int k = 0;                    // p^k annihilates each homotopy group (torsion interval)
    int ell = 0;                  // length of the homotopy interval (torsion interval)
    long long group_order = 0;    // |G| for classifying spaces
};

inline std::string bound_kind_name(BoundKind kind)
{
    switch (kind) {
    case BoundKind::MainUpper:
        return "main-upper";
    case BoundKind::MainLower:
        return "main-lower";
    case BoundKind::HurewiczKernel:
        return "hurewicz-kernel";
    case BoundKind::HurewiczCokernel:
        return "hurewicz-cokernel";
    case BoundKind::KInvariant:
        return "k-invariant";
    case BoundKind::InfiniteLoopKernel:
        return "infinite-loop-kernel";
    case BoundKind::TorsionInterval:
        return "torsion-interval";
    case BoundKind::ClassifyingSpace:
        return "classifying-space";
    }
    return "?";
}

/// Evaluates one of the explicit bound formulas. Throws std::invalid_argument on bad parameters.
/// The torsion-interval kind reads its interval length from `extra.ell` and ignores n.
inline ExponentCertificate closed_form_bound(BoundKind kind, Prime p, int n, const BoundParameters& extra = {})
{
    if (kind != BoundKind::TorsionInterval && n < 1)
        throw std::invalid_argument("n must be at least 1");
    ExponentCertificate c{p, CertificateKind::Upper, 0, "", bound_kind_name(kind)};
    const std::string deg = std::to_string(n);
    switch (kind) {
    case BoundKind::MainUpper:
        c.value = main_upper_value(p, n);
        c.subject = detail::tau_label(1, n);
        break;
    case BoundKind::MainLower:
        c.kind = CertificateKind::Lower;
        c.value = main_lower_value(p, n);
        c.subject = detail::tau_label(1, n);
        break;
    case BoundKind::HurewiczKernel:
        c.value = main_upper_value(p, n);
        c.subject = "ker(pi_" + deg + "(X) -> H_" + deg + "(X;Z))";
        break;
    case BoundKind::HurewiczCokernel:
        // p = 2: ceil((n-1)/2) + 3; odd p: ceil((n+2)/(2p-2)) + 1
        if (p.is_two())
            c.value = static_cast<int>(detail::ceil_div(n - 1, 2)) + 3;
        else
            c.value = static_cast<int>(detail::ceil_div(n + 2, 2LL * (p.value() - 1))) + 1;
        c.subject = "coker(pi_" + deg + "(X) -> H_" + deg + "(X;Z))";
        break;
    case BoundKind::KInvariant:
        c.value = main_upper_value(p, n);
        c.subject = deg + "th k-invariant";
        break;
    case BoundKind::InfiniteLoopKernel:
        if (extra.m < 1 || extra.m > n)
            throw std::invalid_argument("infinite-loop bound needs 1 <= m <= n");
        c.value = main_upper_value(p, n - extra.m);
        c.subject = "ker(pi_" + deg + "(X) -> H_" + deg + "(X;Z)), X (" + std::to_string(extra.m - 1) +
                    ")-connected infinite loop space";
        break;
    case BoundKind::TorsionInterval:
        if (extra.ell < 1)
            throw std::invalid_argument("torsion-interval bound needs ell >= 1");
        if (extra.k < 0)
            throw std::invalid_argument("torsion-interval bound needs k >= 0");
        c.value = extra.k + main_upper_value(p, extra.ell) + main_upper_value(p, extra.ell - 1);
        c.subject = "X with p^" + std::to_string(extra.k) + "-torsion homotopy in an interval of length " +
                    std::to_string(extra.ell);
        break;
    case BoundKind::ClassifyingSpace:
        if (extra.group_order < 1)
            throw std::invalid_argument("classifying-space bound needs |G| >= 1");
        c.value = p_adic_valuation(extra.group_order, p) + main_upper_value(p, n);
        c.subject = "tau[1," + deg + "] Sigma^inf BG, |G| = " + std::to_string(extra.group_order);
        break;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Vanishing functions

/// f with Ext^{s,t} = 0 whenever t < f(s). Either affine, or a per-row table read off a chart.
class VanishingFunction {
public:
    static VanishingFunction affine(Prime p, int slope, int intercept)
    {
        VanishingFunction f(p);
        f.affine_ = {slope, intercept};
        return f;
    }

    // rows[s] is the least t with Ext^{s,t} != 0, or nullopt when row s is empty through t_max.
    static VanishingFunction table(Prime p, std::vector<std::optional<int>> rows, int t_max)
    {
        VanishingFunction f(p);
        f.rows_ = std::move(rows);
        f.t_max_ = t_max;
        return f;
    }

    Prime prime() const { return p_; }
    bool is_affine() const { return affine_.has_value(); }
    std::pair<int, int> coefficients() const { return affine_.value(); }
    int s_max() const { return static_cast<int>(rows_.size()) - 1; }
    int t_max() const { return t_max_; }
    const std::vector<std::optional<int>>& rows() const { return rows_; }

    bool window_limited(int s) const { return !affine_ && s >= 0 && s <= s_max() && !rows_[s]; }

    // Known value; nullopt outside the table or on a window-limited row.
    std::optional<int> at(int s) const
    {
        if (affine_)
            return affine_->first * s + affine_->second;
        if (s < 0 || s > s_max())
            return std::nullopt;
        return rows_[static_cast<std::size_t>(s)];
    }

private:
    explicit VanishingFunction(Prime p) : p_(p) {}

    Prime p_;
    std::optional<std::pair<int, int>> affine_;
    std::vector<std::optional<int>> rows_;
    int t_max_ = 0;
};

inline VanishingFunction vanishing_function_from_chart(const ExtChart& chart)
{
    std::vector<std::optional<int>> rows(static_cast<std::size_t>(chart.s_max + 1));
    for (const auto& [st, d] : chart.dims) {
        auto [s, t] = st;
        if (d <= 0 || s < 0 || s > chart.s_max || t > chart.t_max)
            continue;
        auto& slot = rows[static_cast<std::size_t>(s)];
        if (!slot || t < *slot)
            slot = t;
    }
    return VanishingFunction::table(chart.prime, std::move(rows), chart.t_max);
}

struct VanishingBound {
    enum class Status { Found, None, WindowLimited };
    Status status = Status::None;
    std::optional<ExponentCertificate> certificate;
    int m = -1;
};

/// Least m >= 0 with f(m) - m > n; then p^m annihilates tau[0,n] of a spectrum with that
/// cohomology. A table whose rows run out first reports WindowLimited. A table row that is
/// empty through t_max contributes the vanishing value t_max + 1.
inline VanishingBound exponent_bound_from_vanishing(const VanishingFunction& f, int n)
{
    VanishingBound out;
    auto found = [&](int m, std::string how) {
        out.status = VanishingBound::Status::Found;
        out.m = m;
        out.certificate = ExponentCertificate{f.prime(), CertificateKind::Upper, m, "tau[0," + std::to_string(n) + "]",
                                              std::move(how)};
    };
    if (f.is_affine()) {
        auto [a, b] = f.coefficients();
        const long long slack = static_cast<long long>(n) - b;  // need (a-1) m > n - b
        std::string how = "vanishing function f(s) = " + std::to_string(a) + "s" + (b < 0 ? " - " : " + ") +
                          std::to_string(b < 0 ? -b : b);
        if (slack < 0)
            found(0, how);
        else if (a > 1)
            found(static_cast<int>(slack / (a - 1) + 1), how);
        return out;
    }
    for (int m = 0; m <= f.s_max(); ++m) {
        int value = f.at(m).value_or(f.t_max() + 1);
        if (value - m > n) {
            found(m, f.window_limited(m) ? "chart row empty through the computed window" : "vanishing function read off a chart");
            return out;
        }
    }
    out.status = VanishingBound::Status::WindowLimited;
    return out;
}

// ---------------------------------------------------------------------------
// Certificate calculus

/// Upper bound for the middle term of a cofiber sequence: exponents add.
inline ExponentCertificate cofiber_combine(const ExponentCertificate& a, const ExponentCertificate& b)
{
    detail::require_upper(a, "cofiber_combine");
    detail::require_upper(b, "cofiber_combine");
    if (!(a.prime == b.prime))
        throw std::invalid_argument("cofiber_combine: certificates at different primes");
    return {a.prime, CertificateKind::Upper, a.value + b.value, "extension of (" + a.subject + ") by (" + b.subject + ")",
            "cofiber sequence [" + a.provenance + "] + [" + b.provenance + "]"};
}

/// Spectrum with homotopy in [m, n], p^{e_i} killing pi_i: exponent at most sum e_i.
inline ExponentCertificate interval_product_bound(Prime p, std::span<const int> exponents)
{
    int total = 0;
    for (int e : exponents) {
        if (e < 0)
            throw std::invalid_argument("interval_product_bound: negative exponent");
        total += e;
    }
    return {p, CertificateKind::Upper, total, "spectrum with " + std::to_string(exponents.size()) + " homotopy groups",
            "Postnikov tower, one cofiber per homotopy group"};
}

/// A truncation of an object is annihilated by whatever annihilates the object.
inline ExponentCertificate truncate_cert(const ExponentCertificate& c)
{
    detail::require_upper(c, "truncate_cert");
    return {c.prime, CertificateKind::Upper, c.value, "truncation of " + c.subject, "truncation of [" + c.provenance + "]"};
}

/// exp(X ^ Y) divides gcd(exp X, exp Y); on p-parts this is the minimum.
inline ExponentCertificate smash_combine(const ExponentCertificate& a, const ExponentCertificate& b)
{
    detail::require_upper(a, "smash_combine");
    detail::require_upper(b, "smash_combine");
    if (!(a.prime == b.prime))
        throw std::invalid_argument("smash_combine: certificates at different primes");
    return {a.prime, CertificateKind::Upper, std::min(a.value, b.value), "(" + a.subject + ") ^ (" + b.subject + ")",
            "smash product [" + a.provenance + "] , [" + b.provenance + "]"};
}

struct HurewiczBounds {
    ExponentCertificate kernel;
    ExponentCertificate cokernel;
};

/// If tau[1,n]S^0 is killed by N and tau[1,n-1]S^0 by N', then N kills the Hurewicz kernel
/// in degree n and N' y lies in the Hurewicz image for every y in H_n.
inline HurewiczBounds hurewicz_bounds_from_cert(const ExponentCertificate& kernel_cert,
                                                const ExponentCertificate& cokernel_cert, int n)
{
    detail::require_upper(kernel_cert, "hurewicz_bounds_from_cert");
    detail::require_upper(cokernel_cert, "hurewicz_bounds_from_cert");
    const std::string deg = std::to_string(n);
    return {
        {kernel_cert.prime, CertificateKind::Upper, kernel_cert.value, "ker(pi_" + deg + " -> H_" + deg + ")",
         "Hurewicz fiber sequence from [" + kernel_cert.provenance + "]"},
        {cokernel_cert.prime, CertificateKind::Upper, cokernel_cert.value, "coker(pi_" + deg + " -> H_" + deg + ")",
         "Hurewicz fiber sequence from [" + cokernel_cert.provenance + "]"},
    };
}

inline HurewiczBounds hurewicz_bounds(Prime p, int n, const CertificateSource& source)
{
    auto kernel = source(n);
    auto cokernel = source(n - 1);
    if (!(kernel.prime == p) || !(cokernel.prime == p))
        throw std::invalid_argument("hurewicz_bounds: certificate source at a different prime");
    return hurewicz_bounds_from_cert(kernel, cokernel, n);
}

enum class HurewiczPart { Kernel, Cokernel };

/// Product of the exponents of the first n (kernel) or n-1 (cokernel) stable stems, summed as
/// p-exponents. The stem exponents are caller-supplied.
inline ExponentCertificate arlettaz_bound(Prime p, std::span<const int> rho, int n, HurewiczPart part)
{
    if (n < 1)
        throw std::invalid_argument("arlettaz_bound: n must be at least 1");
    std::size_t needed = static_cast<std::size_t>(part == HurewiczPart::Kernel ? n : n - 1);
    if (rho.size() < needed)
        throw std::invalid_argument("arlettaz_bound: need " + std::to_string(needed) + " stem exponents, got " +
                                    std::to_string(rho.size()));
    int total = 0;
    for (std::size_t i = 0; i < needed; ++i) {
        if (rho[i] < 0)
            throw std::invalid_argument("arlettaz_bound: negative exponent");
        total += rho[i];
    }
    const std::string deg = std::to_string(n);
    return {p, CertificateKind::Upper, total,
            (part == HurewiczPart::Kernel ? "ker(pi_" : "coker(pi_") + deg + " -> H_" + deg + ")",
            "product of stable stem exponents"};
}

inline ExponentCertificate k_invariant_bound(Prime p, int n, const ExponentCertificate& cert)
{
    if (n < 1)
        throw std::invalid_argument("k_invariant_bound: n must be at least 1");
    detail::require_upper(cert, "k_invariant_bound");
    if (!(cert.prime == p))
        throw std::invalid_argument("k_invariant_bound: certificate at a different prime");
    return {p, CertificateKind::Upper, cert.value, std::to_string(n) + "th k-invariant",
            "k-invariant annihilated by exp(tau[1,n]S^0) [" + cert.provenance + "]"};
}

// ---------------------------------------------------------------------------
// Equivariant stable stems

struct SubgroupRecord {
    std::string label;
    long long weyl_order = 1;
    int fixed_dim = 0;
};

struct GroupFixedPointData {
    std::string group;
    std::vector<SubgroupRecord> records;  // one per conjugacy class of subgroups

    void validate() const
    {
        if (records.empty())
            throw std::invalid_argument("group data has no subgroup records");
        for (const auto& r : records) {
            if (r.weyl_order < 1)
                throw std::invalid_argument("subgroup " + r.label + ": Weyl group order must be >= 1");
            if (r.fixed_dim < 0)
                throw std::invalid_argument("subgroup " + r.label + ": fixed dimension must be >= 0");
        }
    }
};

/// p-exponent bound for pi_{n,G}(S^V): the max over subgroups H with dim V^H < n of
/// v_p(|WH|) + exp_p(tau[1, n - dim V^H] S^0). Throws HypothesisViolation if n = dim V^H for some H.
inline ExponentCertificate equivariant_bound(const GroupFixedPointData& g, int n, Prime p,
                                             const CertificateSource& cert_source)
{
    g.validate();
    for (const auto& r : g.records)
        if (r.fixed_dim == n)
            throw HypothesisViolation("n = " + std::to_string(n) + " equals dim V^H for subgroup " + r.label, r.label);

    ExponentCertificate out{p, CertificateKind::Upper, 0, "pi_{" + std::to_string(n) + "," + g.group + "}(S^V)",
                            "no contributing subgroups"};
    std::optional<std::string> argmax;
    for (const auto& r : g.records) {
        if (r.fixed_dim >= n)
            continue;
        auto cert = cert_source(n - r.fixed_dim);
        detail::require_upper(cert, "equivariant_bound");
        int value = p_adic_valuation(r.weyl_order, p) + cert.value;
        if (!argmax || value > out.value) {
            out.value = value;
            argmax = r.label;
        }
    }
    if (argmax)
        out.provenance = "tom Dieck splitting, maximal contribution from H = " + *argmax;
    return out;
}

/// p^value, the p-part of the lcm-form bound. Throws std::overflow_error past 2^63.
inline unsigned long long integer_form(const ExponentCertificate& c)
{
    unsigned long long out = 1;
    const auto p = static_cast<unsigned long long>(c.prime.value());
    for (int i = 0; i < c.value; ++i) {
        if (out > std::numeric_limits<unsigned long long>::max() / p / 2)
            throw std::overflow_error("integer form of certificate overflows");
        out *= p;
    }
    return out;
}

/// lcm over subgroups of |WH| exp(tau[1, n - dim V^H] S^0), restricted to the listed primes:
/// the product of p^{equivariant_bound at p}.
inline unsigned long long equivariant_lcm_bound(const GroupFixedPointData& g, int n, std::span<const Prime> primes,
                                                const std::function<CertificateSource(Prime)>& source_for)
{
    unsigned long long out = 1;
    for (auto p : primes) {
        auto part = integer_form(equivariant_bound(g, n, p, source_for(p)));
        if (out > std::numeric_limits<unsigned long long>::max() / part)
            throw std::overflow_error("lcm-form bound overflows");
        out *= part;
    }
    return out;
}

}  // namespace exptk
