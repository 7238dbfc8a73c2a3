#pragma once

// Lower-bound witnesses: even real projective spaces at p = 2 and skeleta Y_k of
// BSigma_p at odd p, with their homology and the (cited) orders of K^0.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "exptk/bounds.hpp"
#include "exptk/steenrod.hpp"

namespace exptk {

enum class CoefficientRing { Integral, PLocal };

/// Finitely generated abelian group as a list of cyclic orders; order 0 stands for the
/// coefficient ring itself (Z or Z_(p)).
struct GroupDescriptor {
    std::vector<long long> orders;

    bool is_zero() const { return orders.empty(); }

    friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;

    std::string to_string(CoefficientRing ring = CoefficientRing::Integral, int p = 0) const
    {
        if (orders.empty())
            return "0";
        std::string out;
        for (auto o : orders) {
            if (!out.empty())
                out += " + ";
            if (o == 0)
                out += ring == CoefficientRing::Integral ? "Z" : "Z_(" + std::to_string(p) + ")";
            else
                out += "Z/" + std::to_string(o);
        }
        return out;
    }
};

struct HomologyTable {
    std::string space;
    CoefficientRing ring = CoefficientRing::Integral;
    int prime = 0;  // for p-local tables
    bool reduced = false;
    std::map<int, GroupDescriptor> groups;  // nonzero degrees only

    GroupDescriptor at(int i) const
    {
        auto it = groups.find(i);
        return it == groups.end() ? GroupDescriptor{} : it->second;
    }
};

/// Reduced integral homology of RP^{2r}: Z/2 in odd degrees below 2r, zero otherwise.
inline GroupDescriptor rp_homology(int r, int i)
{
    if (r < 1)
        throw std::invalid_argument("rp_homology: r must be positive");
    if (i < 1 || i > 2 * r)
        return {};
    if (i % 2 == 1)
        return {{2}};
    return {};
}

inline HomologyTable rp_homology_table(int r)
{
    HomologyTable table{"RP^" + std::to_string(2 * r), CoefficientRing::Integral, 0, true, {}};
    for (int i = 0; i <= 2 * r; ++i)
        if (auto g = rp_homology(r, i); !g.is_zero())
            table.groups[i] = g;
    return table;
}

/// p-local homology of BSigma_p (p odd): Z_(p) in degree 0, Z/p in degrees k(2p-2) - 1 for k > 0.
inline GroupDescriptor bsigma_homology(Prime p, int i)
{
    if (p.is_two())
        throw std::invalid_argument("bsigma_homology: p must be odd");
    if (i < 0)
        return {};
    if (i == 0)
        return {{0}};
    const int q = 2 * (p.value() - 1);
    if ((i + 1) % q == 0)
        return {{p.value()}};
    return {};
}

inline HomologyTable bsigma_homology_table(Prime p, int max_degree)
{
    HomologyTable table{"BSigma_" + std::to_string(p.value()), CoefficientRing::PLocal, p.value(), false, {}};
    for (int i = 0; i <= max_degree; ++i)
        if (auto g = bsigma_homology(p, i); !g.is_zero())
            table.groups[i] = g;
    return table;
}

/// p-local cohomology of Y_k, the (2p-2)k skeleton of Sigma^inf BSigma_p:
/// Z/p in degrees 2p-2, 2(2p-2), ..., k(2p-2).
inline GroupDescriptor yk_cohomology(Prime p, int k, int i)
{
    if (p.is_two())
        throw std::invalid_argument("yk_cohomology: p must be odd");
    if (k < 1)
        throw std::invalid_argument("yk_cohomology: k must be positive");
    const int q = 2 * (p.value() - 1);
    if (i >= q && i <= k * q && i % q == 0)
        return {{p.value()}};
    return {};
}

struct CitedFact {
    std::string statement;
    std::string source;
};

struct WitnessRecord {
    Prime prime{2};
    int parameter = 0;              // r at p = 2, k at odd p
    std::string complex;            // the finite torsion complex used
    CitedFact k_theory;
    int k_order_exponent = 0;       // |K^0| = p^{k_order_exponent}
    int cell_bottom = 0;            // cells lie in degrees [cell_bottom, cell_top]
    int cell_top = 0;
    int degree = 0;                 // n such that exp_p(tau[1,n]S^0) >= lower.value
    ExponentCertificate lower;
};

/// p = 2, parameter r: RP^{2r} has K~^0 = Z/2^r and cells in [1, 2r], so exp_2(tau[1,2r-1]S^0) >= r - 1.
/// odd p, parameter k: Y_k has K^0 = Z/p^k and cells in [2p-3, (2p-2)k], so
/// exp_p(tau[1,(2p-2)(k-1)+1]S^0) >= k - 1.
inline WitnessRecord lower_bound_witness(Prime p, int parameter)
{
    if (parameter < 1)
        throw std::invalid_argument("lower_bound_witness: parameter must be positive");
    WitnessRecord w;
    w.prime = p;
    w.parameter = parameter;
    if (p.is_two()) {
        const int r = parameter;
        w.complex = "Sigma^inf RP^" + std::to_string(2 * r);
        w.k_theory = {"K~^0(RP^" + std::to_string(2 * r) + ") = Z/2^" + std::to_string(r), "J. F. Adams, Vector fields on spheres, Ann. of Math. 75 (1962)"};
        w.k_order_exponent = r;
        w.cell_bottom = 1;
        w.cell_top = 2 * r;
        w.degree = 2 * r - 1;
    }
    else {
        const int k = parameter;
        const int q = 2 * (p.value() - 1);
        w.complex = "Y_" + std::to_string(k) + " = " + std::to_string(q * k) + "-skeleton of Sigma^inf BSigma_" +
                    std::to_string(p.value());
        w.k_theory = {"K^0(Y_" + std::to_string(k) + ") = Z/" + std::to_string(p.value()) + "^" + std::to_string(k),
                      "Atiyah-Hirzebruch spectral sequence, extensions fixed by naturality along Y_k -> BSigma_p"};
        w.k_order_exponent = k;
        w.cell_bottom = q - 1;
        w.cell_top = q * k;
        w.degree = q * (k - 1) + 1;
    }
    // exp(witness) >= K-order exponent; smashing down to tau[1,n] loses one factor of p
    // because H Z ^ witness is killed by p.
    w.lower = {p, CertificateKind::Lower, w.k_order_exponent - 1, detail::tau_label(1, w.degree),
               "witness " + w.complex + " (" + w.k_theory.statement + ")"};
    return w;
}

struct ConsistencyViolation {
    int parameter = 0;
    int degree = 0;
    int witness_lower = 0;
    int reference = 0;
    std::string what;
};

/// Checks every witness with degree <= n_max against the closed-form bounds: its lower value
/// must not exceed the upper bound and must equal the floor formula at its degree.
inline std::vector<ConsistencyViolation> consistency_sweep(Prime p, int n_max)
{
    if (n_max < 1)
        throw std::invalid_argument("consistency_sweep: n_max must be at least 1");
    std::vector<ConsistencyViolation> out;
    for (int param = 1;; ++param) {
        auto w = lower_bound_witness(p, param);
        if (w.degree > n_max)
            break;
        int upper = main_upper_value(p, w.degree);
        if (w.lower.value > upper)
            out.push_back({param, w.degree, w.lower.value, upper, "witness exceeds upper bound"});
        int floor_value = main_lower_value(p, w.degree);
        if (w.lower.value != floor_value)
            out.push_back({param, w.degree, w.lower.value, floor_value, "witness differs from floor formula"});
    }
    return out;
}

}  // namespace exptk
