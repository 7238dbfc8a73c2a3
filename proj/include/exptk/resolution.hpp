#pragma once

// Minimal free resolutions of finitely presented graded A_p-modules over a finite
// (s, t) window, and the Ext charts read off from them.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "exptk/fp_linear.hpp"
#include "exptk/steenrod.hpp"

namespace exptk {

/// Homogeneous element of a free graded A_p-module: generator index -> coefficient.
struct FreeElement {
    int degree = 0;
    std::map<std::size_t, SteenrodElement> terms;

    bool is_zero() const { return terms.empty(); }

    void add(std::size_t gen, const SteenrodElement& coeff)
    {
        if (coeff.is_zero())
            return;
        auto it = terms.find(gen);
        if (it == terms.end()) {
            terms.emplace(gen, coeff);
            return;
        }
        it->second += coeff;
        if (it->second.is_zero())
            terms.erase(it);
    }
};

struct GradedModulePresentation {
    Prime prime{2};
    std::string label;
    std::vector<int> generator_degrees;
    std::vector<FreeElement> relations;
    int valid_through = 0;

    // Throws std::invalid_argument on inhomogeneous or dangling relations.
    void validate() const
    {
        for (std::size_t i = 0; i < relations.size(); ++i) {
            const auto& r = relations[i];
            for (const auto& [g, coeff] : r.terms) {
                if (g >= generator_degrees.size())
                    throw std::invalid_argument("relation " + std::to_string(i) + " references missing generator");
                if (!(coeff.prime() == prime))
                    throw std::invalid_argument("relation " + std::to_string(i) + " has coefficients over the wrong prime");
                if (coeff.degree() + generator_degrees[g] != r.degree)
                    throw std::invalid_argument("relation " + std::to_string(i) + " is not homogeneous");
            }
        }
    }
};

enum class BuiltinModule { Sphere, Hz, Tau1 };

inline std::string module_name(BuiltinModule m)
{
    switch (m) {
    case BuiltinModule::Sphere:
        return "sphere";
    case BuiltinModule::Hz:
        return "hz";
    case BuiltinModule::Tau1:
        return "tau1";
    }
    return "?";
}

inline std::optional<BuiltinModule> parse_module(const std::string& name)
{
    if (name == "sphere")
        return BuiltinModule::Sphere;
    if (name == "hz")
        return BuiltinModule::Hz;
    if (name == "tau1")
        return BuiltinModule::Tau1;
    return std::nullopt;
}

struct ResolutionOptions {
    unsigned threads = 1;
    // When set, basis vectors of every free module are enumerated in a seeded random
    // order instead of the canonical one. Dimensions must not depend on it.
    std::optional<std::uint64_t> shuffle_seed;
};

namespace detail {

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f)
{
    constexpr std::size_t kMinPerThread = 16;
    std::size_t workers = std::min<std::size_t>(threads == 0 ? 1 : threads, (n + kMinPerThread - 1) / kMinPerThread);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers)
                f(i);
        });
    for (auto& th : pool)
        th.join();
}

// Basis of a free module in one internal degree: pairs (generator, monomial).
class FreeLayout {
public:
    FreeLayout(const SteenrodAlgebra& algebra, const std::vector<int>& gen_degrees, std::size_t gen_count, int t,
               std::optional<std::uint64_t> seed = std::nullopt, int s = 0)
        : algebra_(&algebra), t_(t)
    {
        offsets_.assign(gen_count + 1, 0);
        for (std::size_t g = 0; g < gen_count; ++g) {
            int d = t - gen_degrees[g];
            std::size_t dim = d >= 0 ? algebra.dimension(d) : 0;
            offsets_[g + 1] = offsets_[g] + dim;
            degrees_.push_back(gen_degrees[g]);
        }
        std::size_t n = offsets_.back();
        perm_.resize(n);
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});
        if (seed) {
            std::seed_seq seq{static_cast<std::uint32_t>(*seed), static_cast<std::uint32_t>(*seed >> 32),
                              static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t)};
            std::mt19937_64 rng(seq);
            std::shuffle(perm_.begin(), perm_.end(), rng);
        }
        entries_.resize(n);
        for (std::size_t g = 0; g < gen_count; ++g) {
            int d = t - gen_degrees[g];
            if (d < 0)
                continue;
            const auto& monos = algebra.basis(d).monomials;
            for (std::size_t i = 0; i < monos.size(); ++i)
                entries_[perm_[offsets_[g] + i]] = {g, &monos[i]};
        }
    }

    std::size_t size() const { return entries_.size(); }
    std::size_t generator_count() const { return degrees_.size(); }

    std::size_t position(std::size_t gen, const AdmissibleMonomial& m) const
    {
        const auto& index = algebra_->basis(t_ - degrees_.at(gen)).index;
        return perm_[offsets_[gen] + index.at(m)];
    }

    std::size_t generator_at(std::size_t pos) const { return entries_[pos].first; }
    const AdmissibleMonomial& monomial_at(std::size_t pos) const { return *entries_[pos].second; }

private:
    const SteenrodAlgebra* algebra_;
    int t_;
    std::vector<int> degrees_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> perm_;
    std::vector<std::pair<std::size_t, const AdmissibleMonomial*>> entries_;
};

// a * x for a free-module element x, as a coordinate vector in `layout` (degree |a| + |x|).
inline FpVector act_on_free(const SteenrodAlgebra& algebra, const AdmissibleMonomial& a, const FreeElement& x,
                            const FreeLayout& layout)
{
    const auto p = static_cast<std::uint32_t>(algebra.prime().value());
    std::map<std::size_t, std::uint32_t> acc;
    for (const auto& [gen, coeff] : x.terms)
        for (const auto& [b, cb] : coeff.terms()) {
            auto prod = algebra.multiply(a, b);
            for (const auto& [m, cm] : prod.terms()) {
                auto& slot = acc[layout.position(gen, m)];
                slot = modp::add(slot, modp::mul(cb, cm, p), p);
            }
        }
    FpVector v(algebra.prime(), layout.size());
    for (const auto& [pos, c] : acc)
        v.push_back(pos, c);
    return v;
}

inline FreeElement free_element_from(const SteenrodAlgebra& algebra, const FreeLayout& layout, const FpVector& v, int t)
{
    FreeElement e;
    e.degree = t;
    for (const auto& [pos, c] : v.entries())
        e.add(layout.generator_at(pos), SteenrodElement::monomial(algebra.prime(), layout.monomial_at(pos), c));
    return e;
}

// Degreewise view of a presented module F/R, optionally cut down to degrees >= first_degree
// (the positive part, i.e. the augmentation kernel when the degree-0 part is F_p).
class ModuleWindow {
public:
    ModuleWindow(std::shared_ptr<const SteenrodAlgebra> algebra, GradedModulePresentation presentation, int first_degree)
        : algebra_(std::move(algebra)), pres_(std::move(presentation)), first_degree_(first_degree)
    {
        pres_.validate();
    }

    const GradedModulePresentation& presentation() const { return pres_; }
    int valid_through() const { return pres_.valid_through; }

    struct Degree {
        std::unique_ptr<FreeLayout> layout;
        std::unique_ptr<Subspace> relations;
        std::vector<std::size_t> free_columns;  // F-coordinates spanning a complement of R
        std::vector<std::optional<std::size_t>> module_index;  // F-coordinate -> M-coordinate
    };

    const Degree& degree(int t) const
    {
        auto it = cache_.find(t);
        if (it != cache_.end())
            return it->second;
        if (t > pres_.valid_through)
            throw std::invalid_argument("module queried beyond its validity window");
        Degree d;
        d.layout = std::make_unique<FreeLayout>(*algebra_, pres_.generator_degrees, pres_.generator_degrees.size(), t);
        d.relations = std::make_unique<Subspace>(algebra_->prime(), d.layout->size());
        for (const auto& r : pres_.relations) {
            int ad = t - r.degree;
            if (ad < 0)
                continue;
            for (const auto& a : algebra_->basis(ad).monomials)
                d.relations->add(act_on_free(*algebra_, a, r, *d.layout));
        }
        d.module_index.assign(d.layout->size(), std::nullopt);
        if (t >= first_degree_) {
            const auto& piv = d.relations->pivots();
            for (std::size_t c = 0; c < d.layout->size(); ++c)
                if (!std::binary_search(piv.begin(), piv.end(), c)) {
                    d.module_index[c] = d.free_columns.size();
                    d.free_columns.push_back(c);
                }
        }
        return cache_.emplace(t, std::move(d)).first->second;
    }

    std::size_t dimension(int t) const { return t < 0 ? 0 : degree(t).free_columns.size(); }

    // Image in M_t of a vector over F_t.
    FpVector project(const FpVector& v, int t) const
    {
        const auto& d = degree(t);
        auto reduced = d.relations->reduce(v);
        FpVector out(algebra_->prime(), d.free_columns.size());
        for (const auto& [c, x] : reduced.entries())
            if (d.module_index[c])
                out.push_back(*d.module_index[c], x);
        return out;
    }

    // Free-module lift of an M_t coordinate vector.
    FreeElement lift(const FpVector& v, int t) const
    {
        const auto& d = degree(t);
        FpVector f(algebra_->prime(), d.layout->size());
        for (const auto& [i, x] : v.entries())
            f.set(d.free_columns[i], x);
        return free_element_from(*algebra_, *d.layout, f, t);
    }

    // a * x projected to M, where x is an element of the underlying free module.
    FpVector act(const AdmissibleMonomial& a, const FreeElement& x) const
    {
        int t = x.degree + monomial_degree(a, algebra_->prime());
        return project(act_on_free(*algebra_, a, x, *degree(t).layout), t);
    }

    // Pre-fills the degree cache; after this call the window is read-only.
    void prepare(int t_max) const
    {
        for (int t = 0; t <= t_max; ++t)
            degree(t);
    }

private:
    std::shared_ptr<const SteenrodAlgebra> algebra_;
    GradedModulePresentation pres_;
    int first_degree_;
    mutable std::map<int, Degree> cache_;
};

}  // namespace detail

struct ResolutionGenerator {
    int degree = 0;
    // Image under the differential; for s = 0 this is a lift to the presentation's free module.
    FreeElement boundary;
};

struct ExtChart {
    Prime prime{2};
    std::string module;
    int s_max = 0;
    int t_max = 0;
    std::map<std::pair<int, int>, int> dims;  // nonzero entries only

    bool in_window(int s, int t) const { return s >= 0 && t >= 0 && s <= s_max && t <= t_max; }

    int dim(int s, int t) const
    {
        auto it = dims.find({s, t});
        return it == dims.end() ? 0 : it->second;
    }

    friend bool operator==(const ExtChart& a, const ExtChart& b)
    {
        return a.prime == b.prime && a.module == b.module && a.s_max == b.s_max && a.t_max == b.t_max &&
               a.dims == b.dims;
    }
};

class MinimalResolution {
public:
    MinimalResolution(std::shared_ptr<const SteenrodAlgebra> algebra, GradedModulePresentation module, int first_degree,
                      int s_max, int t_max)
        : algebra_(std::move(algebra)), module_(std::move(module)), first_degree_(first_degree), s_max_(s_max),
          t_max_(t_max), generators_(static_cast<std::size_t>(s_max + 1))
    {
    }

    Prime prime() const { return algebra_->prime(); }
    const SteenrodAlgebra& algebra() const { return *algebra_; }
    std::shared_ptr<const SteenrodAlgebra> algebra_ptr() const { return algebra_; }
    const GradedModulePresentation& module() const { return module_; }
    int first_degree() const { return first_degree_; }
    int s_max() const { return s_max_; }
    int t_max() const { return t_max_; }

    const std::vector<ResolutionGenerator>& generators(int s) const { return generators_.at(static_cast<std::size_t>(s)); }
    std::vector<ResolutionGenerator>& generators(int s) { return generators_.at(static_cast<std::size_t>(s)); }

    std::vector<int> generator_degrees(int s) const
    {
        std::vector<int> out;
        for (const auto& g : generators(s))
            out.push_back(g.degree);
        return out;
    }

    std::size_t generator_count(int s, int t) const
    {
        std::size_t n = 0;
        for (const auto& g : generators(s))
            n += g.degree <= t;
        return n;
    }

private:
    std::shared_ptr<const SteenrodAlgebra> algebra_;
    GradedModulePresentation module_;
    int first_degree_;
    int s_max_;
    int t_max_;
    std::vector<std::vector<ResolutionGenerator>> generators_;
};

namespace detail {

// Degreewise matrices of a (possibly partial) resolution.
class DifferentialAssembler {
public:
    DifferentialAssembler(const MinimalResolution& res, const ModuleWindow& module, const ResolutionOptions& opts)
        : res_(res), module_(module), opts_(opts)
    {
    }

    FreeLayout layout(int s, int t) const
    {
        return FreeLayout(res_.algebra(), res_.generator_degrees(s), res_.generator_count(s, t), t, opts_.shuffle_seed, s);
    }

    // Image of basis element `pos` of P_{s,t}, in coordinates of P_{s-1,t} (or M_t when s = 0).
    FpVector column(int s, const FreeLayout& source, std::size_t pos, const FreeLayout* target) const
    {
        const auto& gen = res_.generators(s)[source.generator_at(pos)];
        const auto& a = source.monomial_at(pos);
        if (s == 0)
            return module_.act(a, gen.boundary);
        return act_on_free(res_.algebra(), a, gen.boundary, *target);
    }

    // Matrix of d_s in internal degree t (rows: target coordinates, columns: P_{s,t}).
    FpMatrix matrix(int s, int t) const
    {
        auto source = layout(s, t);
        std::optional<FreeLayout> target;
        std::size_t rows = 0;
        if (s == 0)
            rows = module_.dimension(t);
        else {
            target.emplace(layout(s - 1, t));
            rows = target->size();
        }
        std::vector<FpVector> cols(source.size(), FpVector(res_.prime(), rows));
        parallel_for(source.size(), opts_.threads,
                     [&](std::size_t i) { cols[i] = column(s, source, i, target ? &*target : nullptr); });
        return FpMatrix::from_columns(res_.prime(), rows, cols);
    }

private:
    const MinimalResolution& res_;
    const ModuleWindow& module_;
    const ResolutionOptions& opts_;
};

inline MinimalResolution resolve_window(std::shared_ptr<const SteenrodAlgebra> algebra, const ModuleWindow& module,
                                        int first_degree, int s_max, int t_max, const ResolutionOptions& opts)
{
    if (s_max < 0 || t_max < 0)
        throw std::invalid_argument("resolution window must be nonnegative");
    if (t_max > module.valid_through())
        throw std::invalid_argument("resolution window t_max = " + std::to_string(t_max) +
                                    " exceeds the presentation's validity (" + std::to_string(module.valid_through()) + ")");
    const Prime prime = algebra->prime();
    for (int t = 0; t <= t_max; ++t)
        algebra->basis(t);
    module.prepare(t_max);

    MinimalResolution res(algebra, module.presentation(), first_degree, s_max, t_max);
    DifferentialAssembler assembler(res, module, opts);

    for (int t = 0; t <= t_max; ++t) {
        std::optional<FpMatrix> previous;  // d_{s-1} in degree t
        for (int s = 0; s <= s_max; ++s) {
            // Cycles to be hit: all of M_t for s = 0, else ker d_{s-1}.
            std::vector<FpVector> cycles;
            std::size_t target_dim = 0;
            std::optional<FreeLayout> target;
            if (s == 0) {
                target_dim = module.dimension(t);
                for (std::size_t i = 0; i < target_dim; ++i)
                    cycles.push_back(FpVector::unit(prime, target_dim, i));
            }
            else {
                target.emplace(assembler.layout(s - 1, t));
                target_dim = target->size();
                cycles = kernel_basis(*previous);
            }

            auto existing = assembler.layout(s, t);
            std::vector<FpVector> image(existing.size(), FpVector(prime, target_dim));
            parallel_for(existing.size(), opts.threads, [&](std::size_t i) {
                image[i] = assembler.column(s, existing, i, target ? &*target : nullptr);
            });

            Subspace span(prime, target_dim);
            for (const auto& v : image)
                span.add(v);
            for (const auto& z : cycles) {
                if (!span.add(z))
                    continue;
                ResolutionGenerator gen;
                gen.degree = t;
                gen.boundary = s == 0 ? module.lift(z, t) : free_element_from(*algebra, *target, z, t);
                res.generators(s).push_back(std::move(gen));
            }

            if (s < s_max)
                previous = assembler.matrix(s, t);
        }
    }
    return res;
}

}  // namespace detail

/// Presentation of a built-in module, complete through internal degree t_max.
///
/// sphere: F_p on one generator in degree 0, killed by every Sq^i (resp. beta, P^s).
/// hz:     A_p / A_p Q_0, Q_0 = Sq^1 or beta.
/// tau1:   desuspension of the kernel of the augmentation hz -> F_p; its generators and
///         relations are read off from the first two stages of a minimal resolution of that kernel.
inline GradedModulePresentation present_module(Prime p, BuiltinModule tag, int t_max)
{
    if (t_max < 0)
        throw std::invalid_argument("t_max must be nonnegative");
    GradedModulePresentation pres;
    pres.prime = p;
    pres.label = module_name(tag);
    pres.valid_through = t_max;

    auto relation = [&](const Word& w, std::size_t gen, int gen_degree) {
        SteenrodAlgebra algebra(p);
        auto coeff = algebra.normalize(w);
        FreeElement r;
        r.degree = gen_degree + coeff.degree();
        r.add(gen, coeff);
        return r;
    };

    switch (tag) {
    case BuiltinModule::Sphere:
        pres.generator_degrees = {0};
        if (p.is_two()) {
            for (int i = 1; i <= t_max; ++i)
                pres.relations.push_back(relation({Generator::sq(i)}, 0, 0));
        }
        else {
            if (t_max >= 1)
                pres.relations.push_back(relation({Generator::bockstein()}, 0, 0));
            for (int s = 1; 2 * s * (p.value() - 1) <= t_max; ++s)
                pres.relations.push_back(relation({Generator::power(s)}, 0, 0));
        }
        break;
    case BuiltinModule::Hz:
        pres.generator_degrees = {0};
        if (t_max >= 1)
            pres.relations.push_back(relation({p.is_two() ? Generator::sq(1) : Generator::bockstein()}, 0, 0));
        break;
    case BuiltinModule::Tau1: {
        auto algebra = std::make_shared<const SteenrodAlgebra>(p);
        auto hz = present_module(p, BuiltinModule::Hz, t_max + 1);
        detail::ModuleWindow kernel(algebra, hz, 1);
        auto res = detail::resolve_window(algebra, kernel, 1, 1, t_max + 1, ResolutionOptions{});
        for (const auto& g : res.generators(0))
            pres.generator_degrees.push_back(g.degree - 1);
        for (const auto& g : res.generators(1)) {
            FreeElement r = g.boundary;
            r.degree -= 1;
            pres.relations.push_back(std::move(r));
        }
        break;
    }
    }
    return pres;
}

/// Minimal resolution of `module` through homological degree s_max and internal degree t_max.
inline MinimalResolution minimal_resolution(const GradedModulePresentation& module, int s_max, int t_max,
                                            const ResolutionOptions& opts = {})
{
    auto algebra = std::make_shared<const SteenrodAlgebra>(module.prime);
    detail::ModuleWindow window(algebra, module, 0);
    return detail::resolve_window(algebra, window, 0, s_max, t_max, opts);
}

/// dim Ext^{s,t} = number of P_s generators in internal degree t.
inline ExtChart ext_chart(const MinimalResolution& r)
{
    ExtChart chart;
    chart.prime = r.prime();
    chart.module = r.module().label;
    chart.s_max = r.s_max();
    chart.t_max = r.t_max();
    for (int s = 0; s <= r.s_max(); ++s)
        for (const auto& g : r.generators(s))
            ++chart.dims[{s, g.degree}];
    return chart;
}

inline ExtChart compute_chart(Prime p, BuiltinModule tag, int s_max, int t_max, const ResolutionOptions& opts = {})
{
    return ext_chart(minimal_resolution(present_module(p, tag, t_max), s_max, t_max, opts));
}

// ---------------------------------------------------------------------------
// Verification of computed resolutions

struct ResolutionDefect {
    int s = 0;
    int t = 0;
    std::string what;
};

/// d_{s-1} d_s = 0 on every generator, composed entrywise in A_p (and projected to M for s = 1).
inline std::vector<ResolutionDefect> check_d_squared(const MinimalResolution& res)
{
    std::vector<ResolutionDefect> defects;
    const auto& algebra = res.algebra();
    detail::ModuleWindow module(res.algebra_ptr(), res.module(), res.first_degree());
    module.prepare(res.t_max());
    for (int s = 1; s <= res.s_max(); ++s) {
        const auto& lower = res.generators(s - 1);
        for (const auto& g : res.generators(s)) {
            FreeElement composite;
            composite.degree = g.degree;
            for (const auto& [h, a] : g.boundary.terms)
                for (const auto& [k, b] : lower.at(h).boundary.terms)
                    composite.add(k, algebra.multiply(a, b));
            bool zero = composite.is_zero();
            if (s == 1 && !zero) {
                // composite lives in the presentation's free module; compare in M
                const AdmissibleMonomial one = SteenrodElement::unit(res.prime()).terms().begin()->first;
                zero = module.act(one, composite).is_zero();
            }
            if (!zero)
                defects.push_back({s, g.degree, "d o d != 0"});
        }
    }
    return defects;
}

/// Every differential coefficient lies in the augmentation ideal (no degree-0 entries).
inline std::vector<ResolutionDefect> check_minimality(const MinimalResolution& res)
{
    std::vector<ResolutionDefect> defects;
    for (int s = 1; s <= res.s_max(); ++s)
        for (const auto& g : res.generators(s))
            for (const auto& [h, a] : g.boundary.terms)
                if (a.degree() <= 0)
                    defects.push_back({s, g.degree, "unit entry in differential"});
    return defects;
}

/// Degreewise exactness: rank d_0 = dim M_t, and dim ker d_s = rank d_{s+1} for s < s_max.
inline std::vector<ResolutionDefect> check_exactness(const MinimalResolution& res, const ResolutionOptions& opts = {})
{
    std::vector<ResolutionDefect> defects;
    detail::ModuleWindow module(res.algebra_ptr(), res.module(), res.first_degree());
    module.prepare(res.t_max());
    detail::DifferentialAssembler assembler(res, module, opts);
    for (int t = 0; t <= res.t_max(); ++t) {
        std::vector<std::size_t> ranks, cols;
        for (int s = 0; s <= res.s_max(); ++s) {
            auto m = assembler.matrix(s, t);
            ranks.push_back(rank(m));
            cols.push_back(m.cols());
        }
        if (ranks[0] != module.dimension(t))
            defects.push_back({0, t, "augmentation not surjective"});
        for (int s = 0; s < res.s_max(); ++s) {
            auto k = cols[static_cast<std::size_t>(s)] - ranks[static_cast<std::size_t>(s)];
            if (k != ranks[static_cast<std::size_t>(s + 1)])
                defects.push_back({s, t, "ker d_s != im d_{s+1}"});
        }
    }
    return defects;
}

// ---------------------------------------------------------------------------
// Dimension shift between the sphere and tau1 charts

struct DimensionShift {
    int ds = -1;
    int dt = -1;

    // tau1(s, t) compared against sphere(s - 1, t - 1)
    static constexpr DimensionShift down() { return {-1, -1}; }
    // tau1(s, t) compared against sphere(s + 1, t + 1)
    static constexpr DimensionShift up() { return {1, 1}; }
};

struct ShiftDiscrepancy {
    int s = 0;
    int t = 0;
    int expected = 0;
    int actual = 0;
};

/// Bidegrees of the tau1 chart that violate tau1(s,t) = sphere(s+ds, t+dt) for s != t and
/// tau1(s,s) = 0. Bidegrees whose sphere counterpart lies outside the sphere window are skipped.
inline std::vector<ShiftDiscrepancy> verify_dimension_shift(const ExtChart& sphere, const ExtChart& tau1,
                                                            DimensionShift shift = DimensionShift::down())
{
    if (!(sphere.prime == tau1.prime))
        throw std::invalid_argument("charts over different primes");
    std::vector<ShiftDiscrepancy> out;
    for (int s = 0; s <= tau1.s_max; ++s)
        for (int t = 0; t <= tau1.t_max; ++t) {
            int expected = 0;
            if (s != t) {
                int ss = s + shift.ds, tt = t + shift.dt;
                if (ss > sphere.s_max || tt > sphere.t_max)
                    continue;
                expected = (ss < 0 || tt < 0) ? 0 : sphere.dim(ss, tt);
            }
            int actual = tau1.dim(s, t);
            if (actual != expected)
                out.push_back({s, t, expected, actual});
        }
    return out;
}

// ---------------------------------------------------------------------------
// Vanishing lines

struct VanishingViolation {
    int s = 0;
    int t = 0;
    int dim = 0;
};

/// Nonzero sphere-chart entries inside 0 < s < t < 3s - 3 (p = 2) or 0 < s < t < (2p-1)s - 2 (odd p).
inline std::vector<VanishingViolation> vanishing_region_violations(const ExtChart& chart)
{
    const int p = chart.prime.value();
    std::vector<VanishingViolation> out;
    for (const auto& [st, d] : chart.dims) {
        auto [s, t] = st;
        int bound = p == 2 ? 3 * s - 3 : (2 * p - 1) * s - 2;
        if (0 < s && s < t && t < bound)
            out.push_back({s, t, d});
    }
    return out;
}

}  // namespace exptk
