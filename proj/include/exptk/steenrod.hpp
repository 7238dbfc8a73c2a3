#pragma once

// Mod-p Steenrod algebra in the admissible basis, with Adem-relation rewriting.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace exptk {

class Prime {
public:
    explicit Prime(int p) : value_(p)
    {
        if (p < 2)
            throw std::invalid_argument("prime must be at least 2, got " + std::to_string(p));
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0)
                throw std::invalid_argument(std::to_string(p) + " is not prime");
    }

    int value() const { return value_; }
    bool is_two() const { return value_ == 2; }

    friend bool operator==(Prime a, Prime b) { return a.value_ == b.value_; }

private:
    int value_;
};

namespace modp {

inline std::uint32_t reduce(long long x, std::uint32_t p)
{
    long long r = x % static_cast<long long>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p)
{
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p)
{
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

inline std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p)
{
    std::uint32_t result = 1 % p;
    while (e) {
        if (e & 1)
            result = mul(result, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return result;
}

inline std::uint32_t inverse(std::uint32_t a, std::uint32_t p)
{
    if (a % p == 0)
        throw std::domain_error("zero has no inverse mod p");
    return pow(a, p - 2, p);
}

// Binomial coefficient mod p by Lucas' theorem. Zero when k < 0, n < 0 or k > n.
inline std::uint32_t binomial(long long n, long long k, std::uint32_t p)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    std::uint32_t result = 1;
    while (n > 0 || k > 0) {
        auto nd = static_cast<std::uint32_t>(n % p);
        auto kd = static_cast<std::uint32_t>(k % p);
        if (kd > nd)
            return 0;
        // small binomial C(nd, kd) mod p, with nd < p
        std::uint32_t num = 1, den = 1;
        for (std::uint32_t i = 0; i < kd; ++i) {
            num = mul(num, nd - i, p);
            den = mul(den, i + 1, p);
        }
        result = mul(result, mul(num, inverse(den, p), p), p);
        n /= p;
        k /= p;
    }
    return result;
}

}  // namespace modp

/// One algebra generator: Sq^i (p = 2), P^s or the Bockstein (odd p).
struct Generator {
    enum class Kind { Sq, P, Bockstein };
    Kind kind;
    int exponent;

    static Generator sq(int i) { return {Kind::Sq, i}; }
    static Generator power(int s) { return {Kind::P, s}; }
    static Generator bockstein() { return {Kind::Bockstein, 1}; }
};

using Word = std::vector<Generator>;

/// Admissible monomial, stored by its exponent sequence.
///
/// p = 2: (i_1, ..., i_k) with i_j >= 2 i_{j+1}, all i_j >= 1; the unit is the empty sequence.
/// odd p: (e_0, s_1, e_1, ..., s_k, e_k) with e_j in {0, 1} and s_j >= p s_{j+1} + e_j;
/// the unit is (0).
struct AdmissibleMonomial {
    std::vector<int> seq;

    friend bool operator==(const AdmissibleMonomial&, const AdmissibleMonomial&) = default;
    friend auto operator<=>(const AdmissibleMonomial& a, const AdmissibleMonomial& b)
    {
        return a.seq <=> b.seq;
    }
};

namespace detail {

// Internal token encoding of words: p = 2 uses Sq^i -> i; odd p uses beta -> -1, P^s -> s.
using Tokens = std::vector<int>;

struct TokensHash {
    std::size_t operator()(const Tokens& t) const noexcept
    {
        std::size_t h = t.size();
        for (int x : t)
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

constexpr int kBeta = -1;

inline int token_degree(int token, int p)
{
    if (p == 2)
        return token;
    return token == kBeta ? 1 : 2 * token * (p - 1);
}

inline Tokens monomial_tokens(const AdmissibleMonomial& m, int p)
{
    if (p == 2)
        return m.seq;
    Tokens out;
    for (std::size_t i = 0; i < m.seq.size(); ++i) {
        if (i % 2 == 0) {
            if (m.seq[i])
                out.push_back(kBeta);
        }
        else {
            out.push_back(m.seq[i]);
        }
    }
    return out;
}

// Tokens must already be admissible with no zero powers.
inline AdmissibleMonomial tokens_monomial(const Tokens& t, int p)
{
    if (p == 2)
        return {t};
    AdmissibleMonomial m;
    m.seq.push_back(0);
    for (int x : t) {
        if (x == kBeta)
            m.seq.back() = 1;
        else {
            m.seq.push_back(x);
            m.seq.push_back(0);
        }
    }
    return m;
}

}  // namespace detail

inline int monomial_degree(const AdmissibleMonomial& m, Prime p)
{
    int d = 0;
    for (int x : detail::monomial_tokens(m, p.value()))
        d += detail::token_degree(x, p.value());
    return d;
}

inline bool is_admissible(const AdmissibleMonomial& m, Prime p)
{
    const auto& s = m.seq;
    if (p.is_two()) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 1)
                return false;
            if (i + 1 < s.size() && s[i] < 2 * s[i + 1])
                return false;
        }
        return true;
    }
    if (s.size() % 2 == 0)
        return false;
    for (std::size_t i = 0; i < s.size(); i += 2)
        if (s[i] != 0 && s[i] != 1)
            return false;
    for (std::size_t i = 1; i < s.size(); i += 2) {
        if (s[i] < 1)
            return false;
        if (i + 2 < s.size() && s[i] < p.value() * s[i + 2] + s[i + 1])
            return false;
    }
    return true;
}

inline std::string to_string(const AdmissibleMonomial& m, Prime p)
{
    auto tokens = detail::monomial_tokens(m, p.value());
    if (tokens.empty())
        return "1";
    std::string out;
    for (int x : tokens) {
        if (p.is_two())
            out += "Sq" + std::to_string(x);
        else if (x == detail::kBeta)
            out += "b";
        else
            out += "P" + std::to_string(x);
    }
    return out;
}

/// Admissible monomials of degree d in lexicographic order of their exponent sequences.
inline std::vector<AdmissibleMonomial> basis_in_degree(Prime prime, int d)
{
    std::vector<AdmissibleMonomial> out;
    if (d < 0)
        return out;
    const int p = prime.value();
    std::vector<int> seq;
    if (p == 2) {
        // next entry is at most `cap`; remaining degree `rem`
        auto rec = [&](auto&& self, int rem, int cap) -> void {
            if (rem == 0) {
                out.push_back({seq});
                return;
            }
            for (int i = std::min(rem, cap); i >= 1; --i) {
                seq.push_back(i);
                self(self, rem - i, i / 2);
                seq.pop_back();
            }
        };
        rec(rec, d, d);
    }
    else {
        const int q = 2 * (p - 1);
        // seq ends with a Bockstein exponent; the next P^s must satisfy s <= cap
        auto rec = [&](auto&& self, int rem, int cap) -> void {
            if (rem == 0)
                out.push_back({seq});
            for (int s = std::min(cap, rem / q); s >= 1; --s) {
                for (int e = 0; e <= 1; ++e) {
                    int used = s * q + e;
                    if (used > rem)
                        continue;
                    seq.push_back(s);
                    seq.push_back(e);
                    self(self, rem - used, (s - e) / p);
                    seq.pop_back();
                    seq.pop_back();
                }
            }
        };
        for (int e0 = 0; e0 <= 1 && e0 <= d; ++e0) {
            seq.assign(1, e0);
            rec(rec, d - e0, d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::size_t algebra_dimension(Prime p, int d) { return basis_in_degree(p, d).size(); }

/// Homogeneous F_p-linear combination of admissible monomials. Zero coefficients are never stored.
class SteenrodElement {
public:
    using Terms = std::map<AdmissibleMonomial, std::uint32_t>;

    SteenrodElement(Prime p, int degree) : p_(p), degree_(degree) {}

    static SteenrodElement monomial(Prime p, AdmissibleMonomial m, std::uint32_t coeff = 1)
    {
        SteenrodElement e(p, monomial_degree(m, p));
        e.add_term(std::move(m), coeff);
        return e;
    }

    static SteenrodElement unit(Prime p)
    {
        return monomial(p, p.is_two() ? AdmissibleMonomial{} : AdmissibleMonomial{{0}});
    }

    Prime prime() const { return p_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    std::uint32_t coefficient(const AdmissibleMonomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }

    void add_term(const AdmissibleMonomial& m, std::uint32_t coeff)
    {
        const auto p = static_cast<std::uint32_t>(p_.value());
        coeff %= p;
        if (coeff == 0)
            return;
        if (monomial_degree(m, p_) != degree_)
            throw std::invalid_argument("inhomogeneous term added to Steenrod element");
        auto [it, inserted] = terms_.try_emplace(m, coeff);
        if (!inserted) {
            it->second = modp::add(it->second, coeff, p);
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    SteenrodElement& operator+=(const SteenrodElement& other)
    {
        check_compatible(other);
        if (other.is_zero())
            return *this;
        for (const auto& [m, c] : other.terms_)
            add_term(m, c);
        return *this;
    }

    SteenrodElement& operator*=(std::uint32_t scalar)
    {
        const auto p = static_cast<std::uint32_t>(p_.value());
        scalar %= p;
        if (scalar == 0)
            terms_.clear();
        for (auto& [m, c] : terms_)
            c = modp::mul(c, scalar, p);
        return *this;
    }

    friend SteenrodElement operator+(SteenrodElement a, const SteenrodElement& b) { return a += b; }

    friend bool operator==(const SteenrodElement& a, const SteenrodElement& b)
    {
        return a.p_ == b.p_ && a.terms_ == b.terms_ && (a.is_zero() || a.degree_ == b.degree_);
    }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty())
                out += " + ";
            if (c != 1)
                out += std::to_string(c) + "*";
            out += exptk::to_string(m, p_);
        }
        return out;
    }

private:
    void check_compatible(const SteenrodElement& other) const
    {
        if (!(other.p_ == p_))
            throw std::invalid_argument("Steenrod elements over different primes");
        if (!other.is_zero() && !is_zero() && other.degree_ != degree_)
            throw std::invalid_argument("adding Steenrod elements of different degrees");
    }

    Prime p_;
    int degree_;
    Terms terms_;
};

/// The algebra A_p with memoized Adem rewriting and cached degreewise bases.
///
/// Safe for concurrent use; caches are filled idempotently under a lock.
class SteenrodAlgebra {
public:
    explicit SteenrodAlgebra(Prime p) : p_(p) {}

    Prime prime() const { return p_; }

    struct DegreeBasis {
        std::vector<AdmissibleMonomial> monomials;
        std::map<AdmissibleMonomial, std::size_t> index;
    };

    const DegreeBasis& basis(int degree) const
    {
        {
            std::shared_lock lock(basis_mutex_);
            auto it = bases_.find(degree);
            if (it != bases_.end())
                return it->second;
        }
        DegreeBasis b;
        b.monomials = basis_in_degree(p_, degree);
        for (std::size_t i = 0; i < b.monomials.size(); ++i)
            b.index.emplace(b.monomials[i], i);
        std::unique_lock lock(basis_mutex_);
        return bases_.try_emplace(degree, std::move(b)).first->second;
    }

    std::size_t dimension(int degree) const { return basis(degree).monomials.size(); }

    SteenrodElement normalize(const Word& word) const
    {
        detail::Tokens tokens;
        int degree = 0;
        for (const auto& g : word) {
            tokens.push_back(encode(g));
            degree += detail::token_degree(tokens.back(), p_.value());
        }
        return to_element(normalize_tokens(tokens), degree);
    }

    SteenrodElement multiply(const AdmissibleMonomial& a, const AdmissibleMonomial& b) const
    {
        auto tokens = detail::monomial_tokens(a, p_.value());
        auto tb = detail::monomial_tokens(b, p_.value());
        tokens.insert(tokens.end(), tb.begin(), tb.end());
        return to_element(normalize_tokens(tokens), monomial_degree(a, p_) + monomial_degree(b, p_));
    }

    SteenrodElement multiply(const SteenrodElement& a, const SteenrodElement& b) const
    {
        SteenrodElement out(p_, a.degree() + b.degree());
        const auto p = static_cast<std::uint32_t>(p_.value());
        for (const auto& [ma, ca] : a.terms())
            for (const auto& [mb, cb] : b.terms()) {
                auto prod = multiply(ma, mb);
                prod *= modp::mul(ca, cb, p);
                out += prod;
            }
        return out;
    }

    // Word with one generator per exponent entry of an admissible monomial.
    Word word_of(const AdmissibleMonomial& m) const
    {
        Word w;
        for (int x : detail::monomial_tokens(m, p_.value())) {
            if (p_.is_two())
                w.push_back(Generator::sq(x));
            else if (x == detail::kBeta)
                w.push_back(Generator::bockstein());
            else
                w.push_back(Generator::power(x));
        }
        return w;
    }

    std::size_t memo_size() const
    {
        std::shared_lock lock(memo_mutex_);
        return memo_.size();
    }

private:
    using TokenTerms = std::vector<std::pair<detail::Tokens, std::uint32_t>>;

    int encode(const Generator& g) const
    {
        switch (g.kind) {
        case Generator::Kind::Sq:
            if (!p_.is_two())
                throw std::invalid_argument("Sq^i is only a generator at p = 2");
            if (g.exponent < 0)
                throw std::invalid_argument("negative Steenrod square");
            return g.exponent;
        case Generator::Kind::P:
            if (p_.is_two())
                throw std::invalid_argument("P^s is only a generator at odd p");
            if (g.exponent < 0)
                throw std::invalid_argument("negative reduced power");
            return g.exponent;
        case Generator::Kind::Bockstein:
            if (p_.is_two())
                return 1;
            return detail::kBeta;
        }
        return 0;
    }

    SteenrodElement to_element(const TokenTerms& terms, int degree) const
    {
        SteenrodElement e(p_, degree);
        for (const auto& [t, c] : terms)
            e.add_term(detail::tokens_monomial(t, p_.value()), c);
        return e;
    }

    TokenTerms normalize_tokens(const detail::Tokens& raw) const
    {
        const int p = p_.value();
        detail::Tokens w;
        w.reserve(raw.size());
        for (int x : raw) {
            if (x == 0)
                continue;  // Sq^0 = P^0 = 1
            if (p != 2 && x == detail::kBeta && !w.empty() && w.back() == detail::kBeta)
                return {};  // beta^2 = 0
            w.push_back(x);
        }

        {
            std::shared_lock lock(memo_mutex_);
            auto it = memo_.find(w);
            if (it != memo_.end())
                return it->second;
        }

        TokenTerms result = p == 2 ? rewrite_two(w) : rewrite_odd(w);

        std::unique_lock lock(memo_mutex_);
        return memo_.try_emplace(std::move(w), std::move(result)).first->second;
    }

    // Substitute `replacements` for w[begin, end) and accumulate the normalized results.
    TokenTerms substitute(const detail::Tokens& w, std::size_t begin, std::size_t end,
                          const std::vector<std::pair<detail::Tokens, std::uint32_t>>& replacements) const
    {
        const auto p = static_cast<std::uint32_t>(p_.value());
        std::map<detail::Tokens, std::uint32_t> acc;
        for (const auto& [rep, coeff] : replacements) {
            if (coeff == 0)
                continue;
            detail::Tokens next(w.begin(), w.begin() + static_cast<long>(begin));
            next.insert(next.end(), rep.begin(), rep.end());
            next.insert(next.end(), w.begin() + static_cast<long>(end), w.end());
            for (const auto& [t, c] : normalize_tokens(next)) {
                auto& slot = acc[t];
                slot = modp::add(slot, modp::mul(c, coeff, p), p);
            }
        }
        TokenTerms out;
        for (auto& [t, c] : acc)
            if (c)
                out.emplace_back(t, c);
        return out;
    }

    TokenTerms rewrite_two(const detail::Tokens& w) const
    {
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            const int a = w[i], b = w[i + 1];
            if (a >= 2 * b)
                continue;
            // Sq^a Sq^b = sum_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c
            std::vector<std::pair<detail::Tokens, std::uint32_t>> reps;
            for (int c = 0; c <= a / 2; ++c)
                reps.push_back({{a + b - c, c}, modp::binomial(b - c - 1, a - 2 * c, 2)});
            return substitute(w, i, i + 2, reps);
        }
        return {{w, 1}};
    }

    TokenTerms rewrite_odd(const detail::Tokens& w) const
    {
        const int p = p_.value();
        const auto up = static_cast<std::uint32_t>(p);
        auto sign = [&](int e) -> std::uint32_t { return (e % 2 == 0) ? 1 : up - 1; };
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] == detail::kBeta)
                continue;
            const int a = w[i];
            std::size_t j = i + 1;
            bool beta_between = false;
            if (j < w.size() && w[j] == detail::kBeta) {
                beta_between = true;
                ++j;
            }
            if (j >= w.size())
                break;
            const int b = w[j];
            std::vector<std::pair<detail::Tokens, std::uint32_t>> reps;
            if (!beta_between) {
                if (a >= p * b)
                    continue;
                // P^a P^b = sum_i (-1)^{a+i} C((p-1)(b-i)-1, a-pi) P^{a+b-i} P^i
                for (int k = 0; k <= a / p; ++k) {
                    auto c = modp::mul(sign(a + k), modp::binomial(static_cast<long long>(p - 1) * (b - k) - 1, a - p * k, up), up);
                    reps.push_back({{a + b - k, k}, c});
                }
            }
            else {
                if (a >= p * b + 1)
                    continue;
                // P^a b P^b = sum_i (-1)^{a+i} C((p-1)(b-i), a-pi) b P^{a+b-i} P^i
                //          + sum_i (-1)^{a+i+1} C((p-1)(b-i)-1, a-pi-1) P^{a+b-i} b P^i
                for (int k = 0; k <= a / p; ++k) {
                    auto c = modp::mul(sign(a + k), modp::binomial(static_cast<long long>(p - 1) * (b - k), a - p * k, up), up);
                    reps.push_back({{detail::kBeta, a + b - k, k}, c});
                }
                for (int k = 0; a >= 1 && k <= (a - 1) / p; ++k) {
                    auto c = modp::mul(sign(a + k + 1), modp::binomial(static_cast<long long>(p - 1) * (b - k) - 1, a - p * k - 1, up), up);
                    reps.push_back({{a + b - k, detail::kBeta, k}, c});
                }
            }
            return substitute(w, i, j + 1, reps);
        }
        return {{w, 1}};
    }

    Prime p_;
    mutable std::shared_mutex memo_mutex_;
    mutable std::unordered_map<detail::Tokens, TokenTerms, detail::TokensHash> memo_;
    mutable std::shared_mutex basis_mutex_;
    mutable std::map<int, DegreeBasis> bases_;
};

/// Expand a product of generators in the admissible basis.
inline SteenrodElement adem_normalize(Prime p, const Word& word)
{
    SteenrodAlgebra algebra(p);
    return algebra.normalize(word);
}

}  // namespace exptk
