#pragma once

// Exact sparse linear algebra over F_p.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "exptk/steenrod.hpp"

namespace exptk {

using Entry = std::pair<std::size_t, std::uint32_t>;

/// Sparse vector over F_p: sorted (index, value) pairs, values nonzero.
class FpVector {
public:
    FpVector(Prime p, std::size_t length) : p_(static_cast<std::uint32_t>(p.value())), length_(length) {}

    static FpVector from_dense(Prime p, const std::vector<long long>& values)
    {
        FpVector v(p, values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            v.set(i, modp::reduce(values[i], v.p_));
        return v;
    }

    static FpVector unit(Prime p, std::size_t length, std::size_t index)
    {
        FpVector v(p, length);
        v.set(index, 1);
        return v;
    }

    std::uint32_t modulus() const { return p_; }
    std::size_t length() const { return length_; }
    std::size_t nnz() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }
    const std::vector<Entry>& entries() const { return entries_; }

    std::uint32_t at(std::size_t i) const
    {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                                   [](const Entry& e, std::size_t k) { return e.first < k; });
        return (it != entries_.end() && it->first == i) ? it->second : 0;
    }

    void set(std::size_t i, std::uint32_t value)
    {
        if (i >= length_)
            throw std::out_of_range("FpVector index out of range");
        value %= p_;
        auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                                   [](const Entry& e, std::size_t k) { return e.first < k; });
        if (it != entries_.end() && it->first == i) {
            if (value == 0)
                entries_.erase(it);
            else
                it->second = value;
        }
        else if (value != 0) {
            entries_.insert(it, {i, value});
        }
    }

    // Append in increasing index order; caller guarantees ordering.
    void push_back(std::size_t i, std::uint32_t value)
    {
        value %= p_;
        if (value)
            entries_.emplace_back(i, value);
    }

    std::vector<std::uint32_t> to_dense() const
    {
        std::vector<std::uint32_t> out(length_, 0);
        for (const auto& [i, v] : entries_)
            out[i] = v;
        return out;
    }

    friend bool operator==(const FpVector& a, const FpVector& b)
    {
        return a.p_ == b.p_ && a.length_ == b.length_ && a.entries_ == b.entries_;
    }

private:
    std::uint32_t p_;
    std::size_t length_;
    std::vector<Entry> entries_;
};

namespace detail {

// Fill ratio above which a working row switches to dense storage.
inline constexpr double kDenseFill = 0.30;

// Working row used during elimination: sparse, densified once fill exceeds kDenseFill.
class WorkRow {
public:
    WorkRow() = default;
    WorkRow(std::size_t cols, std::vector<Entry> sparse) : cols_(cols), sparse_(std::move(sparse)) { maybe_densify(); }

    bool dense() const { return is_dense_; }

    std::uint32_t at(std::size_t c) const
    {
        if (is_dense_)
            return dense_[c];
        auto it = std::lower_bound(sparse_.begin(), sparse_.end(), c,
                                   [](const Entry& e, std::size_t k) { return e.first < k; });
        return (it != sparse_.end() && it->first == c) ? it->second : 0;
    }

    std::optional<std::size_t> first_nonzero(std::size_t from = 0) const
    {
        if (is_dense_) {
            for (std::size_t c = from; c < cols_; ++c)
                if (dense_[c])
                    return c;
            return std::nullopt;
        }
        auto it = std::lower_bound(sparse_.begin(), sparse_.end(), from,
                                   [](const Entry& e, std::size_t k) { return e.first < k; });
        if (it == sparse_.end())
            return std::nullopt;
        return it->first;
    }

    bool is_zero() const { return !first_nonzero().has_value(); }

    void scale(std::uint32_t f, std::uint32_t p)
    {
        if (is_dense_) {
            for (auto& x : dense_)
                x = modp::mul(x, f, p);
        }
        else {
            for (auto& e : sparse_)
                e.second = modp::mul(e.second, f, p);
        }
    }

    // this += f * other
    void axpy(std::uint32_t f, const WorkRow& other, std::uint32_t p)
    {
        if (f == 0)
            return;
        if (!is_dense_ && other.is_dense_)
            densify();
        if (is_dense_) {
            if (other.is_dense_) {
                for (std::size_t c = 0; c < cols_; ++c)
                    if (other.dense_[c])
                        dense_[c] = modp::add(dense_[c], modp::mul(f, other.dense_[c], p), p);
            }
            else {
                for (const auto& [c, v] : other.sparse_)
                    dense_[c] = modp::add(dense_[c], modp::mul(f, v, p), p);
            }
            return;
        }
        std::vector<Entry> merged;
        merged.reserve(sparse_.size() + other.sparse_.size());
        auto a = sparse_.begin();
        auto b = other.sparse_.begin();
        while (a != sparse_.end() || b != other.sparse_.end()) {
            if (b == other.sparse_.end() || (a != sparse_.end() && a->first < b->first)) {
                merged.push_back(*a++);
            }
            else if (a == sparse_.end() || b->first < a->first) {
                merged.emplace_back(b->first, modp::mul(f, b->second, p));
                ++b;
            }
            else {
                auto v = modp::add(a->second, modp::mul(f, b->second, p), p);
                if (v)
                    merged.emplace_back(a->first, v);
                ++a;
                ++b;
            }
        }
        sparse_ = std::move(merged);
        maybe_densify();
    }

    std::vector<Entry> entries() const
    {
        if (!is_dense_)
            return sparse_;
        std::vector<Entry> out;
        for (std::size_t c = 0; c < cols_; ++c)
            if (dense_[c])
                out.emplace_back(c, dense_[c]);
        return out;
    }

private:
    void maybe_densify()
    {
        if (!is_dense_ && cols_ > 0 && static_cast<double>(sparse_.size()) > kDenseFill * static_cast<double>(cols_))
            densify();
    }

    void densify()
    {
        dense_.assign(cols_, 0);
        for (const auto& [c, v] : sparse_)
            dense_[c] = v;
        sparse_.clear();
        is_dense_ = true;
    }

    std::size_t cols_ = 0;
    bool is_dense_ = false;
    std::vector<Entry> sparse_;
    std::vector<std::uint32_t> dense_;
};

}  // namespace detail

/// Sparse matrix over F_p with row-major storage; acts on column vectors.
class FpMatrix {
public:
    FpMatrix(Prime p, std::size_t rows, std::size_t cols)
        : prime_(p), p_(static_cast<std::uint32_t>(p.value())), cols_(cols), rows_(rows)
    {
    }

    static FpMatrix identity(Prime p, std::size_t n)
    {
        FpMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.rows_[i].emplace_back(i, 1);
        return m;
    }

    static FpMatrix from_dense(Prime p, const std::vector<std::vector<long long>>& values)
    {
        std::size_t cols = values.empty() ? 0 : values.front().size();
        FpMatrix m(p, values.size(), cols);
        for (std::size_t r = 0; r < values.size(); ++r) {
            if (values[r].size() != cols)
                throw std::invalid_argument("ragged dense matrix");
            for (std::size_t c = 0; c < cols; ++c)
                m.set(r, c, modp::reduce(values[r][c], m.p_));
        }
        return m;
    }

    // Matrix whose columns are the given vectors.
    static FpMatrix from_columns(Prime p, std::size_t rows, const std::vector<FpVector>& columns)
    {
        FpMatrix m(p, rows, columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].length() != rows)
                throw std::invalid_argument("column length does not match row count");
            for (const auto& [r, v] : columns[c].entries())
                m.rows_[r].emplace_back(c, v);
        }
        return m;
    }

    Prime prime() const { return prime_; }
    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    std::size_t nnz() const
    {
        std::size_t n = 0;
        for (const auto& r : rows_)
            n += r.size();
        return n;
    }

    const std::vector<Entry>& row(std::size_t r) const { return rows_.at(r); }

    std::uint32_t at(std::size_t r, std::size_t c) const
    {
        const auto& row = rows_.at(r);
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::size_t k) { return e.first < k; });
        return (it != row.end() && it->first == c) ? it->second : 0;
    }

    void set(std::size_t r, std::size_t c, std::uint32_t value)
    {
        if (r >= rows_.size() || c >= cols_)
            throw std::out_of_range("FpMatrix index out of range");
        value %= p_;
        auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::size_t k) { return e.first < k; });
        if (it != row.end() && it->first == c) {
            if (value == 0)
                row.erase(it);
            else
                it->second = value;
        }
        else if (value != 0) {
            row.insert(it, {c, value});
        }
    }

    void set_row(std::size_t r, std::vector<Entry> entries) { rows_.at(r) = std::move(entries); }

    FpVector column(std::size_t c) const
    {
        FpVector v(prime_, rows());
        for (std::size_t r = 0; r < rows(); ++r)
            v.push_back(r, at(r, c));
        return v;
    }

    FpVector operator*(const FpVector& x) const
    {
        if (x.length() != cols_)
            throw std::invalid_argument("matrix-vector dimension mismatch");
        FpVector y(prime_, rows());
        auto dense = x.to_dense();
        for (std::size_t r = 0; r < rows(); ++r) {
            std::uint32_t acc = 0;
            for (const auto& [c, v] : rows_[r])
                acc = modp::add(acc, modp::mul(v, dense[c], p_), p_);
            y.push_back(r, acc);
        }
        return y;
    }

    FpMatrix operator*(const FpMatrix& other) const
    {
        if (other.rows() != cols_)
            throw std::invalid_argument("matrix-matrix dimension mismatch");
        FpMatrix out(prime_, rows(), other.cols());
        for (std::size_t r = 0; r < rows(); ++r) {
            std::vector<std::uint32_t> acc(other.cols(), 0);
            for (const auto& [k, v] : rows_[r])
                for (const auto& [c, w] : other.rows_[k])
                    acc[c] = modp::add(acc[c], modp::mul(v, w, p_), p_);
            for (std::size_t c = 0; c < acc.size(); ++c)
                if (acc[c])
                    out.rows_[r].emplace_back(c, acc[c]);
        }
        return out;
    }

    bool is_zero() const { return nnz() == 0; }

    friend bool operator==(const FpMatrix& a, const FpMatrix& b)
    {
        return a.p_ == b.p_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
    }

private:
    Prime prime_;
    std::uint32_t p_;
    std::size_t cols_;
    std::vector<std::vector<Entry>> rows_;
};

struct RowReduction {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
    FpMatrix reduced;
};

/// Reduced row-echelon form. Pivot rows are chosen as the first remaining row with a
/// nonzero entry in the current column, scanning columns left to right.
inline RowReduction row_reduce(const FpMatrix& m)
{
    const auto p = static_cast<std::uint32_t>(m.prime().value());
    std::vector<detail::WorkRow> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows.emplace_back(m.cols(), m.row(r));

    RowReduction out{0, {}, FpMatrix(m.prime(), m.rows(), m.cols())};
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
        std::size_t pivot = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r].at(c)) {
                pivot = r;
                break;
            }
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        rows[rank].scale(modp::inverse(rows[rank].at(c), p), p);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank)
                continue;
            if (auto v = rows[r].at(c))
                rows[r].axpy(modp::neg(v, p), rows[rank], p);
        }
        out.pivots.push_back(c);
        ++rank;
    }
    out.rank = rank;
    for (std::size_t r = 0; r < rows.size(); ++r)
        out.reduced.set_row(r, rows[r].entries());
    return out;
}

inline std::size_t rank(const FpMatrix& m) { return row_reduce(m).rank; }

/// Basis of {v : m v = 0}, one vector per non-pivot column, in column order.
inline std::vector<FpVector> kernel_basis(const FpMatrix& m)
{
    const auto p = static_cast<std::uint32_t>(m.prime().value());
    auto rr = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : rr.pivots)
        is_pivot[c] = true;

    std::vector<FpVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        FpVector v(m.prime(), m.cols());
        v.set(free, 1);
        for (std::size_t i = 0; i < rr.rank; ++i) {
            auto x = rr.reduced.at(i, free);
            if (x)
                v.set(rr.pivots[i], modp::neg(x, p));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some x with m x = b, or nullopt when b is outside the column space.
inline std::optional<FpVector> solve(const FpMatrix& m, const FpVector& b)
{
    if (b.length() != m.rows())
        throw std::invalid_argument("solve: right-hand side length does not match matrix rows");
    FpMatrix augmented(m.prime(), m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        if (auto v = b.at(r))
            row.emplace_back(m.cols(), v);
        augmented.set_row(r, std::move(row));
    }
    auto rr = row_reduce(augmented);
    if (!rr.pivots.empty() && rr.pivots.back() == m.cols())
        return std::nullopt;
    FpVector x(m.prime(), m.cols());
    for (std::size_t i = 0; i < rr.rank; ++i)
        x.set(rr.pivots[i], rr.reduced.at(i, m.cols()));
    return x;
}

/// Incrementally grown subspace of F_p^n kept in reduced echelon form.
class Subspace {
public:
    Subspace(Prime p, std::size_t ambient) : prime_(p), p_(static_cast<std::uint32_t>(p.value())), ambient_(ambient) {}

    std::size_t dimension() const { return rows_.size(); }
    std::size_t ambient() const { return ambient_; }

    // Reduce v against the basis; the result is zero iff v lies in the span.
    FpVector reduce(const FpVector& v) const
    {
        auto row = reduced_row(v);
        FpVector out(prime_, ambient_);
        for (const auto& [c, x] : row.entries())
            out.push_back(c, x);
        return out;
    }

    bool contains(const FpVector& v) const { return reduced_row(v).is_zero(); }

    // Adds v if it is independent of the current basis; returns whether it was added.
    bool add(const FpVector& v)
    {
        auto row = reduced_row(v);
        auto lead = row.first_nonzero();
        if (!lead)
            return false;
        row.scale(modp::inverse(row.at(*lead), p_), p_);
        for (auto& other : rows_)
            if (auto x = other.at(*lead))
                other.axpy(modp::neg(x, p_), row, p_);
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), *lead);
        auto offset = pos - pivots_.begin();
        pivots_.insert(pos, *lead);
        rows_.insert(rows_.begin() + offset, std::move(row));
        return true;
    }

    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    detail::WorkRow reduced_row(const FpVector& v) const
    {
        if (v.length() != ambient_)
            throw std::invalid_argument("Subspace: vector length mismatch");
        detail::WorkRow row(ambient_, v.entries());
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (auto x = row.at(pivots_[i]))
                row.axpy(modp::neg(x, p_), rows_[i], p_);
        return row;
    }

    Prime prime_;
    std::uint32_t p_;
    std::size_t ambient_;
    std::vector<std::size_t> pivots_;
    std::vector<detail::WorkRow> rows_;
};

}  // namespace exptk
