#pragma once

#include "equiform/kfield.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace equiform {

using KVector = std::vector<KElem>;

/// Dense matrix over K.
class KMatrix {
public:
    KMatrix() = default;
    KMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static KMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    KElem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const KElem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    KMatrix operator*(const KMatrix& o) const;
    KMatrix operator+(const KMatrix& o) const;
    KMatrix operator-(const KMatrix& o) const;
    KMatrix scaled(const KElem& c) const;
    KMatrix transpose() const;
    KVector apply(const KVector& v) const;
    bool is_zero() const;
    bool operator==(const KMatrix& o) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<KElem> data_;
};

/// Row-reduce in place; returns pivot columns.
std::vector<std::size_t> row_reduce(KMatrix& m);
std::size_t rank(KMatrix m);
/// Basis of {x : m x = 0}.
std::vector<KVector> kernel(KMatrix m);

/// Incrementally built echelon basis of sparse vectors indexed by Key.
/// Optionally tracks how each stored row combines the inserted vectors.
template <class Key>
class EchelonBasis {
public:
    using Vector = std::map<Key, KElem>;

    std::size_t size() const { return rows_.size(); }
    std::size_t inserted() const { return inserted_; }

    /// Reduce v against the basis; returns the residual and fills coords with
    /// the combination of inserted vectors that was subtracted.
    Vector reduce(Vector v, std::map<std::size_t, KElem>* coords = nullptr) const
    {
        for (auto& row : rows_) {
            auto it = v.find(row.pivot);
            if (it == v.end())
                continue;
            KElem c = it->second;
            for (auto& [k, x] : row.entries) {
                auto [jt, ins] = v.try_emplace(k, KElem(0));
                jt->second -= c * x;
                if (jt->second.is_zero())
                    v.erase(jt);
            }
            if (coords)
                for (auto& [i, x] : row.provenance) {
                    auto [jt, ins] = coords->try_emplace(i, KElem(0));
                    jt->second += c * x;
                }
        }
        return v;
    }

    bool is_dependent(const Vector& v) const { return reduce(v).empty(); }

    /// Insert v (with id = number of previous insertions); returns true if it
    /// was independent of the basis.
    bool insert(Vector v)
    {
        std::size_t id = inserted_++;
        std::map<std::size_t, KElem> coords;
        Vector r = reduce(std::move(v), &coords);
        if (r.empty())
            return false;
        Row row;
        row.pivot = r.begin()->first;
        KElem inv = r.begin()->second.inverse();
        for (auto& [k, x] : r)
            row.entries.emplace(k, x * inv);
        row.provenance.emplace(id, inv);
        for (auto& [i, x] : coords) {
            KElem y = -(x * inv);
            if (!y.is_zero())
                row.provenance.emplace(i, y);
        }
        rows_.push_back(std::move(row));
        return true;
    }

    /// Solve target = sum_i x_i v_i over inserted vectors; nullopt if the
    /// target is outside the span.
    std::optional<std::map<std::size_t, KElem>> solve(const Vector& target) const
    {
        std::map<std::size_t, KElem> coords;
        Vector r = reduce(target, &coords);
        if (!r.empty())
            return std::nullopt;
        std::map<std::size_t, KElem> x;
        for (auto& [i, c] : coords)
            if (!c.is_zero())
                x.emplace(i, c);
        return x;
    }

private:
    struct Row {
        Key pivot;
        Vector entries;
        std::map<std::size_t, KElem> provenance;
    };
    std::vector<Row> rows_;
    std::size_t inserted_ = 0;
};

}  // namespace equiform
