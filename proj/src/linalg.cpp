#include "equiform/linalg.hpp"

namespace equiform {

KMatrix KMatrix::identity(std::size_t n)
{
    KMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = KElem(1);
    return m;
}

KMatrix KMatrix::operator*(const KMatrix& o) const
{
    if (cols_ != o.rows_)
        throw Error("matrix dimension mismatch");
    KMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const KElem& a = at(i, k);
            if (a.is_zero())
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (!o.at(k, j).is_zero())
                    r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

KMatrix KMatrix::operator+(const KMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error("matrix dimension mismatch");
    KMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] += o.data_[i];
    return r;
}

KMatrix KMatrix::operator-(const KMatrix& o) const
{
    return *this + o.scaled(KElem(-1));
}

KMatrix KMatrix::scaled(const KElem& c) const
{
    KMatrix r = *this;
    for (auto& x : r.data_)
        x *= c;
    return r;
}

KMatrix KMatrix::transpose() const
{
    KMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j);
    return r;
}

KVector KMatrix::apply(const KVector& v) const
{
    if (v.size() != cols_)
        throw Error("matrix-vector dimension mismatch");
    KVector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero())
                r[i] += at(i, j) * v[j];
    return r;
}

bool KMatrix::is_zero() const
{
    for (auto& x : data_)
        if (!x.is_zero())
            return false;
    return true;
}

bool KMatrix::operator==(const KMatrix& o) const
{
    return rows_ == o.rows_ && cols_ == o.cols_ && (*this - o).is_zero();
}

std::vector<std::size_t> row_reduce(KMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m.at(p, col).is_zero())
            ++p;
        if (p == m.rows())
            continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m.at(p, j), m.at(row, j));
        KElem inv = m.at(row, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j)
            m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero())
                continue;
            KElem f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (!m.at(row, j).is_zero())
                    m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(KMatrix m)
{
    return row_reduce(m).size();
}

std::vector<KVector> kernel(KMatrix m)
{
    auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<KVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        KVector v(m.cols());
        v[free] = KElem(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace equiform
