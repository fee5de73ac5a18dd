#include "chainlift/abelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <utility>

#include "chainlift/error.hpp"

namespace chainlift {

namespace {

std::int64_t checkedMul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw UnsupportedError("integer overflow in Smith normal form");
    return r;
}

std::int64_t checkedSub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw UnsupportedError("integer overflow in Smith normal form");
    return r;
}

std::int64_t checkedAdd(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw UnsupportedError("integer overflow in Smith normal form");
    return r;
}

class Reducer
{
    private:
        IntMatrix& m_;
        IntMatrix& v_;
        std::size_t rows_;
        std::size_t cols_;

    public:
        Reducer(IntMatrix& m, IntMatrix& v, std::size_t rows, std::size_t cols)
            : m_(m), v_(v), rows_(rows), cols_(cols)
        {
        }

        void swapRows(std::size_t a, std::size_t b) { std::swap(m_[a], m_[b]); }

        void swapCols(std::size_t a, std::size_t b)
        {
            for (auto& row : m_)
                std::swap(row[a], row[b]);
            for (auto& row : v_)
                std::swap(row[a], row[b]);
        }

        // row[dst] -= q * row[src]
        void rowOp(std::size_t dst, std::size_t src, std::int64_t q)
        {
            for (std::size_t j = 0; j < cols_; ++j)
                m_[dst][j] = checkedSub(m_[dst][j], checkedMul(q, m_[src][j]));
        }

        // col[dst] -= q * col[src]
        void colOp(std::size_t dst, std::size_t src, std::int64_t q)
        {
            for (std::size_t i = 0; i < rows_; ++i)
                m_[i][dst] = checkedSub(m_[i][dst], checkedMul(q, m_[i][src]));
            for (auto& row : v_)
                row[dst] = checkedSub(row[dst], checkedMul(q, row[src]));
        }

        void negateCol(std::size_t c)
        {
            for (std::size_t i = 0; i < rows_; ++i)
                m_[i][c] = -m_[i][c];
            for (auto& row : v_)
                row[c] = -row[c];
        }

        // Moves the smallest nonzero |entry| of the trailing block to (t,t).
        bool pivotSmallest(std::size_t t)
        {
            std::size_t bi = rows_, bj = cols_;
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            for (std::size_t i = t; i < rows_; ++i)
            {
                for (std::size_t j = t; j < cols_; ++j)
                {
                    std::int64_t a = std::llabs(m_[i][j]);
                    if (a != 0 && a < best)
                    {
                        best = a;
                        bi = i;
                        bj = j;
                        if (a == 1)
                            break;
                    }
                }
                if (best == 1)
                    break;
            }
            if (bi == rows_)
                return false;
            swapRows(t, bi);
            swapCols(t, bj);
            return true;
        }

        void reduceAt(std::size_t t)
        {
            for (;;)
            {
                bool dirty = false;
                for (std::size_t i = t + 1; i < rows_; ++i)
                {
                    if (m_[i][t] == 0)
                        continue;
                    rowOp(i, t, m_[i][t] / m_[t][t]);
                    if (m_[i][t] != 0)
                        dirty = true;
                }
                for (std::size_t j = t + 1; j < cols_; ++j)
                {
                    if (m_[t][j] == 0)
                        continue;
                    colOp(j, t, m_[t][j] / m_[t][t]);
                    if (m_[t][j] != 0)
                        dirty = true;
                }
                if (dirty)
                {
                    repivotCross(t);
                    continue;
                }

                // Divisibility: fold an offending row into row t and retry.
                bool folded = false;
                for (std::size_t i = t + 1; i < rows_ && !folded; ++i)
                {
                    for (std::size_t j = t + 1; j < cols_; ++j)
                    {
                        if (m_[i][j] % m_[t][t] != 0)
                        {
                            for (std::size_t k = 0; k < cols_; ++k)
                                m_[t][k] = checkedAdd(m_[t][k], m_[i][k]);
                            folded = true;
                            break;
                        }
                    }
                }
                if (!folded)
                    return;
            }
        }

        // Smallest nonzero entry in row t / column t becomes the pivot.
        void repivotCross(std::size_t t)
        {
            std::size_t bi = t, bj = t;
            std::int64_t best = std::llabs(m_[t][t]);
            for (std::size_t i = t + 1; i < rows_; ++i)
            {
                std::int64_t a = std::llabs(m_[i][t]);
                if (a != 0 && (best == 0 || a < best))
                {
                    best = a;
                    bi = i;
                    bj = t;
                }
            }
            for (std::size_t j = t + 1; j < cols_; ++j)
            {
                std::int64_t a = std::llabs(m_[t][j]);
                if (a != 0 && (best == 0 || a < best))
                {
                    best = a;
                    bi = t;
                    bj = j;
                }
            }
            swapRows(t, bi);
            swapCols(t, bj);
        }
};

}   // namespace

SmithForm smithNormalForm(IntMatrix matrix, std::size_t cols)
{
    const std::size_t rows = matrix.size();
    for (const auto& row : matrix)
    {
        if (row.size() != cols)
            throw DomainError("ragged matrix");
    }

    SmithForm out;
    out.column_transform.assign(cols, std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < cols; ++i)
        out.column_transform[i][i] = 1;

    Reducer r(matrix, out.column_transform, rows, cols);
    for (std::size_t t = 0; t < std::min(rows, cols); ++t)
    {
        if (!r.pivotSmallest(t))
            break;
        r.reduceAt(t);
        if (matrix[t][t] < 0)
            r.negateCol(t);
        out.diagonal.push_back(matrix[t][t]);
    }
    return out;
}

IntMatrix relatorMatrix(const GroupPresentation& presentation)
{
    const std::size_t g = presentation.generatorCount();
    IntMatrix m;
    m.reserve(presentation.relators().size());
    for (const Word& r : presentation.relators())
    {
        std::vector<std::int64_t> row(g, 0);
        for (const Letter& l : r.letters())
            row[l.generator] += l.exponent;
        m.push_back(std::move(row));
    }
    return m;
}

Abelianization::Abelianization(const GroupPresentation& presentation)
    : generators_(presentation.generatorCount())
{
    SmithForm snf = smithNormalForm(relatorMatrix(presentation), generators_);
    transform_ = std::move(snf.column_transform);
    moduli_.assign(generators_, 0);
    for (std::size_t i = 0; i < snf.diagonal.size(); ++i)
        moduli_[i] = snf.diagonal[i];
}

AbelianInvariants Abelianization::invariants() const
{
    AbelianInvariants inv;
    for (std::int64_t d : moduli_)
    {
        if (d == 0)
            ++inv.free_rank;
        else if (d > 1)
            inv.torsion.push_back(d);
    }
    return inv;
}

std::vector<std::int64_t> Abelianization::image(const Word& word) const
{
    std::vector<std::int64_t> x(generators_, 0);
    for (const Letter& l : word.letters())
        x.at(l.generator) += l.exponent;

    std::vector<std::int64_t> coords(generators_, 0);
    for (std::size_t j = 0; j < generators_; ++j)
    {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < generators_; ++i)
        {
            if (x[i] != 0)
                s = checkedAdd(s, checkedMul(x[i], transform_[i][j]));
        }
        coords[j] = s;
    }

    std::vector<std::int64_t> torsion, free;
    for (std::size_t j = 0; j < generators_; ++j)
    {
        const std::int64_t d = moduli_[j];
        if (d == 0)
            free.push_back(coords[j]);
        else if (d > 1)
            torsion.push_back(((coords[j] % d) + d) % d);
    }
    torsion.insert(torsion.end(), free.begin(), free.end());
    return torsion;
}

AbelianInvariants abelianization(const GroupPresentation& presentation)
{
    return Abelianization(presentation).invariants();
}

}   // namespace chainlift
