#pragma once

// Dense exact linear algebra over any field type F providing + - * /,
// is_zero() and construction from long.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mlat {

template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
    explicit Matrix(std::size_t cols) : cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void append_row(std::vector<F> row)
    {
        data_.insert(data_.end(), std::make_move_iterator(row.begin()), std::make_move_iterator(row.end()));
        ++rows_;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap((*this)(a, c), (*this)(b, c));
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

/// Row echelon form produced by fraction-free (Bareiss) elimination.
/// Entries below the pivots are zero; pivot_cols[i] is the pivot column of row i.
template <class F>
struct Echelon {
    Matrix<F> form;
    std::vector<std::size_t> pivot_cols;

    std::size_t rank() const { return pivot_cols.size(); }
};

template <class F>
Echelon<F> bareiss_echelon(Matrix<F> m)
{
    Echelon<F> out;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    F prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c).is_zero())
            ++p;
        if (p == rows)
            continue;
        m.swap_rows(r, p);
        const F pivot = m(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const F lead = m(i, c);
            for (std::size_t j = c + 1; j < cols; ++j) {
                // Every intermediate entry is a minor of the input; the division is exact.
                m(i, j) = (pivot * m(i, j) - lead * m(r, j)) / prev;
            }
            m(i, c) = F(0);
        }
        // Columns left of c in rows below r were zeroed at earlier steps.
        prev = pivot;
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.form = std::move(m);
    return out;
}

template <class F>
std::size_t rank(const Matrix<F>& m)
{
    return bareiss_echelon(m).rank();
}

/// Basis of {x : m x = 0}: one vector per free column f, with x_f = 1 and all
/// other free coordinates 0. This basis depends only on the row space of m,
/// so it is canonical.
template <class F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& m)
{
    const std::size_t cols = m.cols();
    Echelon<F> ech = bareiss_echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : ech.pivot_cols)
        is_pivot[c] = true;

    std::vector<std::vector<F>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<F> x(cols, F(0));
        x[f] = F(1);
        for (std::size_t k = ech.rank(); k-- > 0;) {
            const std::size_t pc = ech.pivot_cols[k];
            F acc(0);
            for (std::size_t j = pc + 1; j < cols; ++j) {
                if (!x[j].is_zero() && !ech.form(k, j).is_zero())
                    acc += ech.form(k, j) * x[j];
            }
            x[pc] = acc.is_zero() ? F(0) : -acc / ech.form(k, pc);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

} // namespace mlat
