#pragma once

// Exact sparse/dense linear algebra over any FieldSpec: row reduction, rank,
// kernel.  Generic path for all fields plus a bit-packed GF(2) path; the two
// agree entry for entry (tested on random matrices).

#include <cstdint>
#include <map>
#include <vector>

#include "field.hpp"

namespace modchev {

class Matrix {
  public:
    Matrix(const FieldSpec* field, int rows, int cols) : field_(field), rows_(rows), cols_(cols) {}

    const FieldSpec* field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const FieldElement& v) {
        if (v.is_zero())
            entries_.erase({r, c});
        else
            entries_[{r, c}] = v;
    }
    FieldElement get(int r, int c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? field_->zero() : it->second;
    }
    const std::map<std::pair<int, int>, FieldElement>& entries() const { return entries_; }

    std::vector<FieldElement> dense_row(int r) const {
        std::vector<FieldElement> row(cols_, field_->zero());
        auto it = entries_.lower_bound({r, 0});
        for (; it != entries_.end() && it->first.first == r; ++it) row[it->first.second] = it->second;
        return row;
    }

    static Matrix identity(const FieldSpec* field, int n) {
        Matrix m(field, n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, field->one());
        return m;
    }

    Matrix transposed() const {
        Matrix t(field_, cols_, rows_);
        for (const auto& [rc, v] : entries_) t.set(rc.second, rc.first, v);
        return t;
    }

    Matrix operator*(const Matrix& b) const {
        Matrix r(field_, rows_, b.cols_);
        std::map<std::pair<int, int>, FieldElement> acc;
        for (const auto& [rc, v] : entries_) {
            auto it = b.entries_.lower_bound({rc.second, 0});
            for (; it != b.entries_.end() && it->first.first == rc.second; ++it) {
                auto key = std::make_pair(rc.first, it->first.second);
                auto found = acc.find(key);
                if (found == acc.end())
                    acc.emplace(key, v * it->second);
                else
                    found->second += v * it->second;
            }
        }
        for (auto& [k, v] : acc) r.set(k.first, k.second, v);
        return r;
    }

    bool operator==(const Matrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

  private:
    const FieldSpec* field_;
    int rows_, cols_;
    std::map<std::pair<int, int>, FieldElement> entries_;
};

struct RrefResult {
    Matrix R;          // reduced row-echelon form
    int rank;
    std::vector<int> pivot_cols;
    Matrix transform;  // R = transform * M
};

namespace detail {

// Dense elimination (rows as FieldElement vectors).  Pivot choice: first row
// with a nonzero entry in the leftmost unfinished column, so outputs are
// deterministic.
inline RrefResult rref_generic(const Matrix& M) {
    const FieldSpec* F = M.field();
    int n = M.rows(), m = M.cols();
    std::vector<std::vector<FieldElement>> a;
    a.reserve(n);
    for (int i = 0; i < n; ++i) a.push_back(M.dense_row(i));
    std::vector<std::vector<FieldElement>> t(n, std::vector<FieldElement>(n, F->zero()));
    for (int i = 0; i < n; ++i) t[i][i] = F->one();

    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m && row < n; ++col) {
        int sel = -1;
        for (int i = row; i < n; ++i)
            if (!a[i][col].is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[sel], a[row]);
        std::swap(t[sel], t[row]);
        FieldElement inv = a[row][col].inverse();
        for (int j = 0; j < m; ++j) a[row][j] = a[row][j] * inv;
        for (int j = 0; j < n; ++j) t[row][j] = t[row][j] * inv;
        for (int i = 0; i < n; ++i) {
            if (i == row || a[i][col].is_zero()) continue;
            FieldElement f = a[i][col];
            for (int j = 0; j < m; ++j) a[i][j] = a[i][j] - f * a[row][j];
            for (int j = 0; j < n; ++j) t[i][j] = t[i][j] - f * t[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    Matrix R(F, n, m), T(F, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (!a[i][j].is_zero()) R.set(i, j, a[i][j]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!t[i][j].is_zero()) T.set(i, j, t[i][j]);
    return {std::move(R), int(pivots.size()), std::move(pivots), std::move(T)};
}

// Bit-packed rows over GF(2).
struct Gf2Rows {
    int cols = 0;
    std::vector<std::vector<uint64_t>> rows;
    int words() const { return (cols + 63) / 64; }
    void add_row() { rows.emplace_back(words(), 0); }
    void set(int r, int c) { rows[r][c >> 6] ^= (uint64_t(1) << (c & 63)); }
    bool get(int r, int c) const { return (rows[r][c >> 6] >> (c & 63)) & 1; }
    void xor_rows(int dst, int src) {
        for (int w = 0; w < words(); ++w) rows[dst][w] ^= rows[src][w];
    }
};

inline RrefResult rref_gf2(const Matrix& M) {
    const FieldSpec* F = M.field();
    int n = M.rows(), m = M.cols();
    Gf2Rows a, t;
    a.cols = m;
    t.cols = n;
    for (int i = 0; i < n; ++i) {
        a.add_row();
        t.add_row();
        t.set(i, i);
    }
    for (const auto& [rc, v] : M.entries())
        if (!v.is_zero()) a.set(rc.first, rc.second);

    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m && row < n; ++col) {
        int sel = -1;
        for (int i = row; i < n; ++i)
            if (a.get(i, col)) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(a.rows[sel], a.rows[row]);
        std::swap(t.rows[sel], t.rows[row]);
        for (int i = 0; i < n; ++i) {
            if (i == row || !a.get(i, col)) continue;
            a.xor_rows(i, row);
            t.xor_rows(i, row);
        }
        pivots.push_back(col);
        ++row;
    }
    Matrix R(F, n, m), T(F, n, n);
    FieldElement one = F->one();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j)
            if (a.get(i, j)) R.set(i, j, one);
        for (int j = 0; j < n; ++j)
            if (t.get(i, j)) T.set(i, j, one);
    }
    return {std::move(R), int(pivots.size()), std::move(pivots), std::move(T)};
}

} // namespace detail

inline RrefResult rref(const Matrix& M) {
    if (!M.field()->is_rationals() && M.field()->order() == 2) return detail::rref_gf2(M);
    return detail::rref_generic(M);
}

// Forces the generic path (the GF(2) agreement test needs both).
inline RrefResult rref_generic_path(const Matrix& M) { return detail::rref_generic(M); }

inline int rank(const Matrix& M) { return rref(M).rank; }

// Basis of the right null space {v : M v = 0}; count m - rank.
inline std::vector<std::vector<FieldElement>> kernel_basis(const Matrix& M) {
    auto rr = rref(M);
    const FieldSpec* F = M.field();
    int m = M.cols();
    std::vector<int> pivot_of_col(m, -1);
    for (int i = 0; i < int(rr.pivot_cols.size()); ++i) pivot_of_col[rr.pivot_cols[i]] = i;
    std::vector<std::vector<FieldElement>> basis;
    for (int free = 0; free < m; ++free) {
        if (pivot_of_col[free] >= 0) continue;
        std::vector<FieldElement> v(m, F->zero());
        v[free] = F->one();
        for (int j = 0; j < m; ++j) {
            int pr = pivot_of_col[j];
            if (pr >= 0) v[j] = -rr.R.get(pr, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Incremental echelon space with expression tracking: feed vectors one at a
// time; each either enlarges the span (becomes an accepted vector) or
// reduces to an exact combination of the previously accepted ones.  Used by
// the contragredient builder and the nilpotent quotient, where candidates
// must be expressed in the chosen basis.
class Eliminator {
  public:
    explicit Eliminator(const FieldSpec* field, int width) : field_(field), width_(width) {}

    int dim() const { return int(rows_.size()); }

    // Returns (accepted, combo).  If accepted, the raw input vector is
    // accepted vector #dim()-1 and combo is empty; otherwise
    // input == sum combo[s] * accepted_raw[s].
    std::pair<bool, std::vector<FieldElement>> feed(std::vector<FieldElement> v) {
        std::vector<FieldElement> acc(rows_.size(), field_->zero());
        for (size_t r = 0; r < rows_.size(); ++r) {
            FieldElement c = v[lead_[r]];
            if (c.is_zero()) continue;
            for (int j = 0; j < width_; ++j) v[j] = v[j] - c * rows_[r][j];
            for (size_t s = 0; s <= r; ++s) acc[s] = acc[s] + c * expr_[r][s];
        }
        int lead = -1;
        for (int j = 0; j < width_; ++j)
            if (!v[j].is_zero()) {
                lead = j;
                break;
            }
        if (lead < 0) return {false, std::move(acc)};
        // raw = reduced + sum acc[s] raw_s, so the new echelon row
        // reduced/pivot has expression (e_new - acc)/pivot over raw vectors.
        FieldElement inv = v[lead].inverse();
        for (int j = 0; j < width_; ++j) v[j] = v[j] * inv;
        std::vector<FieldElement> e(rows_.size() + 1, field_->zero());
        for (size_t s = 0; s < acc.size(); ++s) e[s] = -(inv * acc[s]);
        e[rows_.size()] = inv;
        rows_.push_back(std::move(v));
        lead_.push_back(lead);
        expr_.push_back(std::move(e));
        return {true, {}};
    }

  private:
    const FieldSpec* field_;
    int width_;
    std::vector<std::vector<FieldElement>> rows_; // echelon rows
    std::vector<int> lead_;                       // leading column per row
    std::vector<std::vector<FieldElement>> expr_; // row = sum expr[s]*raw_s
};

} // namespace modchev
