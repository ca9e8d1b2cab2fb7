#pragma once

// Matrix realizations: gl/sl, the ortho-orthogonal families, periplectic
// algebras, their derived algebras, central extensions by the trace-like
// cocycle, adjunction of the grading operator I_0, explicit Chevalley
// generators for the orthogonal series, and canonical forms of symmetric
// bilinear forms in characteristic 2.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "algebra.hpp"
#include "cartan.hpp"
#include "sparsela.hpp"

namespace modchev {

struct DegenerateForm : std::runtime_error {
    DegenerateForm() : std::runtime_error("bilinear form is degenerate") {}
};
struct BadFormat : std::runtime_error {
    explicit BadFormat(const std::string& w) : std::runtime_error(w) {}
};

// Dense supermatrix with a parity per index.
class SuperMatrix {
  public:
    SuperMatrix(const FieldSpec* F, std::vector<int> parities)
        : F_(F), par_(std::move(parities)), n_(int(par_.size())),
          a_(n_, std::vector<FieldElement>(n_, F->zero())) {}

    int size() const { return n_; }
    const FieldSpec* field() const { return F_; }
    int index_parity(int i) const { return par_[i]; }
    const std::vector<int>& parities() const { return par_; }
    FieldElement& at(int i, int j) { return a_[i][j]; }
    const FieldElement& at(int i, int j) const { return a_[i][j]; }

    bool is_zero() const {
        for (const auto& r : a_)
            for (const auto& x : r)
                if (!x.is_zero()) return false;
        return true;
    }
    // parity as an operator; nullopt when inhomogeneous
    std::optional<int> parity() const {
        std::optional<int> q;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                if (a_[i][j].is_zero()) continue;
                int pij = (par_[i] + par_[j]) & 1;
                if (!q)
                    q = pij;
                else if (*q != pij)
                    return std::nullopt;
            }
        return q ? q : std::optional<int>(0);
    }

    friend SuperMatrix operator*(const SuperMatrix& x, const SuperMatrix& y) {
        SuperMatrix r(x.F_, x.par_);
        for (int i = 0; i < x.n_; ++i)
            for (int k = 0; k < x.n_; ++k) {
                if (x.a_[i][k].is_zero()) continue;
                for (int j = 0; j < x.n_; ++j) {
                    if (y.a_[k][j].is_zero()) continue;
                    r.a_[i][j] += x.a_[i][k] * y.a_[k][j];
                }
            }
        return r;
    }
    friend SuperMatrix operator+(const SuperMatrix& x, const SuperMatrix& y) {
        SuperMatrix r = x;
        for (int i = 0; i < x.n_; ++i)
            for (int j = 0; j < x.n_; ++j) r.a_[i][j] += y.a_[i][j];
        return r;
    }
    SuperMatrix scaled(const FieldElement& c) const {
        SuperMatrix r = *this;
        for (auto& row : r.a_)
            for (auto& x : row) x = x * c;
        return r;
    }

    // super commutator of homogeneous matrices
    friend SuperMatrix sbracket(const SuperMatrix& x, int px, const SuperMatrix& y, int py) {
        SuperMatrix xy = x * y;
        SuperMatrix yx = y * x;
        FieldElement s = x.F_->from_int((px && py) ? 1 : -1);
        return xy + yx.scaled(s);
    }

    std::string str() const {
        std::ostringstream out;
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) out << (j ? " " : "") << a_[i][j].str();
            out << "\n";
        }
        return out.str();
    }

  private:
    const FieldSpec* F_;
    std::vector<int> par_;
    int n_;
    std::vector<std::vector<FieldElement>> a_;
};

inline SuperMatrix unit_matrix(const FieldSpec* F, const std::vector<int>& par, int i, int j) {
    SuperMatrix m(F, par);
    m.at(i, j) = F->one();
    return m;
}

struct BilinearFormSpec {
    SuperMatrix gram;
    int form_parity = 0; // 0 even, 1 odd
};

// ---------------------------------------------------------------------------
// Structure-constant algebra over a basis of supermatrices, with optional
// central extension by the cocycle F and optional grading operator I_0.

class MatrixAlgebra {
  public:
    // plain span of homogeneous matrices (must be bracket-closed)
    MatrixAlgebra(const FieldSpec* F, std::vector<SuperMatrix> basis, std::vector<int> parities,
                  bool with_cocycle = false, bool with_I0 = false, int half = 0)
        : F_(F), mats_(std::move(basis)), par_(std::move(parities)), cocycle_(with_cocycle), half_(half) {
        if (with_I0) {
            // I_0 = diag(1_half-block, 0): ad I_0 grades the off blocks
            SuperMatrix i0(F_, mats_.front().parities());
            for (int i = 0; i < half_; ++i) i0.at(i, i) = F_->one();
            i0_index_ = int(mats_.size());
            mats_.push_back(std::move(i0));
            par_.push_back(0);
        }
        if (cocycle_) {
            z_index_ = int(mats_.size()) + (i0_index_ >= 0 ? 0 : 0);
            par_.push_back(0);
        }
        width_ = int(mats_.front().size());
        coordinatize();
    }

    const FieldSpec* field() const { return F_; }
    int dim() const { return int(par_.size()); }
    int parity(int i) const { return par_[i]; }
    bool has_squaring() const { return !F_->is_rationals() && F_->characteristic() == 2; }
    int z_index() const { return z_index_; }
    int i0_index() const { return i0_index_; }
    const SuperMatrix& matrix(int i) const { return mats_[i]; }
    std::string basis_name(int i) const {
        if (i == z_index_) return "z";
        if (i == i0_index_) return "I0";
        return "m" + std::to_string(i + 1);
    }

    SV bracket_basis(int i, int j) const {
        auto it = table_.find({i, j});
        if (it != table_.end()) return it->second;
        SV v = compute_bracket(i, j);
        table_[{i, j}] = v;
        return v;
    }
    SV squaring_basis(int i) const {
        if (!par_[i] || i == z_index_) return {};
        SuperMatrix sq = mats_[i] * mats_[i];
        SV out = coords(sq);
        if (cocycle_) {
            FieldElement f = cocycle_half(mats_[i]);
            if (!f.is_zero()) sv_add_scaled(out, sv_unit(z_index_, F_->one()), f);
        }
        return out;
    }

    // express an arbitrary matrix in the basis (throws when outside the span)
    SV coords(const SuperMatrix& m) const {
        std::vector<FieldElement> flat = flatten(m);
        auto [fresh, combo] = elim_->feed(flat);
        if (fresh) throw std::runtime_error("matrix outside the algebra span");
        SV out;
        for (size_t i = 0; i < combo.size(); ++i)
            if (!combo[i].is_zero()) out.emplace_back(int(i), combo[i]);
        return out;
    }

    // the cocycle F(X, Y) = sum_{i<j} (C_ij D'_ij + C'_ij D_ij) over the
    // cross blocks of the (A C / D A^T) shape
    FieldElement cocycle_value(const SuperMatrix& x, const SuperMatrix& y) const { return cocycle_F(x, y); }

  private:
    FieldElement cocycle_F(const SuperMatrix& x, const SuperMatrix& y) const {
        // C block: rows < half, cols >= half; D block: rows >= half, cols < half
        FieldElement out = F_->zero();
        for (int i = 0; i < half_; ++i)
            for (int j = i + 1; j < half_; ++j) {
                out += x.at(i, half_ + j) * y.at(half_ + i, j);
                out += y.at(i, half_ + j) * x.at(half_ + i, j);
            }
        return out;
    }
    FieldElement cocycle_half(const SuperMatrix& x) const {
        FieldElement out = F_->zero();
        for (int i = 0; i < half_; ++i)
            for (int j = i + 1; j < half_; ++j) out += x.at(i, half_ + j) * x.at(half_ + i, j);
        return out;
    }

    SV compute_bracket(int i, int j) const {
        if (i == z_index_ || j == z_index_) return {};
        SuperMatrix b = sbracket(mats_[i], par_[i], mats_[j], par_[j]);
        SV out = coords(b);
        if (cocycle_ && i != i0_index_ && j != i0_index_) {
            FieldElement f = cocycle_F(mats_[i], mats_[j]);
            if (!f.is_zero()) sv_add_scaled(out, sv_unit(z_index_, F_->one()), f);
        }
        return out;
    }

    std::vector<FieldElement> flatten(const SuperMatrix& m) const {
        std::vector<FieldElement> flat;
        flat.reserve(width_ * width_);
        for (int i = 0; i < width_; ++i)
            for (int j = 0; j < width_; ++j) flat.push_back(m.at(i, j));
        return flat;
    }
    void coordinatize() {
        elim_ = std::make_unique<Eliminator>(F_, width_ * width_);
        for (const auto& m : mats_) {
            auto [fresh, combo] = elim_->feed(flatten(m));
            if (!fresh) throw std::runtime_error("matrix basis is linearly dependent");
        }
        // the central element z has no matrix; coords() never sees it
    }

    const FieldSpec* F_;
    std::vector<SuperMatrix> mats_;
    std::vector<int> par_;
    bool cocycle_;
    int half_ = 0;
    int z_index_ = -1;
    int i0_index_ = -1;
    int width_ = 0;
    std::unique_ptr<Eliminator> elim_;
    mutable std::map<std::pair<int, int>, SV> table_;
};

// ---------------------------------------------------------------------------
// aut_B: all homogeneous X with B(Xu, v) + (-1)^{p(u)p(X)} B(u, Xv) = 0.
// Entrywise: sum_i X_ik B_ij + (-1)^{p_k q} sum_i B_ki X_ij = 0 for all k, j.

inline std::vector<SuperMatrix> aut_form_basis(const BilinearFormSpec& B, int q /*parity of X*/) {
    const SuperMatrix& g = B.gram;
    const FieldSpec* F = g.field();
    int n = g.size();
    // admissible entries: parity of X_ij must be q
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (((g.index_parity(i) + g.index_parity(j)) & 1) == q) slots.emplace_back(i, j);
    std::map<std::pair<int, int>, int> slot_of;
    for (size_t s = 0; s < slots.size(); ++s) slot_of[slots[s]] = int(s);
    Matrix M(F, n * n, int(slots.size()));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            int row = k * n + j;
            for (int i = 0; i < n; ++i) {
                // X_ik B_ij
                auto s1 = slot_of.find({i, k});
                if (s1 != slot_of.end() && !g.at(i, j).is_zero())
                    M.set(row, s1->second, M.get(row, s1->second) + g.at(i, j));
                // (-1)^{p_k q} B_ki X_ij
                auto s2 = slot_of.find({i, j});
                if (s2 != slot_of.end() && !g.at(k, i).is_zero()) {
                    FieldElement c = g.at(k, i);
                    if (g.index_parity(k) && q) c = -c;
                    M.set(row, s2->second, M.get(row, s2->second) + c);
                }
            }
        }
    auto ker = kernel_basis(M);
    std::vector<SuperMatrix> out;
    for (const auto& v : ker) {
        SuperMatrix m(F, g.parities());
        for (size_t s = 0; s < slots.size(); ++s) m.at(slots[s].first, slots[s].second) = v[s];
        out.push_back(std::move(m));
    }
    return out;
}

inline MatrixAlgebra aut_algebra(const BilinearFormSpec& B) {
    if (rank(([&] {
            Matrix m(B.gram.field(), B.gram.size(), B.gram.size());
            for (int i = 0; i < B.gram.size(); ++i)
                for (int j = 0; j < B.gram.size(); ++j) m.set(i, j, B.gram.at(i, j));
            return m;
        })()) != B.gram.size())
        throw DegenerateForm();
    std::vector<SuperMatrix> basis;
    std::vector<int> parities;
    for (int q : {0, 1}) {
        for (auto& m : aut_form_basis(B, q)) {
            basis.push_back(std::move(m));
            parities.push_back(q);
        }
    }
    return MatrixAlgebra(B.gram.field(), std::move(basis), std::move(parities));
}

// ---------------------------------------------------------------------------
// The oo/pe families (p = 2)

inline BilinearFormSpec oo_form(const std::string& kind, int n_ev, int n_od, const FieldSpec* F) {
    if (F->is_rationals() || F->characteristic() != 2) throw BadFormat("oo families live in characteristic 2");
    std::vector<int> par;
    for (int i = 0; i < n_ev; ++i) par.push_back(0);
    for (int i = 0; i < n_od; ++i) par.push_back(1);
    SuperMatrix g(F, par);
    auto put_I = [&](int off, int m) {
        for (int i = 0; i < m; ++i) g.at(off + i, off + i) = F->one();
    };
    auto put_Pi = [&](int off, int m) {
        if (m % 2) {
            int k = m / 2;
            for (int i = 0; i < k; ++i) {
                g.at(off + i, off + k + 1 + i) = F->one();
                g.at(off + k + 1 + i, off + i) = F->one();
            }
            g.at(off + k, off + k) = F->one();
        } else {
            int k = m / 2;
            for (int i = 0; i < k; ++i) {
                g.at(off + i, off + k + i) = F->one();
                g.at(off + k + i, off + i) = F->one();
            }
        }
    };
    if (kind.size() != 2) throw BadFormat("oo kind must be II, IP, PI or PP");
    if (kind[0] == 'I')
        put_I(0, n_ev);
    else
        put_Pi(0, n_ev);
    if (kind[1] == 'I')
        put_I(n_ev, n_od);
    else
        put_Pi(n_ev, n_od);
    return {std::move(g), 0};
}

inline MatrixAlgebra oo_family(const std::string& kind, int n_ev, int n_od, const FieldSpec* F) {
    return aut_algebra(oo_form(kind, n_ev, n_od, F));
}

// periplectic: odd form Pi_{m|m}
inline BilinearFormSpec pe_form(int m, const FieldSpec* F) {
    std::vector<int> par;
    for (int i = 0; i < m; ++i) par.push_back(0);
    for (int i = 0; i < m; ++i) par.push_back(1);
    SuperMatrix g(F, par);
    for (int i = 0; i < m; ++i) {
        g.at(i, m + i) = F->one();
        g.at(m + i, i) = F->one();
    }
    return {std::move(g), 1};
}
inline MatrixAlgebra pe(int m, const FieldSpec* F) { return aut_algebra(pe_form(m, F)); }

// The Pi(2K) realization in the interleaved format k_ev|k_od|k_ev|k_od used
// for the oo_PiPi matrices of shape (A C / D A^T).
inline BilinearFormSpec oo_PiPi_split_form(int k_ev, int k_od, const FieldSpec* F) {
    int K = k_ev + k_od;
    std::vector<int> par;
    for (int rep = 0; rep < 2; ++rep) {
        for (int i = 0; i < k_ev; ++i) par.push_back(0);
        for (int i = 0; i < k_od; ++i) par.push_back(1);
    }
    SuperMatrix g(F, par);
    for (int i = 0; i < K; ++i) {
        g.at(i, K + i) = F->one();
        g.at(K + i, i) = F->one();
    }
    return {std::move(g), 0};
}

// Derived subalgebra of a matrix algebra, returned as a fresh MatrixAlgebra
// over derived basis matrices (central extensions are added separately).
inline std::vector<std::pair<SuperMatrix, int>> derived_matrices(const MatrixAlgebra& alg, int steps) {
    std::vector<std::pair<SuperMatrix, int>> cur;
    for (int i = 0; i < alg.dim(); ++i)
        if (i != alg.z_index()) cur.emplace_back(alg.matrix(i), alg.parity(i));
    const FieldSpec* F = alg.field();
    int n = cur.front().first.size();
    for (int s = 0; s < steps; ++s) {
        Eliminator el(F, n * n);
        std::vector<std::pair<SuperMatrix, int>> next;
        auto push = [&](const SuperMatrix& m, int q) {
            std::vector<FieldElement> flat;
            flat.reserve(n * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) flat.push_back(m.at(i, j));
            auto [fresh, combo] = el.feed(std::move(flat));
            if (fresh) next.emplace_back(m, q);
        };
        for (size_t a = 0; a < cur.size(); ++a) {
            for (size_t b = a + 1; b < cur.size(); ++b)
                push(sbracket(cur[a].first, cur[a].second, cur[b].first, cur[b].second),
                     (cur[a].second + cur[b].second) & 1);
            if (cur[a].second && !F->is_rationals() && F->characteristic() == 2)
                push(cur[a].first * cur[a].first, 0);
            if (cur[a].second && (F->is_rationals() || F->characteristic() != 2))
                push(sbracket(cur[a].first, 1, cur[a].first, 1), 0);
        }
        cur = std::move(next);
    }
    return cur;
}

// oo_c(i, 2k_ev|2k_od) (+ K I_0 when asked): central extension of the i-th
// derived of oo_PiPi in the split format
inline MatrixAlgebra ooc(int level, int k_ev, int k_od, const FieldSpec* F, bool with_I0) {
    MatrixAlgebra base = aut_algebra(oo_PiPi_split_form(k_ev, k_od, F));
    auto der = derived_matrices(base, level);
    std::vector<SuperMatrix> mats;
    std::vector<int> pars;
    for (auto& [m, q] : der) {
        mats.push_back(std::move(m));
        pars.push_back(q);
    }
    return MatrixAlgebra(F, std::move(mats), std::move(pars), true, with_I0, k_ev + k_od);
}

// pec(i, m) (+ K I_0)
inline MatrixAlgebra pec(int level, int m, const FieldSpec* F, bool with_I0) {
    MatrixAlgebra base = pe(m, F);
    auto der = derived_matrices(base, level);
    std::vector<SuperMatrix> mats;
    std::vector<int> pars;
    for (auto& [mm, q] : der) {
        mats.push_back(std::move(mm));
        pars.push_back(q);
    }
    return MatrixAlgebra(F, std::move(mats), std::move(pars), true, with_I0, m);
}

// oc(i, 2k): the non-super case (o_Pi(2k) in the split format)
inline MatrixAlgebra oc(int level, int k, const FieldSpec* F, bool with_I0) {
    return ooc(level, k, 0, F, with_I0);
}

// ---------------------------------------------------------------------------
// Explicit Chevalley generators for the orthogonal series (p = 2)

struct ChevalleySet {
    std::vector<SV> x, y, h; // images inside a MatrixAlgebra
};

// oc(2;2n): x_i = E_{i,i+1} + E_{n+i+1,n+i} (i < n), x_n = E_{n-1,2n} + E_{n,2n-1}
inline ChevalleySet chevalley_oc(const MatrixAlgebra& alg, int n) {
    const FieldSpec* F = alg.field();
    const auto& par = alg.matrix(0).parities();
    auto E = [&](int i, int j) { return unit_matrix(F, par, i - 1, j - 1); };
    ChevalleySet out;
    for (int i = 1; i <= n - 1; ++i) {
        SuperMatrix xi = E(i, i + 1) + E(n + i + 1, n + i);
        SuperMatrix yi = E(i + 1, i) + E(n + i, n + i + 1);
        out.x.push_back(alg.coords(xi));
        out.y.push_back(alg.coords(yi));
    }
    SuperMatrix xn = E(n - 1, 2 * n) + E(n, 2 * n - 1);
    SuperMatrix yn = E(2 * n, n - 1) + E(2 * n - 1, n);
    out.x.push_back(alg.coords(xn));
    out.y.push_back(alg.coords(yn));
    for (int i = 0; i < n; ++i) {
        SV h = bracket_sv(alg, out.x[i], out.y[i]);
        out.h.push_back(std::move(h));
    }
    return out;
}

// o^(1)_Pi(2n+1): x_i = E_{i,i+1} + E_{n+i+2,n+i+1} (i < n), x_n = E_{n,n+2} + E_{n+1,2n+1}
inline ChevalleySet chevalley_oPi_odd(const MatrixAlgebra& alg, int n) {
    const FieldSpec* F = alg.field();
    const auto& par = alg.matrix(0).parities();
    auto E = [&](int i, int j) { return unit_matrix(F, par, i - 1, j - 1); };
    ChevalleySet out;
    for (int i = 1; i <= n - 1; ++i) {
        SuperMatrix xi = E(i, i + 1) + E(n + i + 2, n + i + 1);
        SuperMatrix yi = E(i + 1, i) + E(n + i + 1, n + i + 2);
        out.x.push_back(alg.coords(xi));
        out.y.push_back(alg.coords(yi));
    }
    // the short-root generator: the paper prints E_{n,n+2} + E_{n+1,2n+1},
    // which does not preserve the printed Pi_{2n+1}; the column index n+1
    // does, and brackets to h_n = E_{n,n} + E_{2n+1,2n+1} as stated there
    SuperMatrix xn = E(n, n + 1) + E(n + 1, 2 * n + 1);
    SuperMatrix yn = E(n + 1, n) + E(2 * n + 1, n + 1);
    out.x.push_back(alg.coords(xn));
    out.y.push_back(alg.coords(yn));
    for (int i = 0; i < n; ++i) out.h.push_back(bracket_sv(alg, out.x[i], out.y[i]));
    return out;
}

// Read the Cartan matrix off generator triples: [h_i, x_j] = A_ij x_j.
template <class Alg>
CartanSpec cartan_from_generators(const Alg& alg, const std::vector<SV>& x, const std::vector<SV>& h,
                                  const std::vector<int>& parities) {
    const FieldSpec* F = alg.field();
    int n = int(x.size());
    std::vector<std::vector<FieldElement>> a(n, std::vector<FieldElement>(n, F->zero()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SV b = bracket_sv(alg, h[i], x[j]);
            // b must be proportional to x_j
            if (b.empty()) {
                a[i][j] = F->zero();
                continue;
            }
            FieldElement lambda;
            for (const auto& [idx, c] : x[j])
                if (idx == b.front().first) lambda = b.front().second / c;
            SV check = sv_scale(x[j], lambda);
            sv_add_scaled(check, b, F->from_int(-1));
            if (!check.empty()) throw std::runtime_error("generators are not weight vectors");
            a[i][j] = lambda;
        }
    std::vector<DiagonalKind> kinds(n);
    long p = F->is_rationals() ? 0 : F->characteristic();
    for (int j = 0; j < n; ++j) {
        bool zero = a[j][j].is_zero();
        if (parities[j])
            kinds[j] = zero ? DiagonalKind::OddZero : DiagonalKind::OddOne;
        else if (zero)
            kinds[j] = DiagonalKind::EvZero;
        else
            kinds[j] = p == 2 ? DiagonalKind::EvOne : DiagonalKind::Two;
    }
    return CartanSpec(F, std::move(kinds), std::move(a));
}

// ---------------------------------------------------------------------------
// Canonical forms of non-degenerate symmetric bilinear forms, p = 2

enum class SymFormClass { Identity, ZeroDiagonal };

struct CanonSymForm {
    SymFormClass cls;
    Matrix transform; // M with M B M^T = canonical
};

struct NotSymmetric : std::runtime_error {
    NotSymmetric() : std::runtime_error("form is not symmetric") {}
};

inline Matrix matrix_of(const FieldSpec* F, const std::vector<std::vector<FieldElement>>& rows) {
    Matrix m(F, int(rows.size()), int(rows.front().size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m.set(int(i), int(j), rows[i][j]);
    return m;
}

// Congruence reduction: Albert's diagonalization when some diagonal entry is
// nonzero (zero-diagonality is congruence-invariant in characteristic 2),
// hyperbolic pairing otherwise; mixed leftovers merge through the 3x3 glue
// 1 (+) Pi_2 ~ 1_3.
inline CanonSymForm canon_sym_form_char2(const Matrix& B) {
    const FieldSpec* F = B.field();
    long p = F->is_rationals() ? 0 : F->characteristic();
    if (p != 2) throw WrongCharacteristic("canonical symmetric forms implemented for characteristic 2");
    int n = B.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(B.get(i, j) == B.get(j, i))) throw NotSymmetric();
    if (rank(B) != n) throw DegenerateForm();

    // work on a dense copy, tracking M with rows as the new basis vectors
    std::vector<std::vector<FieldElement>> b(n, std::vector<FieldElement>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i][j] = B.get(i, j);
    std::vector<std::vector<FieldElement>> m(n, std::vector<FieldElement>(n, F->zero()));
    for (int i = 0; i < n; ++i) m[i][i] = F->one();

    auto row_op = [&](int dst, int src, const FieldElement& c) {
        // basis change e_dst += c e_src: congruence on b, row op on m
        for (int j = 0; j < n; ++j) m[dst][j] += c * m[src][j];
        for (int j = 0; j < n; ++j) b[dst][j] += c * b[src][j];
        for (int i = 0; i < n; ++i) b[i][dst] += c * b[i][src];
    };
    auto scale_op = [&](int dst, const FieldElement& c) {
        for (int j = 0; j < n; ++j) m[dst][j] = c * m[dst][j];
        for (int j = 0; j < n; ++j) b[dst][j] = c * b[dst][j];
        for (int i = 0; i < n; ++i) b[i][dst] = c * b[i][dst];
    };
    auto swap_op = [&](int x, int y) {
        std::swap(m[x], m[y]);
        std::swap(b[x], b[y]);
        for (int i = 0; i < n; ++i) std::swap(b[i][x], b[i][y]);
    };

    bool zero_diag = true;
    for (int i = 0; i < n; ++i)
        if (!b[i][i].is_zero()) zero_diag = false;

    int done = 0;
    std::vector<int> one_slots, pair_slots; // pair slot stores its first index
    while (done < n) {
        // prefer a nonzero diagonal pivot
        int piv = -1;
        for (int i = done; i < n; ++i)
            if (!b[i][i].is_zero()) {
                piv = i;
                break;
            }
        if (piv >= 0) {
            swap_op(done, piv);
            scale_op(done, b[done][done].sqrt_char2().inverse());
            for (int i = done + 1; i < n; ++i)
                if (!b[i][done].is_zero()) row_op(i, done, b[i][done]);
            one_slots.push_back(done);
            ++done;
            continue;
        }
        int j = -1;
        for (int k = done + 1; k < n; ++k)
            if (!b[done][k].is_zero()) {
                j = k;
                break;
            }
        if (j < 0) throw DegenerateForm();
        swap_op(done + 1, j);
        scale_op(done + 1, b[done][done + 1].inverse());
        for (int i = done + 2; i < n; ++i) {
            if (!b[i][done].is_zero()) row_op(i, done + 1, b[i][done]);
            if (!b[i][done + 1].is_zero()) row_op(i, done, b[i][done + 1]);
        }
        pair_slots.push_back(done);
        done += 2;
    }
    // merge a 1-slot with a hyperbolic pair into three 1-slots: relative to
    // the block 1 (+) Pi_2, the vectors (1,1,0), (1,0,1), (1,1,1) are
    // orthonormal
    while (!one_slots.empty() && !pair_slots.empty()) {
        int o = one_slots.back();
        int q = pair_slots.back();
        pair_slots.pop_back();
        std::vector<FieldElement> r0(n, F->zero()), r1(n, F->zero()), r2(n, F->zero());
        for (int c = 0; c < n; ++c) {
            r0[c] = m[o][c] + m[q][c];
            r1[c] = m[o][c] + m[q + 1][c];
            r2[c] = m[o][c] + m[q][c] + m[q + 1][c];
        }
        m[o] = r0;
        m[q] = r1;
        m[q + 1] = r2;
        one_slots.push_back(q);
        one_slots.push_back(q + 1);
    }
    // order rows into the canonical layout
    std::vector<std::vector<FieldElement>> rows;
    if (!zero_diag) {
        std::sort(one_slots.begin(), one_slots.end());
        for (int s : one_slots) rows.push_back(m[s]);
    } else {
        for (int s : pair_slots) rows.push_back(m[s]);
        for (int s : pair_slots) rows.push_back(m[s + 1]);
    }
    CanonSymForm out{zero_diag ? SymFormClass::ZeroDiagonal : SymFormClass::Identity, matrix_of(F, rows)};
    // verify M B M^T equals the canonical representative
    Matrix M = out.transform;
    Matrix target(F, n, n);
    if (out.cls == SymFormClass::Identity) {
        target = Matrix::identity(F, n);
    } else {
        int k = n / 2;
        for (int i = 0; i < k; ++i) {
            target.set(i, k + i, F->one());
            target.set(k + i, i, F->one());
        }
    }
    Matrix got = M * B * M.transposed();
    if (!(got == target)) throw std::runtime_error("canonical form reduction failed verification");
    return out;
}

} // namespace modchev
