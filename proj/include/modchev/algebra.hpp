#pragma once

// Shared structure-constant machinery: sparse elements, the algebra
// interface used by axiom checks, derived series, centers and isomorphism
// fingerprints.  Both contragredient builds and matrix realizations expose
// this interface.

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "field.hpp"
#include "sparsela.hpp"

namespace modchev {

// Sparse vector over basis indices, kept sorted by index, no zeros stored.
using SV = std::vector<std::pair<int, FieldElement>>;

inline void sv_add_scaled(SV& dst, const SV& src, const FieldElement& c) {
    if (c.is_zero() || src.empty()) return;
    SV out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            FieldElement v = c * src[j].second;
            if (!v.is_zero()) out.emplace_back(src[j].first, v);
            ++j;
        } else {
            FieldElement v = dst[i].second + c * src[j].second;
            if (!v.is_zero()) out.emplace_back(dst[i].first, v);
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

inline SV sv_scale(const SV& v, const FieldElement& c) {
    SV out;
    if (c.is_zero()) return out;
    out.reserve(v.size());
    for (const auto& [i, x] : v) {
        FieldElement y = c * x;
        if (!y.is_zero()) out.emplace_back(i, y);
    }
    return out;
}

inline SV sv_unit(int i, const FieldElement& one) { return SV{{i, one}}; }

inline bool sv_is_zero(const SV& v) { return v.empty(); }

// ---------------------------------------------------------------------------
// Algebra interface (duck-typed):
//   const FieldSpec* field() const
//   int dim() const
//   int parity(int) const
//   SV bracket_basis(int, int) const       // [b_i, b_j]
//   SV squaring_basis(int) const           // q(b_i), odd i, p = 2
//   bool has_squaring() const
//   std::string basis_name(int) const

template <class Alg>
SV bracket_sv(const Alg& alg, const SV& x, const SV& y) {
    SV out;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) {
            SV t = alg.bracket_basis(i, j);
            sv_add_scaled(out, t, a * b);
        }
    return out;
}

// Polarized squaring: q(sum c_i b_i) = sum c_i^2 q(b_i) + sum_{i<j} c_i c_j [b_i, b_j].
template <class Alg>
SV squaring_sv(const Alg& alg, const SV& x) {
    SV out;
    for (size_t s = 0; s < x.size(); ++s) {
        sv_add_scaled(out, alg.squaring_basis(x[s].first), x[s].second * x[s].second);
        for (size_t t = s + 1; t < x.size(); ++t)
            sv_add_scaled(out, alg.bracket_basis(x[s].first, x[t].first), x[s].second * x[t].second);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Axiom suite

struct AxiomReport {
    bool ok = true;
    std::string first_failure;
    void fail(const std::string& what) {
        if (ok) first_failure = what;
        ok = false;
    }
};

template <class Alg>
void check_anticommutativity(const Alg& alg, AxiomReport& rep) {
    const FieldSpec* F = alg.field();
    long p = F->is_rationals() ? 0 : F->characteristic();
    for (int i = 0; i < alg.dim(); ++i)
        for (int j = i; j < alg.dim(); ++j) {
            SV xy = alg.bracket_basis(i, j);
            SV yx = alg.bracket_basis(j, i);
            int sign = (alg.parity(i) && alg.parity(j)) ? 1 : -1;
            // [x,y] + (-1)^{p(x)p(y)} [y,x] = 0
            SV sum = xy;
            sv_add_scaled(sum, yx, F->from_int(-sign));
            if (!sum.empty()) {
                rep.fail("anticommutativity fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
                return;
            }
            if (i == j && p != 2 && alg.parity(i) == 0 && !xy.empty()) {
                rep.fail("[x,x] != 0 for even basis element " + std::to_string(i));
                return;
            }
            if (i == j && p == 2 && !xy.empty()) {
                rep.fail("[x,x] != 0 in characteristic 2 at " + std::to_string(i));
                return;
            }
        }
}

template <class Alg>
void check_jacobi(const Alg& alg, AxiomReport& rep) {
    const FieldSpec* F = alg.field();
    int n = alg.dim();
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            SV ab = alg.bracket_basis(a, b);
            for (int c = b; c < n; ++c) {
                // [a,[b,c]] = [[a,b],c] + (-1)^{p_a p_b} [b,[a,c]]
                SV lhs = bracket_sv(alg, sv_unit(a, F->one()), alg.bracket_basis(b, c));
                SV rhs = bracket_sv(alg, ab, sv_unit(c, F->one()));
                SV t = bracket_sv(alg, sv_unit(b, F->one()), alg.bracket_basis(a, c));
                int sign = (alg.parity(a) && alg.parity(b)) ? -1 : 1;
                sv_add_scaled(rhs, t, F->from_int(sign));
                sv_add_scaled(lhs, rhs, F->from_int(-1));
                if (!lhs.empty()) {
                    rep.fail("Jacobi fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                             std::to_string(c) + ")");
                    return;
                }
            }
        }
}

// [x^2, y] = [x, [x, y]] for every odd basis x and every basis y (p = 2).
template <class Alg>
void check_squaring_jacobi(const Alg& alg, AxiomReport& rep) {
    if (!alg.has_squaring()) return;
    const FieldSpec* F = alg.field();
    for (int x = 0; x < alg.dim(); ++x) {
        if (!alg.parity(x)) continue;
        SV q = alg.squaring_basis(x);
        for (int y = 0; y < alg.dim(); ++y) {
            SV lhs = bracket_sv(alg, q, sv_unit(y, F->one()));
            SV rhs = bracket_sv(alg, sv_unit(x, F->one()), alg.bracket_basis(x, y));
            sv_add_scaled(lhs, rhs, F->from_int(-1));
            if (!lhs.empty()) {
                rep.fail("squaring Jacobi fails at x=" + std::to_string(x) + ", y=" + std::to_string(y));
                return;
            }
        }
    }
}

// (a x)^2 = a^2 x^2 on sampled scalars, and polarization consistency.
template <class Alg>
void check_squaring_homogeneity(const Alg& alg, AxiomReport& rep) {
    if (!alg.has_squaring()) return;
    const FieldSpec* F = alg.field();
    std::vector<FieldElement> scalars;
    if (F->order() > 0 && F->order() <= 9)
        scalars = F->all_elements();
    else
        for (long s : {0, 1, 2, 3}) scalars.push_back(F->from_int(s));
    for (int x = 0; x < alg.dim() && x < 40; ++x) {
        if (!alg.parity(x)) continue;
        for (const auto& a : scalars) {
            SV lhs = squaring_sv(alg, sv_scale(sv_unit(x, F->one()), a));
            SV rhs = sv_scale(alg.squaring_basis(x), a * a);
            sv_add_scaled(lhs, rhs, F->from_int(-1));
            if (!lhs.empty()) {
                rep.fail("squaring homogeneity fails at x=" + std::to_string(x));
                return;
            }
        }
    }
}

template <class Alg>
AxiomReport check_axioms(const Alg& alg, bool full_jacobi = true) {
    AxiomReport rep;
    check_anticommutativity(alg, rep);
    if (rep.ok && full_jacobi) check_jacobi(alg, rep);
    if (rep.ok) check_squaring_jacobi(alg, rep);
    if (rep.ok) check_squaring_homogeneity(alg, rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Subspaces, derived series, center, fingerprints

// Echelonized span of sparse vectors over the algebra's basis.
class Span {
  public:
    Span(const FieldSpec* field, int width) : field_(field), width_(width) {}

    bool insert(const SV& v) {
        std::vector<FieldElement> d(width_, field_->zero());
        for (const auto& [i, c] : v) d[i] = c;
        return insert_dense(std::move(d));
    }
    bool insert_dense(std::vector<FieldElement> d) {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const FieldElement& c = d[lead_[r]];
            if (c.is_zero()) continue;
            FieldElement f = c;
            const auto& row = rows_[r];
            for (int j = lead_[r]; j < width_; ++j)
                if (!row[j].is_zero()) d[j] = d[j] - f * row[j];
        }
        int lead = -1;
        for (int j = 0; j < width_; ++j)
            if (!d[j].is_zero()) {
                lead = j;
                break;
            }
        if (lead < 0) return false;
        FieldElement inv = d[lead].inverse();
        for (int j = lead; j < width_; ++j)
            if (!d[j].is_zero()) d[j] = d[j] * inv;
        // keep rows sorted by leading index for cheap membership tests
        size_t pos = 0;
        while (pos < lead_.size() && lead_[pos] < lead) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(d));
        lead_.insert(lead_.begin() + pos, lead);
        return true;
    }
    bool contains(const SV& v) const {
        std::vector<FieldElement> d(width_, field_->zero());
        for (const auto& [i, c] : v) d[i] = c;
        for (size_t r = 0; r < rows_.size(); ++r) {
            const FieldElement& c = d[lead_[r]];
            if (c.is_zero()) continue;
            FieldElement f = c;
            for (int j = lead_[r]; j < width_; ++j)
                if (!rows_[r][j].is_zero()) d[j] = d[j] - f * rows_[r][j];
        }
        for (const auto& x : d)
            if (!x.is_zero()) return false;
        return true;
    }
    int dim() const { return int(rows_.size()); }
    std::vector<SV> basis() const {
        std::vector<SV> out;
        for (const auto& row : rows_) {
            SV v;
            for (int j = 0; j < width_; ++j)
                if (!row[j].is_zero()) v.emplace_back(j, row[j]);
            out.push_back(std::move(v));
        }
        return out;
    }

  private:
    const FieldSpec* field_;
    int width_;
    std::vector<std::vector<FieldElement>> rows_;
    std::vector<int> lead_;
};

template <class Alg>
std::pair<int, int> span_sdim(const Alg& alg, const Span& s) {
    // Basis vectors of a graded subspace are parity-homogeneous whenever the
    // algebra's basis ordering groups parities; count via leading entries.
    int even = 0, odd = 0;
    for (const auto& v : s.basis()) {
        bool o = alg.parity(v.front().first);
        (o ? odd : even)++;
    }
    return {even, odd};
}

// g' = [S, S] + span{q(s) : s in S odd}, intersected implicitly with S by
// construction when S is a subalgebra.
template <class Alg>
Span derived_span(const Alg& alg, const std::vector<SV>& gens) {
    Span out(alg.field(), alg.dim());
    for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].empty()) continue;
        for (size_t j = i + 1; j < gens.size(); ++j) out.insert(bracket_sv(alg, gens[i], gens[j]));
        bool odd = alg.parity(gens[i].front().first);
        if (odd) {
            if (alg.has_squaring())
                out.insert(squaring_sv(alg, gens[i]));
            else
                out.insert(bracket_sv(alg, gens[i], gens[i])); // [x,x], p != 2
        }
    }
    return out;
}

template <class Alg>
std::vector<SV> whole_algebra_basis(const Alg& alg) {
    std::vector<SV> gens;
    for (int i = 0; i < alg.dim(); ++i) gens.push_back(sv_unit(i, alg.field()->one()));
    return gens;
}

// Center of the span S inside itself: x in S with [x, s] = 0 for all s in S.
template <class Alg>
Span center_of(const Alg& alg, const std::vector<SV>& sub_basis) {
    const FieldSpec* F = alg.field();
    int m = int(sub_basis.size());
    // constraint matrix: rows indexed by (generator s, coordinate), columns by
    // the sub-basis coefficients
    Matrix M(F, m * alg.dim(), m);
    int rowblock = 0;
    for (int s = 0; s < m; ++s) {
        for (int x = 0; x < m; ++x) {
            SV b = bracket_sv(alg, sub_basis[x], sub_basis[s]);
            for (const auto& [i, c] : b) M.set(rowblock + i, x, M.get(rowblock + i, x) + c);
        }
        rowblock += alg.dim();
    }
    auto ker = kernel_basis(M);
    Span out(F, alg.dim());
    for (const auto& coeffs : ker) {
        SV v;
        for (int x = 0; x < m; ++x) sv_add_scaled(v, sub_basis[x], coeffs[x]);
        out.insert(v);
    }
    return out;
}

struct IsoFingerprint {
    std::pair<int, int> sdim;
    std::vector<std::pair<int, int>> derived_sdims; // g^(1), g^(2), ...
    int center_dim = 0;
    std::pair<int, int> abelianization_sdim; // g / g^(1)

    bool operator==(const IsoFingerprint& o) const {
        return sdim == o.sdim && derived_sdims == o.derived_sdims && center_dim == o.center_dim &&
               abelianization_sdim == o.abelianization_sdim;
    }
    std::string str() const {
        std::ostringstream out;
        out << "sdim " << sdim.first << "|" << sdim.second << "; derived:";
        for (auto [e, o2] : derived_sdims) out << " " << e << "|" << o2;
        out << "; center " << center_dim << "; g/g' " << abelianization_sdim.first << "|"
            << abelianization_sdim.second;
        return out.str();
    }
};

// Structured invariants: equal fingerprints are inconclusive, different ones
// certify non-isomorphism.
template <class Alg>
IsoFingerprint iso_fingerprint(const Alg& alg) {
    IsoFingerprint fp;
    int even = 0, odd = 0;
    for (int i = 0; i < alg.dim(); ++i) (alg.parity(i) ? odd : even)++;
    fp.sdim = {even, odd};
    std::vector<SV> current = whole_algebra_basis(alg);
    for (int step = 0; step < 3; ++step) {
        Span d = derived_span(alg, current);
        auto sd = span_sdim(alg, d);
        if (!fp.derived_sdims.empty() && fp.derived_sdims.back() == sd) break;
        fp.derived_sdims.push_back(sd);
        current = d.basis();
        if (d.dim() == 0) break;
    }
    fp.center_dim = center_of(alg, whole_algebra_basis(alg)).dim();
    auto d1 = fp.derived_sdims.empty() ? fp.sdim : fp.derived_sdims.front();
    fp.abelianization_sdim = {fp.sdim.first - d1.first, fp.sdim.second - d1.second};
    return fp;
}

// Derived series stabilized at i <= 2, then quotient by the center of the
// stable term: the "simple core" sdim.
template <class Alg>
std::pair<std::pair<int, int>, int> simple_core_sdim(const Alg& alg) {
    std::vector<SV> cur = whole_algebra_basis(alg);
    int i = 0;
    for (; i < 2; ++i) {
        Span d = derived_span(alg, cur);
        if (d.dim() == int(cur.size())) break;
        cur = d.basis();
    }
    Span c = center_of(alg, cur);
    Span s(alg.field(), alg.dim());
    for (const auto& v : cur) s.insert(v);
    auto sd = span_sdim(alg, s);
    auto csd = span_sdim(alg, c);
    return {{sd.first - csd.first, sd.second - csd.second}, i};
}

} // namespace modchev
