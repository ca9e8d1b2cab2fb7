#pragma once

// The contragredient construction: g(A, I) built degree by degree as the
// quotient of the free algebra on Chevalley generators by the maximal
// homogeneous ideal meeting the Cartan subalgebra trivially.  An element of
// degree alpha dies exactly when all its f-images die, so each degree block
// is span(candidates) / ker(f-action), which is the radical of the
// contravariant pairing in that degree.

#include <array>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "algebra.hpp"
#include "cartan.hpp"
#include "sparsela.hpp"

namespace modchev {

struct HeightCapExceeded : std::runtime_error {
    explicit HeightCapExceeded(int cap)
        : std::runtime_error("algebra did not close by height " + std::to_string(cap)) {}
};
struct ReflectionInadmissible : std::runtime_error {
    explicit ReflectionInadmissible(const std::string& what) : std::runtime_error(what) {}
};

using Degree = std::vector<int>;

struct Root {
    Degree degree;
    int parity;
    int dim;
};

struct BuildOptions {
    int max_height = 64;
    int check_level = -1; // -1: auto (2 for small builds, 1 for large)
    bool partial = false; // stop silently at max_height (used by reflections)
};

class GAlgebra {
  public:
    GAlgebra(const CartanSpec& spec, BuildOptions opts = {}) : a_(spec), opts_(opts) {
        F_ = spec.field();
        n_ = spec.size();
        p_ = spec.p();
        build();
    }

    // --- shape ------------------------------------------------------------
    const CartanSpec& source() const { return a_; }
    const FieldSpec* field() const { return F_; }
    int rank_n() const { return n_; }
    int deficiency() const { return l_; }
    int cartan_dim() const { return n_ + l_; }
    int positive_dim() const { return int(pos_.size()); }
    int dim() const { return cartan_dim() + 2 * positive_dim(); }
    bool has_squaring() const { return p_ == 2; }

    std::pair<int, int> sdim() const {
        int even = cartan_dim(), odd = 0;
        for (const auto& b : blocks_) (b.par ? odd : even) += 2 * int(b.words.size());
        // the loop counted both halves
        return {even, odd};
    }

    std::vector<Root> roots() const {
        std::vector<Root> out;
        for (const auto& b : blocks_) out.push_back({b.deg, b.par, int(b.words.size())});
        for (const auto& b : blocks_) {
            Degree neg = b.deg;
            for (auto& x : neg) x = -x;
            out.push_back({neg, b.par, int(b.words.size())});
        }
        return out;
    }
    std::map<Degree, int> positive_dims() const {
        std::map<Degree, int> out;
        for (const auto& b : blocks_) out[b.deg] = int(b.words.size());
        return out;
    }

    // --- basis roles --------------------------------------------------------
    int h_index(int i) const { return i; }
    int d_index(int k) const { return n_ + k; }
    int e_index(int i) const { return cartan_dim() + block_of_gen_[i]; }
    int f_index(int i) const { return e_index(i) + positive_dim(); }
    bool is_cartan(int g) const { return g < cartan_dim(); }
    bool is_positive(int g) const { return g >= cartan_dim() && g < cartan_dim() + positive_dim(); }
    bool is_negative(int g) const { return g >= cartan_dim() + positive_dim(); }

    int parity(int g) const {
        if (g < cartan_dim()) return 0;
        int u = (g - cartan_dim()) % positive_dim();
        return blocks_[pos_[u].first].par;
    }
    Degree degree_of(int g) const {
        if (g < cartan_dim()) return Degree(n_, 0);
        int u = (g - cartan_dim());
        bool neg = u >= positive_dim();
        if (neg) u -= positive_dim();
        Degree d = blocks_[pos_[u].first].deg;
        if (neg)
            for (auto& x : d) x = -x;
        return d;
    }

    std::string basis_name(int g) const {
        if (g < n_) return "h" + std::to_string(g + 1);
        if (g < cartan_dim()) return "d" + std::to_string(g - n_ + 1);
        int u = g - cartan_dim();
        bool neg = u >= positive_dim();
        if (neg) u -= positive_dim();
        return word_name(u, neg);
    }

    // --- structure ----------------------------------------------------------
    SV bracket_basis(int ga, int gb) const {
        int P = positive_dim(), C = cartan_dim();
        if (ga < C && gb < C) return {};
        if (ga < C) return sv_scale(sv_unit(gb, F_->one()), weight_unit(ga, degree_of(gb)));
        if (gb < C) return sv_scale(sv_unit(ga, F_->one()), -weight_unit(gb, degree_of(ga)));
        bool na = ga >= C + P, nb = gb >= C + P;
        int u = ga - C - (na ? P : 0), v = gb - C - (nb ? P : 0);
        if (!na && !nb) return pos_pos_global(u, v);
        if (na && nb) return mirror_sv(pos_pos_global(u, v));
        if (!na && nb) return mixed(u, v);
        // [sigma(u), v] = -(-1)^{p_u p_v} [v, sigma(u)]
        return sv_scale(mixed(v, u), F_->from_int(-sign_of(parity_pos(u), parity_pos(v))));
    }

    SV pos_pos_global(int u, int v) const {
        Degree d = degree_sum(u, v);
        auto it = block_index_.find(d);
        if (it == block_index_.end()) return {};
        return globalize_block_local(it->second, bracket_pos(u, v));
    }

    SV squaring_basis(int g) const {
        if (p_ != 2) throw WrongCharacteristic("squaring lives in characteristic 2");
        if (g < cartan_dim()) return {};
        int u = g - cartan_dim();
        bool neg = u >= positive_dim();
        if (neg) u -= positive_dim();
        if (!parity_pos(u)) return {};
        SV q = square_pos_global(u);
        for (auto& [i, c] : q) i += cartan_dim();
        return neg ? mirror_sv(q) : q;
    }

    // h-space vectors c_i with [c_i, e_j] = 0 (rows of T with TA = 0).
    std::vector<SV> central_elements() const {
        Matrix At(F_, n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) At.set(i, j, a_.entry(j, i));
        auto ker = kernel_basis(At);
        std::vector<SV> out;
        for (const auto& v : ker) {
            SV c;
            for (int j = 0; j < n_; ++j)
                if (!v[j].is_zero()) c.emplace_back(h_index(j), v[j]);
            out.push_back(std::move(c));
        }
        return out;
    }

    Matrix completion_B() const {
        Matrix B(F_, l_, n_);
        for (int k = 0; k < l_; ++k) B.set(k, completion_cols_[k], F_->one());
        return B;
    }

    std::string dump() const;

    // single positive root vector at a 1-dimensional degree block, if any
    std::optional<int> root_vector(const Degree& d) const {
        auto it = block_index_.find(d);
        if (it == block_index_.end()) return std::nullopt;
        const Block& b = blocks_[it->second];
        if (b.words.size() != 1) return std::nullopt;
        return cartan_dim() + b.offset;
    }
    int block_dim(const Degree& d) const {
        auto it = block_index_.find(d);
        return it == block_index_.end() ? 0 : int(blocks_[it->second].words.size());
    }

    // weight of an h-space sparse vector (global cartan ids) on a degree
    FieldElement weight(const SV& h, const Degree& d) const {
        FieldElement out = F_->zero();
        for (const auto& [idx, c] : h) out += c * weight_unit(idx, d);
        return out;
    }

  private:
    struct Word {
        int kind; // 0 generator, 1 bracket [e_gen, child], 2 square(child)
        int gen;
        int child; // global positive index
    };
    struct Block {
        Degree deg;
        int height;
        int par;
        int offset; // first global positive index
        std::vector<Word> words;
        // f_act[t][j]: [f_j, basis_t]; heights >= 2: local SV over
        // block(deg - eps_j); height 1: SV over cartan ids.
        std::vector<std::vector<SV>> f_act;
        // e_act[t][i]: [e_i, basis_t] as local SV over block(deg + eps_i).
        std::vector<std::vector<SV>> e_act;
    };

    // ----- build ------------------------------------------------------------
    void build() {
        // completion of A to rank n
        Matrix A(F_, n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) A.set(i, j, a_.entry(i, j));
        auto rr = rref(A);
        l_ = n_ - rr.rank;
        std::set<int> piv(rr.pivot_cols.begin(), rr.pivot_cols.end());
        for (int c = 0; c < n_ && int(completion_cols_.size()) < l_; ++c)
            if (!piv.count(c)) completion_cols_.push_back(c);

        // height-1 blocks
        block_of_gen_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            Degree d(n_, 0);
            d[i] = 1;
            Block b;
            b.deg = d;
            b.height = 1;
            b.par = a_.parity(i);
            b.offset = int(pos_.size());
            b.words.push_back({0, i, -1});
            b.f_act.push_back(std::vector<SV>(n_));
            // [f_i, e_i] = -(-1)^{p_i} h_i
            b.f_act[0][i] = sv_unit(h_index(i), F_->from_int(a_.parity(i) ? 1 : -1));
            b.e_act.push_back(std::vector<SV>(n_));
            int id = int(blocks_.size());
            block_index_[d] = id;
            blocks_.push_back(std::move(b));
            pos_.emplace_back(id, 0);
            block_of_gen_[i] = blocks_[id].offset;
            push_frontier(d);
        }
        // process heights in order
        std::map<int, std::set<Degree>> pending;
        for (auto& d : frontier_) pending[height_of(d)].insert(d);
        frontier_.clear();
        int h = 2;
        while (!pending.empty()) {
            auto it = pending.begin();
            if (it->first < h) {
                pending.erase(it);
                continue;
            }
            h = it->first;
            if (h > opts_.max_height) {
                if (opts_.partial) break;
                throw HeightCapExceeded(opts_.max_height);
            }
            std::set<Degree> degs = std::move(it->second);
            pending.erase(it);
            for (const auto& d : degs) process_degree(d);
            for (auto& d : frontier_) {
                int hh = height_of(d);
                if (hh > h) pending[hh].insert(d);
            }
            frontier_.clear();
        }
    }

    static int height_vec(const Degree& d) {
        int s = 0;
        for (int x : d) s += x;
        return s;
    }
    int height_of(const Degree& d) const { return height_vec(d); }

    void push_frontier(const Degree& d) {
        for (int i = 0; i < n_; ++i) {
            Degree e = d;
            e[i] += 1;
            frontier_.push_back(std::move(e));
        }
        if (p_ == 2) {
            auto it = block_index_.find(d);
            if (it != block_index_.end() && blocks_[it->second].par) {
                Degree e = d;
                for (auto& x : e) x *= 2;
                frontier_.push_back(std::move(e));
            }
        }
    }

    int sign_of(int pa, int pb) const { return (pa && pb) ? -1 : 1; }

    void process_degree(const Degree& alpha) {
        if (block_index_.count(alpha)) return;
        int h = height_of(alpha);
        int par = 0;
        for (int i = 0; i < n_; ++i) par ^= (alpha[i] & 1) & a_.parity(i);

        // width layout over the f-targets
        std::vector<int> tgt_block(n_, -1), tgt_off(n_, 0);
        int width = 0;
        for (int j = 0; j < n_; ++j) {
            if (alpha[j] == 0) continue;
            Degree d = alpha;
            d[j] -= 1;
            auto it = block_index_.find(d);
            if (it == block_index_.end()) continue;
            tgt_block[j] = it->second;
            tgt_off[j] = width;
            width += int(blocks_[it->second].words.size());
        }
        if (width == 0 && h > 1) {
            // no live f-targets: with no way down, every candidate dies
            return;
        }

        struct Cand {
            Word w;
            std::vector<SV> fcols; // per j, local SV over target block
        };
        std::vector<Cand> cands;

        // bracket candidates [e_i, u]
        for (int i = 0; i < n_; ++i) {
            if (alpha[i] == 0) continue;
            Degree beta = alpha;
            beta[i] -= 1;
            auto it = block_index_.find(beta);
            if (it == block_index_.end()) continue;
            const Block& src = blocks_[it->second];
            for (int t = 0; t < int(src.words.size()); ++t) {
                // [e_i, e_i] vanishes identically unless p != 2 and e_i is odd
                if (h == 2 && src.words[t].gen == i && (p_ == 2 || a_.parity(i) == 0)) continue;
                Cand c;
                c.w = {1, i, src.offset + t};
                c.fcols.assign(n_, {});
                for (int j = 0; j < n_; ++j) {
                    if (tgt_block[j] < 0) continue;
                    SV col;
                    // [[f_j, e_i], u] = -(-1)^{p_i p_j} delta_ij wt(h_i, beta) u;
                    // for j == i the target block is u's own block, local index t
                    if (j == i) {
                        FieldElement w = F_->from_int(-sign_of(a_.parity(i), a_.parity(j))) *
                                         weight_unit(h_index(i), beta);
                        if (!w.is_zero()) col = sv_unit(t, w);
                    }
                    // (-1)^{p_i p_j} [e_i, [f_j, u]]
                    const SV& fj = src.f_act[t][j];
                    if (!fj.empty()) {
                        SV term;
                        if (src.height == 1) {
                            // f_j(u) is an h-vector; [e_i, h] = -wt(h, eps_i) e_i
                            Degree ei(n_, 0);
                            ei[i] = 1;
                            FieldElement w = -weight(fj, ei);
                            if (!w.is_zero()) {
                                // e_i sits in block(eps_i) - the f-target for j
                                term = sv_scale(sv_unit(0, F_->one()), w);
                            }
                        } else {
                            Degree gsrc = beta;
                            gsrc[j] -= 1;
                            int gblk = block_index_.at(gsrc);
                            term = apply_e_local(gblk, i, fj);
                        }
                        if (!term.empty())
                            sv_add_scaled(col, term, F_->from_int(sign_of(a_.parity(i), a_.parity(j))));
                    }
                    c.fcols[j] = std::move(col);
                }
                cands.push_back(std::move(c));
            }
        }
        // squaring candidates q(w), p = 2, alpha = 2 beta
        if (p_ == 2) {
            bool even_alpha = true;
            Degree beta(n_, 0);
            for (int i = 0; i < n_; ++i) {
                if (alpha[i] % 2) even_alpha = false;
                beta[i] = alpha[i] / 2;
            }
            if (even_alpha) {
                auto it = block_index_.find(beta);
                if (it != block_index_.end() && blocks_[it->second].par == 1) {
                    const Block& src = blocks_[it->second];
                    for (int t = 0; t < int(src.words.size()); ++t) {
                        Cand c;
                        c.w = {2, 0, src.offset + t};
                        c.fcols.assign(n_, {});
                        for (int j = 0; j < n_; ++j) {
                            if (tgt_block[j] < 0) continue;
                            const SV& fj = src.f_act[t][j];
                            if (fj.empty()) continue;
                            SV col;
                            if (src.height == 1) {
                                // q(e_m): [f_j, q] = [e_m, [e_m, f_j]] = A_mm e_m
                                int m = src.words[t].gen;
                                Degree em(n_, 0);
                                em[m] = 1;
                                FieldElement w = weight(fj, em); // = A_mm when j == m
                                if (!w.is_zero()) col = sv_scale(sv_unit(0, F_->one()), w);
                            } else {
                                // [w, [f_j, w]] summed over components
                                for (const auto& [b, cf] : fj) {
                                    Degree gsrc = beta;
                                    gsrc[j] -= 1;
                                    int gblk = block_index_.at(gsrc);
                                    SV t2 = bracket_pos_local(it->second, t, gblk, b);
                                    sv_add_scaled(col, t2, cf);
                                }
                            }
                            c.fcols[j] = std::move(col);
                        }
                        cands.push_back(std::move(c));
                    }
                }
            }
        }
        if (cands.empty()) return;

        // eliminate
        Eliminator el(F_, width);
        std::vector<int> pivot_of_cand(cands.size(), -1);
        std::vector<std::vector<FieldElement>> expansions(cands.size());
        std::vector<int> pivots;
        for (size_t c = 0; c < cands.size(); ++c) {
            std::vector<FieldElement> row(width, F_->zero());
            for (int j = 0; j < n_; ++j) {
                if (tgt_block[j] < 0) continue;
                for (const auto& [loc, v] : cands[c].fcols[j]) row[tgt_off[j] + loc] = v;
            }
            auto [fresh, combo] = el.feed(std::move(row));
            if (fresh) {
                pivot_of_cand[c] = int(pivots.size());
                pivots.push_back(int(c));
            } else {
                expansions[c] = std::move(combo);
            }
        }
        if (pivots.empty()) {
            // remember the zero outcome implicitly (no block); still record
            // e_act on sources as zero, which is the default
            record_expansions(alpha, cands, pivot_of_cand, expansions, -1);
            return;
        }

        Block b;
        b.deg = alpha;
        b.height = h;
        b.par = par;
        b.offset = int(pos_.size());
        for (int pc : pivots) {
            b.words.push_back(cands[pc].w);
            std::vector<SV> fr(n_);
            for (int j = 0; j < n_; ++j) fr[j] = cands[pc].fcols[j];
            b.f_act.push_back(std::move(fr));
            b.e_act.push_back(std::vector<SV>(n_));
        }
        int id = int(blocks_.size());
        block_index_[alpha] = id;
        blocks_.push_back(std::move(b));
        for (int t = 0; t < int(blocks_[id].words.size()); ++t) pos_.emplace_back(id, t);
        record_expansions(alpha, cands, pivot_of_cand, expansions, id);
        push_frontier(alpha);
    }

    // write e_act entries on source blocks and the squaring table
    template <class CandVec>
    void record_expansions(const Degree& alpha, const CandVec& cands, const std::vector<int>& pivot_of_cand,
                           const std::vector<std::vector<FieldElement>>& expansions, int blockid) {
        for (size_t c = 0; c < cands.size(); ++c) {
            SV exp;
            if (pivot_of_cand[c] >= 0) {
                exp = sv_unit(pivot_of_cand[c], F_->one());
            } else {
                for (size_t s = 0; s < expansions[c].size(); ++s)
                    if (!expansions[c][s].is_zero()) exp.emplace_back(int(s), expansions[c][s]);
            }
            const Word& w = cands[c].w;
            int child_global = w.child;
            auto [srcblk, srcloc] = pos_[child_global];
            if (w.kind == 1) {
                blocks_[srcblk].e_act[srcloc][w.gen] = exp;
            } else {
                square_tab_[child_global] = exp;
                square_block_[child_global] = blockid;
            }
        }
    }

    // ----- weights ----------------------------------------------------------
    FieldElement weight_unit(int cartan_idx, const Degree& d) const {
        FieldElement out = F_->zero();
        for (int j = 0; j < n_; ++j) {
            if (d[j] == 0) continue;
            FieldElement col =
                cartan_idx < n_
                    ? a_.entry(cartan_idx, j)
                    : (completion_cols_[cartan_idx - n_] == j ? F_->one() : F_->zero());
            if (col.is_zero()) continue;
            out += F_->from_int(d[j]) * col;
        }
        return out;
    }

    // ----- local helpers ----------------------------------------------------
    int parity_pos(int u) const { return blocks_[pos_[u].first].par; }
    int height_pos(int u) const { return blocks_[pos_[u].first].height; }
    const Word& word_of(int u) const { return blocks_[pos_[u].first].words[pos_[u].second]; }
    const Degree& deg_pos(int u) const { return blocks_[pos_[u].first].deg; }

    SV apply_e_local(int srcblk, int i, const SV& local) const {
        // [e_i, x] for x a local SV of srcblk; result local over block(deg+eps_i)
        SV out;
        const Block& src = blocks_[srcblk];
        for (const auto& [t, c] : local) sv_add_scaled(out, src.e_act[t][i], c);
        return out;
    }

    // [u, v] for global positive ids; returns local SV over block(du+dv).
    SV bracket_pos_local(int ublk, int uloc, int vblk, int vloc) const {
        return bracket_pos(blocks_[ublk].offset + uloc, blocks_[vblk].offset + vloc);
    }

    // positive x positive bracket, result local SV over block(deg_u + deg_v)
    // (empty when that block is absent).
    SV bracket_pos(int u, int v) const {
        if (u == v && p_ == 2) return {};
        uint64_t key = (uint64_t(u) << 32) | uint64_t(v);
        auto it = pp_memo_.find(key);
        if (it != pp_memo_.end()) return it->second;
        SV out = bracket_pos_impl(u, v);
        pp_memo_.emplace(key, out);
        return out;
    }
    SV bracket_pos_impl(int u, int v) const {
        Degree target = deg_pos(u);
        const Degree& dv = deg_pos(v);
        for (int i = 0; i < n_; ++i) target[i] += dv[i];
        auto tb = block_index_.find(target);
        if (tb == block_index_.end()) return {};
        const Word& w = word_of(u);
        if (w.kind == 0) {
            auto [vb, vl] = pos_[v];
            return blocks_[vb].e_act[vl][w.gen];
        }
        if (w.kind == 2) {
            // [q(x), v] = [x, [x, v]]
            int x = w.child;
            SV inner = bracket_pos(x, v);
            return bracket_pos_global_local(x, target_block_minus(target, deg_pos(x)), inner);
        }
        // u = [e_i, u']: [u,v] = [e_i, [u',v]] - (-1)^{p_i p_{u'}} [u', [e_i, v]]
        int i = w.gen;
        int u2 = w.child;
        SV t1;
        {
            SV inner = bracket_pos(u2, v); // local over block(du' + dv)
            Degree d = deg_pos(u2);
            for (int j = 0; j < n_; ++j) d[j] += dv[j];
            auto ib = block_index_.find(d);
            if (ib != block_index_.end()) t1 = apply_e_local(ib->second, i, inner);
        }
        SV t2;
        {
            auto [vb, vl] = pos_[v];
            const SV& eiv = blocks_[vb].e_act[vl][i]; // local over block(dv + eps_i)
            if (!eiv.empty()) {
                Degree d = dv;
                d[i] += 1;
                int blk = block_index_.at(d);
                for (const auto& [t, c] : eiv) {
                    SV term = bracket_pos(u2, blocks_[blk].offset + t);
                    sv_add_scaled(t2, term, c);
                }
            }
        }
        int sign = sign_of(a_.parity(i), parity_pos(u2));
        sv_add_scaled(t1, t2, F_->from_int(-sign));
        return t1;
    }
    int target_block_minus(const Degree& total, const Degree& part) const {
        Degree d = total;
        for (int i = 0; i < n_; ++i) d[i] -= part[i];
        auto it = block_index_.find(d);
        return it == block_index_.end() ? -1 : it->second;
    }
    // [x, inner] where x is a global positive id and inner is local over blk
    SV bracket_pos_global_local(int x, int blk, const SV& inner) const {
        SV out;
        if (blk < 0) return out;
        for (const auto& [t, c] : inner) {
            SV term = bracket_pos(x, blocks_[blk].offset + t);
            sv_add_scaled(out, term, c);
        }
        return out;
    }

    Degree degree_sum(int u, int v) const {
        Degree d = deg_pos(u);
        const Degree& dv = deg_pos(v);
        for (int i = 0; i < n_; ++i) d[i] += dv[i];
        return d;
    }

    // q(u) as a sparse vector over global-positive indices (before the
    // cartan shift).
    SV square_pos_global(int u) const {
        auto it = square_tab_.find(u);
        if (it == square_tab_.end()) return {};
        int blk = square_block_.at(u);
        if (blk < 0) return {};
        SV out;
        for (const auto& [t, c] : it->second) out.emplace_back(blocks_[blk].offset + t, c);
        return out;
    }

    // ----- globalization ----------------------------------------------------
    SV mirror_sv(SV global) const {
        int P = positive_dim(), C = cartan_dim();
        for (auto& [i, c] : global) {
            if (i >= C + P)
                i -= P;
            else if (i >= C)
                i += P;
        }
        std::sort(global.begin(), global.end());
        return global;
    }

    // bracket_pos returns block-local SVs; for global assembly:
    SV globalize_block_local(int blk, const SV& local) const {
        SV out;
        out.reserve(local.size());
        for (const auto& [t, c] : local) out.emplace_back(cartan_dim() + blocks_[blk].offset + t, c);
        return out;
    }

  public:
    // [u, sigma(v)] for positive ids u, v; returns a global SV.
    SV mixed(int u, int v) const {
        uint64_t key = (uint64_t(u) << 32) | uint64_t(v);
        auto it = mixed_memo_.find(key);
        if (it != mixed_memo_.end()) return it->second;
        SV out = mixed_impl(u, v);
        mixed_memo_.emplace(key, out);
        return out;
    }

  private:
    SV mixed_impl(int u, int v) const {
        int C = cartan_dim(), P = positive_dim();
        const Word& wu = word_of(u);
        const Word& wv = word_of(v);
        if (height_pos(u) == 1 && height_pos(v) == 1) {
            if (wu.gen == wv.gen) return sv_unit(h_index(wu.gen), F_->one());
            return {};
        }
        if (height_pos(v) == 1) {
            // [u, f_j] = -(-1)^{p_u p_j} [f_j, u]
            int j = wv.gen;
            auto [ub, ul] = pos_[u];
            const SV& fj = blocks_[ub].f_act[ul][j];
            int sign = sign_of(parity_pos(u), a_.parity(j));
            Degree d = deg_pos(u);
            d[j] -= 1;
            auto tb = block_index_.find(d);
            if (tb == block_index_.end() || fj.empty()) return {};
            return sv_scale(globalize_block_local(tb->second, fj), F_->from_int(-sign));
        }
        if (height_pos(u) == 1) {
            // [e_i, sigma(v)] = (-1)^{p_i} sigma([f_i, v])
            int i = wu.gen;
            auto [vb, vl] = pos_[v];
            const SV& fi = blocks_[vb].f_act[vl][i];
            Degree d = deg_pos(v);
            d[i] -= 1;
            auto tb = block_index_.find(d);
            if (tb == block_index_.end() || fi.empty()) return {};
            SV pos = globalize_block_local(tb->second, fi);
            int sign = a_.parity(i) ? -1 : 1;
            return sv_scale(mirror_sv(pos), F_->from_int(sign));
        }
        if (wu.kind == 2) {
            // [q(x), sigma v] = [x, [x, sigma v]]
            int x = wu.child;
            return gbracket_pos_global(x, mixed(x, v));
        }
        // u = [e_i, u']
        int i = wu.gen;
        int u2 = wu.child;
        SV m1 = mixed(u2, v);
        SV t1 = gbracket_gen_global(i, m1);
        // second Jacobi term: [u', [e_i, sigma v]] with
        // [e_i, sigma v] = (-1)^{p_i} sigma(F_i(v))
        SV t2;
        {
            auto [vb, vl] = pos_[v];
            const SV& fi = blocks_[vb].f_act[vl][i];
            if (!fi.empty()) {
                Degree d = deg_pos(v);
                d[i] -= 1;
                auto tb = block_index_.find(d);
                if (tb != block_index_.end()) {
                    SV eis = sv_scale(mirror_sv(globalize_block_local(tb->second, fi)),
                                      F_->from_int(a_.parity(i) ? -1 : 1));
                    for (const auto& [gidx, c] : eis) {
                        int w = gidx - C - P; // negative component sigma(w)
                        sv_add_scaled(t2, mixed(u2, w), c);
                    }
                }
            }
        }
        int sign = sign_of(a_.parity(i), parity_pos(u2));
        sv_add_scaled(t1, t2, F_->from_int(-sign));
        return t1;
    }

    // [e_i, X] for a global SV X
    SV gbracket_gen_global(int i, const SV& x) const {
        int C = cartan_dim(), P = positive_dim();
        SV out;
        Degree ei(n_, 0);
        ei[i] = 1;
        for (const auto& [g, c] : x) {
            if (g < C) {
                // [e_i, h] = -wt(h, eps_i) e_i
                FieldElement w = -weight_unit(g, ei);
                if (!w.is_zero()) sv_add_scaled(out, sv_unit(e_index(i), F_->one()), c * w);
            } else if (g < C + P) {
                int v = g - C;
                auto [vb, vl] = pos_[v];
                const SV& e = blocks_[vb].e_act[vl][i];
                if (!e.empty()) {
                    Degree d = deg_pos(v);
                    d[i] += 1;
                    sv_add_scaled(out, globalize_block_local(block_index_.at(d), e), c);
                }
            } else {
                int v = g - C - P;
                if (height_pos(v) == 1) {
                    if (word_of(v).gen == i) sv_add_scaled(out, sv_unit(h_index(i), F_->one()), c);
                } else {
                    auto [vb, vl] = pos_[v];
                    const SV& fi = blocks_[vb].f_act[vl][i];
                    if (!fi.empty()) {
                        Degree d = deg_pos(v);
                        d[i] -= 1;
                        auto tb = block_index_.find(d);
                        if (tb != block_index_.end()) {
                            SV t = sv_scale(mirror_sv(globalize_block_local(tb->second, fi)),
                                            F_->from_int(a_.parity(i) ? -1 : 1));
                            sv_add_scaled(out, t, c);
                        }
                    }
                }
            }
        }
        return out;
    }

    // [x, X] for positive basis id x and global SV X
    SV gbracket_pos_global(int x, const SV& X) const {
        int C = cartan_dim(), P = positive_dim();
        SV out;
        for (const auto& [g, c] : X) {
            if (g < C) {
                FieldElement w = -weight_unit(g, deg_pos(x));
                if (!w.is_zero()) sv_add_scaled(out, sv_unit(C + x, F_->one()), c * w);
            } else if (g < C + P) {
                int v = g - C;
                Degree d = deg_pos(x);
                const Degree& dv = deg_pos(v);
                for (int j = 0; j < n_; ++j) d[j] += dv[j];
                auto tb = block_index_.find(d);
                if (tb == block_index_.end()) continue;
                sv_add_scaled(out, globalize_block_local(tb->second, bracket_pos(x, v)), c);
            } else {
                sv_add_scaled(out, mixed(x, g - C - P), c);
            }
        }
        return out;
    }

    std::string word_name(int u, bool neg) const {
        const Word& w = word_of(u);
        char gc = neg ? 'f' : 'e';
        if (w.kind == 0) return std::string(1, gc) + std::to_string(w.gen + 1);
        if (w.kind == 2) return "sq(" + word_name(w.child, neg) + ")";
        return "[" + std::string(1, gc) + std::to_string(w.gen + 1) + "," +
               word_name(w.child, neg) + "]";
    }

    CartanSpec a_;
    BuildOptions opts_;
    const FieldSpec* F_;
    int n_ = 0, l_ = 0;
    long p_ = 0;
    std::vector<int> completion_cols_;
    std::vector<Degree> frontier_;
    std::vector<Block> blocks_;
    std::map<Degree, int> block_index_;
    std::vector<std::pair<int, int>> pos_; // global positive -> (block, local)
    std::vector<int> block_of_gen_;
    std::map<int, SV> square_tab_;   // positive id -> local SV over square_block_
    std::map<int, int> square_block_;
    mutable std::map<uint64_t, SV> pp_memo_;
    mutable std::map<uint64_t, SV> mixed_memo_;

    friend CartanSpec reflect(const GAlgebra&, int);
};

inline std::string GAlgebra::dump() const {
    std::ostringstream out;
    out << "field " << F_->name() << "\n";
    out << "cartan " << serialize_cm(a_);
    out << "basis " << dim() << "\n";
    for (int g = 0; g < dim(); ++g) {
        out << g << " " << basis_name(g) << " parity " << parity(g) << " degree";
        for (int x : degree_of(g)) out << " " << x;
        out << "\n";
    }
    out << "brackets\n";
    for (int a = 0; a < dim(); ++a)
        for (int b = a + 1; b < dim(); ++b) {
            SV v = bracket_basis(a, b);
            if (v.empty()) continue;
            out << basis_name(a) << " " << basis_name(b) << " ->";
            for (const auto& [i, c] : v) out << " " << c.str() << "*" << basis_name(i);
            out << "\n";
        }
    if (p_ == 2) {
        out << "squarings\n";
        for (int a = 0; a < dim(); ++a) {
            if (!parity(a)) continue;
            SV v = squaring_basis(a);
            if (v.empty()) continue;
            out << basis_name(a) << " ->";
            for (const auto& [i, c] : v) out << " " << c.str() << "*" << basis_name(i);
            out << "\n";
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Reflections

// Reflect the CM of the built algebra in an isotropic simple root k: the new
// Chevalley generators are root vectors at r_k(sigma_j), the new h'_j are
// their pairings with the mirrored generators, and the new matrix is read
// off from the weights.
inline CartanSpec reflect(const GAlgebra& alg, int k) {
    const CartanSpec& A = alg.source();
    int n = A.size();
    if (!A.entry(k, k).is_zero())
        throw ReflectionInadmissible("reflection not appropriate: A_kk != 0 at node " + std::to_string(k + 1));
    std::vector<long> m = reflection_exponents(A, k);
    const FieldSpec* F = A.field();

    // new simple-root degrees and root vectors
    std::vector<Degree> new_roots(n);
    std::vector<SV> hprime(n);
    std::vector<int> new_parity(n);
    for (int j = 0; j < n; ++j) {
        Degree d(n, 0);
        if (j == k) {
            d[k] = -1;
            new_roots[j] = d;
            new_parity[j] = A.parity(k);
            FieldElement s = F->from_int(A.parity(k) ? 1 : -1);
            hprime[j] = sv_scale(sv_unit(alg.h_index(k), F->one()), s);
            continue;
        }
        d[j] = 1;
        d[k] = int(m[j]);
        new_roots[j] = d;
        new_parity[j] = (A.parity(j) + int(m[j]) * A.parity(k)) % 2;
        if (m[j] == 0) {
            hprime[j] = sv_unit(alg.h_index(j), F->one());
            continue;
        }
        auto rv = alg.root_vector(d);
        if (!rv) {
            if (alg.block_dim(d) == 0)
                throw ReflectionInadmissible("reflected simple root is not a root of the algebra");
            throw ReflectionInadmissible("reflected simple root space is not one-dimensional");
        }
        int u = *rv - alg.cartan_dim();
        SV h = alg.mixed(u, u);
        for (const auto& [g, c] : h)
            if (g >= alg.cartan_dim()) throw ReflectionInadmissible("pairing of root vectors left the Cartan");
        hprime[j] = h;
    }
    std::vector<std::vector<FieldElement>> entries(n, std::vector<FieldElement>(n, F->zero()));
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) entries[j][l] = alg.weight(hprime[j], new_roots[l]);
    std::vector<DiagonalKind> kinds(n);
    long p = A.p();
    for (int j = 0; j < n; ++j) {
        bool zero = entries[j][j].is_zero();
        if (new_parity[j])
            kinds[j] = zero ? DiagonalKind::OddZero : DiagonalKind::OddOne;
        else if (zero)
            kinds[j] = DiagonalKind::EvZero;
        else
            kinds[j] = p == 2 ? DiagonalKind::EvOne : DiagonalKind::Two;
    }
    return CartanSpec(F, std::move(kinds), std::move(entries), A.param_name(), A.param_value());
}

inline CartanSpec reflect_cm(const CartanSpec& A, int k) {
    // height cap: reflected roots reach height 1 + max B_kj
    long cap = 2;
    for (int i = 0; i < A.size(); ++i) {
        if (!A.entry(i, i).is_zero()) continue;
        for (long b : reflection_exponents(A, i)) cap = std::max(cap, 1 + b);
    }
    GAlgebra partial(A, BuildOptions{int(cap), 0, true});
    return reflect(partial, k);
}

// ---------------------------------------------------------------------------
// Enumeration of inequivalent Cartan matrices

struct CmClassification {
    // Matrices reachable by isotropic reflections, distinct up to row
    // rescaling and an entrywise field automorphism ("fine": what mechanical
    // reflection tables list, one row per matrix).
    std::vector<CartanSpec> classes;
    // adjacency[c][k] = class reached by reflecting class c in node k,
    // or -1 when the reflection is inadmissible (A_kk != 0)
    std::vector<std::vector<int>> adjacency;
    std::vector<bool> boxed;      // exactly one odd simple root
    std::vector<bool> underlined; // all simple roots odd
    // Quotient by node permutations as well ("coarse": how parametric
    // families are listed, where permuted rediscoveries at a transformed
    // parameter value are the same symbolic matrix).
    std::vector<int> coarse_of;   // fine class -> coarse class
    int coarse_count = 0;
};

inline bool equivalent_pairs_galois(const CartanSpec& A, const CartanSpec& B) {
    int k = A.field()->is_rationals() ? 1 : A.field()->extension_degree();
    for (int m = 0; m < k; ++m)
        if (equivalent_pairs(m == 0 ? A : frobenius_twist(A, m), B)) return true;
    return false;
}

inline CmClassification enumerate_cm_classes(const CartanSpec& A, size_t class_cap = 4096) {
    CmClassification out;
    out.classes.push_back(A);
    for (size_t c = 0; c < out.classes.size(); ++c) {
        if (out.classes.size() > class_cap) throw std::runtime_error("class cap exceeded");
        const CartanSpec cur = out.classes[c];
        std::vector<int> row(cur.size(), -1);
        for (int k = 0; k < cur.size(); ++k) {
            if (!cur.entry(k, k).is_zero()) continue;
            CartanSpec refl = reflect_cm(cur, k);
            int found = -1;
            for (size_t t = 0; t < out.classes.size(); ++t)
                if (equivalent_scaled_galois(refl, out.classes[t])) {
                    found = int(t);
                    break;
                }
            if (found < 0) {
                found = int(out.classes.size());
                out.classes.push_back(refl);
            }
            row[k] = found;
        }
        out.adjacency.push_back(std::move(row));
    }
    for (const auto& cls : out.classes) {
        int odd = 0;
        for (int i = 0; i < cls.size(); ++i) odd += cls.parity(i);
        out.boxed.push_back(odd == 1);
        out.underlined.push_back(odd == cls.size());
    }
    std::vector<int> coarse_reps;
    out.coarse_of.assign(out.classes.size(), -1);
    for (size_t c = 0; c < out.classes.size(); ++c) {
        for (size_t r = 0; r < coarse_reps.size(); ++r)
            if (equivalent_pairs_galois(out.classes[c], out.classes[coarse_reps[r]])) {
                out.coarse_of[c] = int(r);
                break;
            }
        if (out.coarse_of[c] < 0) {
            out.coarse_of[c] = int(coarse_reps.size());
            coarse_reps.push_back(int(c));
        }
    }
    out.coarse_count = int(coarse_reps.size());
    return out;
}

} // namespace modchev
