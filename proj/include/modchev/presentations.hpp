#pragma once

// Relation expressions over Chevalley generators, Serre relation generation,
// evaluation of relations inside built algebras, and a nilpotent-quotient
// engine for the free Lie superalgebra with squaring: the second, independent
// pipeline behind completeness checks.

#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "cartan.hpp"
#include "contragredient.hpp"

namespace modchev {

struct ArityMismatch : std::runtime_error {
    explicit ArityMismatch(const std::string& w) : std::runtime_error(w) {}
};

// Coefficient: polynomial in one formal parameter over the field.
struct ParamPoly {
    const FieldSpec* F = nullptr;
    std::vector<FieldElement> c; // c[0] + c[1] a + ...

    static ParamPoly constant(const FieldSpec* F, const FieldElement& x) { return {F, {x}}; }
    static ParamPoly param(const FieldSpec* F) { return {F, {F->zero(), F->one()}}; }
    bool is_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    FieldElement eval(const FieldElement& a) const {
        FieldElement out = F->zero(), pw = F->one();
        for (const auto& x : c) {
            out += x * pw;
            pw = pw * a;
        }
        return out;
    }
    friend ParamPoly operator+(const ParamPoly& x, const ParamPoly& y) {
        ParamPoly r{x.F, {}};
        r.c.resize(std::max(x.c.size(), y.c.size()), x.F->zero());
        for (size_t i = 0; i < x.c.size(); ++i) r.c[i] += x.c[i];
        for (size_t i = 0; i < y.c.size(); ++i) r.c[i] += y.c[i];
        return r;
    }
    friend ParamPoly operator*(const ParamPoly& x, const ParamPoly& y) {
        ParamPoly r{x.F, std::vector<FieldElement>(x.c.size() + y.c.size(), x.F->zero())};
        if (x.c.empty() || y.c.empty()) return r;
        r.c.assign(x.c.size() + y.c.size() - 1, x.F->zero());
        for (size_t i = 0; i < x.c.size(); ++i)
            for (size_t j = 0; j < y.c.size(); ++j) r.c[i + j] += x.c[i] * y.c[j];
        return r;
    }
    ParamPoly operator-() const {
        ParamPoly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    std::string str(const std::string& pname) const {
        std::string s;
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            if (!s.empty()) s += "+";
            if (i == 0 || !c[i].is_one()) s += c[i].str();
            if (i >= 1) s += pname;
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }
};

// A bracket/squaring monomial over generators x_1..x_n.
struct RelMono {
    struct Node {
        int kind; // 0 generator, 1 bracket, 2 square
        int gen = -1;
        int left = -1, right = -1;
    };
    std::vector<Node> nodes; // nodes.back() is the root
    int root() const { return int(nodes.size()) - 1; }

    Degree degree(int n) const {
        Degree d(n, 0);
        collect(root(), d, 1);
        return d;
    }
    void collect(int at, Degree& d, int mult) const {
        const Node& nd = nodes[at];
        if (nd.kind == 0)
            d[nd.gen] += mult;
        else if (nd.kind == 1) {
            collect(nd.left, d, mult);
            collect(nd.right, d, mult);
        } else {
            collect(nd.left, d, 2 * mult);
        }
    }
    std::string str() const { return str_at(root()); }
    std::string str_at(int at) const {
        const Node& nd = nodes[at];
        if (nd.kind == 0) return "x" + std::to_string(nd.gen + 1);
        if (nd.kind == 2) return "sq(" + str_at(nd.left) + ")";
        return "[" + str_at(nd.left) + "," + str_at(nd.right) + "]";
    }
};

// Formal sum of monomials with polynomial coefficients; weight-homogeneous.
struct RelationExpr {
    std::vector<std::pair<ParamPoly, RelMono>> terms;
    std::string text; // original text, kept for reports

    Degree degree(int n) const {
        if (terms.empty()) return Degree(n, 0);
        return terms.front().second.degree(n);
    }
    bool homogeneous(int n) const {
        for (const auto& t : terms)
            if (t.second.degree(n) != degree(n)) return false;
        return true;
    }
    std::string str() const { return text; }
};

// ---------------------------------------------------------------------------
// Relation text grammar:
//   expr   := term (('+'|'-') term)*
//   term   := [coeff ['*']] factor
//   coeff  := INT | NAME | '(' coeffsum ')'
//   factor := '[' expr ',' expr ']' | 'sq(' expr ')' | 'ad(' expr ',' INT ',' expr ')' | xK
//   rel    := expr ['=' expr]
// The single parameter name (if any) is supplied by the caller.

namespace detail {

struct RelParser {
    const std::string& s;
    size_t i = 0;
    const FieldSpec* F;
    std::string pname;
    int ngens;

    using Terms = std::vector<std::pair<ParamPoly, RelMono>>;

    void skip() {
        while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw std::runtime_error("relation parse error: expected '" + std::string(1, c) + "' in " + s);
    }

    Terms parse_expr() {
        Terms out;
        bool neg = eat('-');
        append(out, parse_term(), neg);
        while (true) {
            skip();
            if (i >= s.size() || (s[i] != '+' && s[i] != '-')) break;
            bool minus = s[i] == '-';
            ++i;
            append(out, parse_term(), minus);
        }
        return out;
    }
    void append(Terms& out, Terms t, bool neg) {
        for (auto& [c, m] : t) out.emplace_back(neg ? -c : c, std::move(m));
    }

    Terms parse_term() {
        skip();
        ParamPoly coeff = ParamPoly::constant(F, F->one());
        bool have = false;
        if (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) {
            long v = 0;
            while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
            coeff = ParamPoly::constant(F, F->from_int(v));
            have = true;
        } else if (!pname.empty() && s.compare(i, pname.size(), pname) == 0 &&
                   (i + pname.size() >= s.size() || !isalnum(static_cast<unsigned char>(s[i + pname.size()])))) {
            coeff = ParamPoly::param(F);
            i += pname.size();
            have = true;
        } else if (i < s.size() && s[i] == '(') {
            // lookahead: coefficient parenthesis holds only INT/param/+/-/space
            size_t j = i + 1;
            int depth = 1;
            bool coeffish = true;
            for (; j < s.size() && depth; ++j) {
                if (s[j] == '(') ++depth;
                if (s[j] == ')') --depth;
                if (depth && !(isdigit(static_cast<unsigned char>(s[j])) || isspace(static_cast<unsigned char>(s[j])) ||
                               s[j] == '+' || s[j] == '-' ||
                               (!pname.empty() && s.compare(j, pname.size(), pname) == 0 && (j += pname.size() - 1, true))))
                    coeffish = false;
            }
            if (coeffish) {
                ++i;
                coeff = parse_coeff_sum();
                expect(')');
                have = true;
            }
        }
        if (have) eat('*');
        Terms f = parse_factor();
        Terms out;
        for (auto& [c, m] : f) out.emplace_back(coeff * c, std::move(m));
        return out;
    }

    ParamPoly parse_coeff_sum() {
        ParamPoly out = ParamPoly::constant(F, F->zero());
        bool neg = eat('-');
        out = out + (neg ? -parse_coeff_atom() : parse_coeff_atom());
        while (true) {
            skip();
            if (i >= s.size() || (s[i] != '+' && s[i] != '-')) break;
            bool minus = s[i] == '-';
            ++i;
            out = out + (minus ? -parse_coeff_atom() : parse_coeff_atom());
        }
        return out;
    }
    ParamPoly parse_coeff_atom() {
        skip();
        if (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) {
            long v = 0;
            while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
            ParamPoly c = ParamPoly::constant(F, F->from_int(v));
            if (!pname.empty() && s.compare(i, pname.size(), pname) == 0) {
                i += pname.size();
                c = c * ParamPoly::param(F);
            }
            return c;
        }
        if (!pname.empty() && s.compare(i, pname.size(), pname) == 0) {
            i += pname.size();
            return ParamPoly::param(F);
        }
        throw std::runtime_error("relation parse error: bad coefficient in " + s);
    }

    Terms parse_factor() {
        skip();
        if (eat('[')) {
            Terms l = parse_expr();
            expect(',');
            Terms r = parse_expr();
            expect(']');
            return bracket(l, r);
        }
        if (s.compare(i, 3, "sq(") == 0) {
            i += 3;
            Terms c = parse_expr();
            expect(')');
            return square(c);
        }
        if (s.compare(i, 3, "ad(") == 0) {
            i += 3;
            Terms u = parse_expr();
            expect(',');
            skip();
            long k = 0;
            while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) k = k * 10 + (s[i++] - '0');
            expect(',');
            Terms v = parse_expr();
            expect(')');
            for (long step = 0; step < k; ++step) v = bracket(u, v);
            return v;
        }
        if (i < s.size() && s[i] == 'x') {
            ++i;
            long g = 0;
            while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) g = g * 10 + (s[i++] - '0');
            if (g < 1 || g > ngens) throw ArityMismatch("generator x" + std::to_string(g) + " out of range");
            RelMono m;
            m.nodes.push_back({0, int(g - 1), -1, -1});
            return {{ParamPoly::constant(F, F->one()), std::move(m)}};
        }
        throw std::runtime_error("relation parse error near position " + std::to_string(i) + " in " + s);
    }

    static RelMono merge(const RelMono& l, const RelMono& r, int kind) {
        RelMono m;
        m.nodes = l.nodes;
        int lroot = l.root();
        int shift = int(m.nodes.size());
        for (auto nd : r.nodes) {
            if (nd.left >= 0) nd.left += shift;
            if (nd.right >= 0) nd.right += shift;
            m.nodes.push_back(nd);
        }
        int rroot = shift + r.root();
        m.nodes.push_back({kind, -1, lroot, rroot});
        return m;
    }

    Terms bracket(const Terms& l, const Terms& r) {
        Terms out;
        for (const auto& [cl, ml] : l)
            for (const auto& [cr, mr] : r) out.emplace_back(cl * cr, merge(ml, mr, 1));
        return out;
    }
    Terms square(const Terms& c) {
        // q(sum c_i m_i) = sum c_i^2 q(m_i) + sum_{i<j} c_i c_j [m_i, m_j]
        Terms out;
        for (size_t a = 0; a < c.size(); ++a) {
            RelMono m;
            m.nodes = c[a].second.nodes;
            m.nodes.push_back({2, -1, c[a].second.root(), -1});
            out.emplace_back(c[a].first * c[a].first, std::move(m));
            for (size_t b = a + 1; b < c.size(); ++b)
                out.emplace_back(c[a].first * c[b].first, merge(c[a].second, c[b].second, 1));
        }
        return out;
    }
};

} // namespace detail

inline RelationExpr parse_relation(const std::string& text, const FieldSpec* F, int ngens,
                                   const std::string& pname = "", bool allow_inhomogeneous = false) {
    std::string lhs = text, rhs;
    // split at the top-level '=' (brackets contain none)
    auto eq = text.find('=');
    if (eq != std::string::npos) {
        lhs = text.substr(0, eq);
        rhs = text.substr(eq + 1);
    }
    detail::RelParser pl{lhs, 0, F, pname, ngens};
    RelationExpr rel;
    rel.terms = pl.parse_expr();
    if (!rhs.empty()) {
        // "= 0" or an actual right-hand side moved over
        std::string t = rhs;
        size_t a = t.find_first_not_of(" \t");
        if (a != std::string::npos && !(t[a] == '0' && t.find_first_not_of(" \t", a + 1) == std::string::npos)) {
            detail::RelParser pr{rhs, 0, F, pname, ngens};
            for (auto& [c, m] : pr.parse_expr()) rel.terms.emplace_back(-c, std::move(m));
        }
    }
    rel.text = text;
    if (!allow_inhomogeneous && !rel.homogeneous(ngens))
        throw std::runtime_error("relation is not weight-homogeneous: " + text);
    return rel;
}

// ---------------------------------------------------------------------------
// Serre relations

inline std::vector<RelationExpr> serre_relations(const CartanSpec& A) {
    std::vector<RelationExpr> out;
    const FieldSpec* F = A.field();
    int n = A.size();
    long p = A.p();
    auto parse = [&](const std::string& t) { return parse_relation(t, F, n, A.param_name()); };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            long e = serre_exponent(A, i, j);
            out.push_back(parse("ad(x" + std::to_string(i + 1) + "," + std::to_string(e) + ",x" +
                                std::to_string(j + 1) + ")"));
        }
        if (A.kind(i) == DiagonalKind::OddZero) {
            if (p == 2)
                out.push_back(parse("sq(x" + std::to_string(i + 1) + ")"));
            else
                out.push_back(parse("[x" + std::to_string(i + 1) + ",x" + std::to_string(i + 1) + "]"));
        }
        if (p == 3 && A.kind(i) == DiagonalKind::OddOne) {
            std::string x = "x" + std::to_string(i + 1);
            out.push_back(parse("[" + x + ",[" + x + "," + x + "]]"));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation inside a built algebra

struct RelationReport {
    struct Entry {
        std::string relation;
        bool vanishes;
        std::string residual;
    };
    std::vector<Entry> entries;
    bool all_zero = true;
};

// Evaluate a monomial with generator images gens[i]; Alg provides brackets
// and (p=2) squaring.
template <class Alg>
SV eval_monomial(const Alg& alg, const std::vector<SV>& gens, const RelMono& m, int at) {
    const auto& nd = m.nodes[at];
    if (nd.kind == 0) {
        if (nd.gen >= int(gens.size())) throw ArityMismatch("generator index beyond supplied images");
        return gens[nd.gen];
    }
    if (nd.kind == 2) {
        SV c = eval_monomial(alg, gens, m, nd.left);
        if (alg.has_squaring()) return squaring_sv(alg, c);
        // p != 2: x^2 = [x,x]/2
        SV b = bracket_sv(alg, c, c);
        return sv_scale(b, alg.field()->from_int(2).inverse());
    }
    return bracket_sv(alg, eval_monomial(alg, gens, m, nd.left), eval_monomial(alg, gens, m, nd.right));
}

template <class Alg>
SV eval_relation(const Alg& alg, const std::vector<SV>& gens, const RelationExpr& rel,
                 const FieldElement& param) {
    SV out;
    for (const auto& [c, m] : rel.terms) {
        FieldElement cf = c.eval(param);
        if (cf.is_zero()) continue;
        sv_add_scaled(out, eval_monomial(alg, gens, m, m.root()), cf);
    }
    return out;
}

template <class Alg>
RelationReport verify(const Alg& alg, const std::vector<SV>& gens, const std::vector<RelationExpr>& rels,
                      const FieldElement& param, std::function<std::string(int)> name_of = {}) {
    RelationReport rep;
    for (const auto& rel : rels) {
        SV r = eval_relation(alg, gens, rel, param);
        RelationReport::Entry e;
        e.relation = rel.str();
        e.vanishes = r.empty();
        if (!r.empty()) {
            std::ostringstream os;
            for (const auto& [i, c] : r) os << " " << c.str() << "*" << (name_of ? name_of(i) : std::to_string(i));
            e.residual = os.str();
            rep.all_zero = false;
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

inline RelationReport verify(const GAlgebra& alg, const std::vector<RelationExpr>& rels) {
    std::vector<SV> gens;
    for (int i = 0; i < alg.rank_n(); ++i) gens.push_back(sv_unit(alg.e_index(i), alg.field()->one()));
    FieldElement param = alg.source().param_value();
    if (!param.owner()) param = alg.field()->zero();
    return verify(alg, gens, rels, param, [&](int i) { return alg.basis_name(i); });
}

// ---------------------------------------------------------------------------
// Nilpotent quotient of the free Lie superalgebra with squaring
//
// Degree by degree, the component at weight alpha is the span of the
// candidate monomials
//       [x_i, b]   for b a basis monomial at alpha - eps_i,
//       q(m)       for m a candidate at alpha/2 (odd, p = 2),
// modulo the linear relations coming from (a) Jacobi consistency on
// generator pairs, (b) substituted relation instances of this weight, and
// (c) squares of killed combinations of the halved weight (so the ideal is
// closed under squaring).  Bracket closure of the ideal is automatic because
// everything is built from reduced representatives.

class NilpotentQuotient {
  public:
    NilpotentQuotient(const FieldSpec* F, std::vector<int> parities, const std::vector<RelationExpr>& rels,
                      const FieldElement& param, int max_height)
        : F_(F), par_(std::move(parities)), n_(int(par_.size())),
          p_(F->is_rationals() ? 0 : F->characteristic()) {
        for (const auto& r : rels) rels_by_degree_[r.degree(n_)].push_back(&r);
        param_ = param.owner() ? param : F->zero();
        build(max_height);
    }

    std::map<Degree, int> graded_dims() const {
        std::map<Degree, int> out;
        for (const auto& b : blocks_)
            if (!b.words.empty()) out[b.deg] = int(b.words.size());
        return out;
    }
    int total_dim() const {
        int s = 0;
        for (const auto& b : blocks_) s += int(b.words.size());
        return s;
    }

  private:
    struct Word {
        int kind;  // 0 gen, 1 bracket [x_gen, child], 2 square(candidate)
        int gen;   // generator for kinds 0,1
        int child; // global basis id (kind 1) / candidate index at the half degree (kind 2)
    };
    struct Block {
        Degree deg;
        int par = 0;
        int offset = 0;                     // first global basis id
        std::vector<Word> words;            // chosen basis
        std::vector<std::vector<SV>> e_act; // [t][i]: [x_i, b_t] over block(deg+eps_i)
        std::vector<Word> cands;            // full candidate list at this degree
        std::vector<SV> cand_exp;           // expansion of each candidate over the basis
        std::vector<SV> kernel;             // killed combos, over the candidate list
    };

    // ------------- plumbing -------------
    int height(const Degree& d) const {
        int s = 0;
        for (int x : d) s += x;
        return s;
    }
    int parity_deg(const Degree& d) const {
        int p = 0;
        for (int i = 0; i < n_; ++i) p ^= (d[i] & 1) & par_[i];
        return p;
    }
    int sign_of(int a, int b) const { return (a && b) ? -1 : 1; }
    const Block* block_at(const Degree& d) const {
        auto it = block_of_.find(d);
        return it == block_of_.end() ? nullptr : &blocks_[it->second];
    }
    Block* block_at_mut(const Degree& d) {
        auto it = block_of_.find(d);
        return it == block_of_.end() ? nullptr : &blocks_[it->second];
    }
    int global_of(const Block& b, int t) const { return b.offset + t; }
    const Block& block_of_basis(int g) const { return blocks_[basis_block_[g]]; }
    int local_of_basis(int g) const { return g - block_of_basis(g).offset; }
    const Word& word_of(int g) const { return block_of_basis(g).words[local_of_basis(g)]; }
    int parity_basis(int g) const { return block_of_basis(g).par; }
    const Degree& deg_basis(int g) const { return block_of_basis(g).deg; }

    void build(int max_height) {
        std::set<Degree> pend;
        for (int i = 0; i < n_; ++i) {
            Degree d(n_, 0);
            d[i] = 1;
            Block b;
            b.deg = d;
            b.par = par_[i];
            b.offset = nbasis_;
            b.words.push_back({0, i, -1});
            b.e_act.push_back(std::vector<SV>(n_));
            b.cands.push_back({0, i, -1});
            b.cand_exp.push_back(sv_unit(0, F_->one()));
            block_of_[d] = int(blocks_.size());
            basis_block_.push_back(int(blocks_.size()));
            blocks_.push_back(std::move(b));
            nbasis_ += 1;
            push(pend, d);
        }
        for (int h = 2; h <= max_height && !pend.empty(); ++h) {
            std::vector<Degree> now;
            for (const auto& d : pend)
                if (height(d) == h) now.push_back(d);
            for (const auto& d : now) pend.erase(d);
            for (const auto& d : now) process(d, pend);
        }
    }

    void push(std::set<Degree>& pend, const Degree& d) {
        for (int i = 0; i < n_; ++i) {
            Degree e = d;
            e[i] += 1;
            pend.insert(e);
        }
        if (p_ == 2 && parity_deg(d)) {
            Degree e = d;
            for (auto& x : e) x *= 2;
            pend.insert(e);
        }
    }

    // ------------- evaluator below the top degree -------------
    // [u, v] for global basis ids; local SV over block(deg u + deg v).
    SV brk(int u, int v) {
        if (u == v && p_ == 2) return {};
        uint64_t key = (uint64_t(u) << 32) | uint64_t(v);
        auto it = brk_memo_.find(key);
        if (it != brk_memo_.end()) return it->second;
        SV out = brk_impl(u, v);
        brk_memo_.emplace(key, out);
        return out;
    }
    SV brk_impl(int u, int v) {
        Degree target = deg_basis(u);
        const Degree& dv = deg_basis(v);
        for (int i = 0; i < n_; ++i) target[i] += dv[i];
        const Block* tb = block_at(target);
        if (!tb || tb->words.empty()) return {};
        const Word& w = word_of(u);
        if (w.kind == 0) return e_act_of(v, w.gen);
        if (w.kind == 2) {
            // basis word q(m): [q(m), v] = [y, [y, v]] with y = red(m)
            SV y = child_reduction(u);
            Degree hd = deg_half_of(u);
            const Block* hb = block_at(hd);
            if (!hb) return {};
            Degree dinner = hd;
            const Degree& dvv = deg_basis(v);
            for (int j = 0; j < n_; ++j) dinner[j] += dvv[j];
            const Block* ib = block_at(dinner);
            SV out;
            if (!ib) return out;
            for (const auto& [ts, cs] : y) {
                SV inner = brk(global_of(*hb, ts), v);
                for (const auto& [tt, ct] : y)
                    for (const auto& [ti, ci] : inner)
                        sv_add_scaled(out, brk(global_of(*hb, tt), global_of(*ib, ti)), ct * cs * ci);
            }
            return out;
        }
        int i = w.gen;
        int u2 = w.child;
        // [e_i [u', v]] - (-1)^{p_i p_u'} [u', [e_i, v]]
        SV t1;
        {
            SV inner = brk(u2, v);
            Degree d = deg_basis(u2);
            for (int j = 0; j < n_; ++j) d[j] += dv[j];
            t1 = mul_gen(i, d, inner);
        }
        SV t2;
        {
            SV eiv = e_act_of(v, i);
            Degree d = dv;
            d[i] += 1;
            const Block* vb = block_at(d);
            if (vb)
                for (const auto& [t, c] : eiv) sv_add_scaled(t2, brk(u2, global_of(*vb, t)), c);
        }
        sv_add_scaled(t1, t2, F_->from_int(-sign_of(par_[i], parity_basis(u2))));
        return t1;
    }
    // [x_i, combo at degree d] -> local SV over block(d + eps_i)
    SV mul_gen(int i, const Degree& d, const SV& combo) {
        const Block* b = block_at(d);
        if (!b || combo.empty()) return {};
        SV out;
        for (const auto& [t, c] : combo) sv_add_scaled(out, b->e_act[t][i], c);
        return out;
    }
    SV e_act_of(int g, int i) const { return block_of_basis(g).e_act[local_of_basis(g)][i]; }
    SV sv_unit_local(int g) const { return sv_unit(local_of_basis(g), F_->one()); }

    // For a basis word q(m): deg of the half and the reduction of m to basis
    // (and then [q(y),v] = [y,[y,v]] bilinearly; valid modulo the ideal).
    SV child_reduction(int u) const {
        const Block& b = block_of_basis(u);
        const Word& w = b.words[local_of_basis(u)];
        Degree half = b.deg;
        for (auto& x : half) x /= 2;
        const Block* hb = block_at(half);
        return hb->cand_exp[w.child];
    }
    Degree deg_half_of(int u) const {
        Degree half = deg_basis(u);
        for (auto& x : half) x /= 2;
        return half;
    }

    // ------------- per-degree processing -------------
    struct TopCtx {
        Degree alpha;
        int W = 0;
        std::map<std::pair<int, int>, int> col_bracket; // (i, child-basis) -> column
        std::map<int, int> col_square;                  // candidate idx at half -> column
        Degree half;
        const Block* halfblk = nullptr;
    };

    std::vector<FieldElement> zero_row(const TopCtx& ctx) const {
        return std::vector<FieldElement>(ctx.W, F_->zero());
    }
    void add_to(std::vector<FieldElement>& row, const std::vector<FieldElement>& r, const FieldElement& c) const {
        for (size_t i = 0; i < row.size(); ++i) row[i] += c * r[i];
    }

    // [x_i, combo at alpha - eps_i] as a candidate row
    std::vector<FieldElement> top_mul_gen(const TopCtx& ctx, int i, const SV& combo) const {
        std::vector<FieldElement> row(ctx.W, F_->zero());
        Degree d = ctx.alpha;
        d[i] -= 1;
        const Block* b = block_at(d);
        if (!b) return row;
        for (const auto& [t, c] : combo) {
            auto it = ctx.col_bracket.find({i, global_of(*b, t)});
            if (it != ctx.col_bracket.end()) row[it->second] += c;
        }
        return row;
    }

    // [u-basis, v-basis] with deg u + deg v == alpha, as a candidate row
    std::vector<FieldElement> top_brk_basis(const TopCtx& ctx, int u, int v) {
        if (u == v && p_ == 2) return zero_row(ctx);
        const Word& w = word_of(u);
        if (w.kind == 0) return top_mul_gen(ctx, w.gen, sv_unit_local(v) /* local in v's block */);
        if (w.kind == 2) {
            // [q(m), v] = [y, [y, v]] with y = red(m)
            SV y = child_reduction(u);
            Degree hd = deg_half_of(u);
            std::vector<FieldElement> row = zero_row(ctx);
            const Block* hb = block_at(hd);
            for (const auto& [ty, cy] : y) {
                int yb = global_of(*hb, ty);
                SV inner = brk(yb, v); // at deg hd + deg v < alpha
                Degree dinner = hd;
                const Degree& dv = deg_basis(v);
                for (int j = 0; j < n_; ++j) dinner[j] += dv[j];
                const Block* ib = block_at(dinner);
                if (!ib) continue;
                for (const auto& [ti, ci] : inner)
                    add_to(row, top_brk_basis(ctx, yb, global_of(*ib, ti)), cy * ci);
            }
            return row;
        }
        int i = w.gen;
        int u2 = w.child;
        std::vector<FieldElement> row = zero_row(ctx);
        // [x_i, [u', v]]
        {
            SV inner = brk(u2, v);
            add_to(row, top_mul_gen(ctx, i, inner), F_->one());
        }
        // -(-1)^{p_i p_u'} [u', [x_i, v]]
        {
            SV eiv = e_act_of(v, i);
            Degree d = deg_basis(v);
            d[i] += 1;
            const Block* vb = block_at(d);
            if (vb) {
                std::vector<FieldElement> sub = zero_row(ctx);
                for (const auto& [t, c] : eiv) add_to(sub, top_brk_basis(ctx, u2, global_of(*vb, t)), c);
                add_to(row, sub, F_->from_int(-sign_of(par_[i], parity_basis(u2))));
            }
        }
        return row;
    }

    // a candidate word of the half degree, as (word over basis children):
    // [m_r, m_s] straightened into the candidate row at alpha
    std::vector<FieldElement> top_brk_cand(const TopCtx& ctx, const Word& mr, const Word& ms) {
        // decompose mr; ground case: mr is a basis candidate? Words here are
        // always bracket words [x_i, child-basis] (half blocks of odd parity
        // carry no q-candidates).
        if (mr.kind == 0) {
            // generator: [x_i, m_s] where m_s is a word of height >= 1
            return top_word_mul_gen(ctx, mr.gen, ms);
        }
        // mr = [x_i, u]: [mr, ms] = [x_i, [u, ms]] - (-1)^{p_i p_u}[u, [x_i, ms]]
        int i = mr.gen;
        int u = mr.child;
        std::vector<FieldElement> row = zero_row(ctx);
        {
            // [u, ms] at lower degree: reduce ms to basis first (exact mod ideal)
            SV red = reduce_cand(ctx.half, ms);
            const Block* hb = block_at(ctx.half);
            SV inner;
            for (const auto& [t, c] : red) sv_add_scaled(inner, brk(u, global_of(*hb, t)), c);
            Degree dinner = deg_basis(u);
            for (int j = 0; j < n_; ++j) dinner[j] += ctx.half[j];
            add_to(row, top_mul_gen(ctx, i, inner), F_->one());
        }
        {
            // [x_i, ms] at lower degree: again via the reduction of ms
            SV red = reduce_cand(ctx.half, ms);
            Degree d = ctx.half;
            d[i] += 1;
            const Block* hb = block_at(ctx.half);
            SV inner;
            for (const auto& [t, c] : red) sv_add_scaled(inner, e_act_of(global_of(*hb, t), i), c);
            const Block* ib = block_at(d);
            std::vector<FieldElement> sub = zero_row(ctx);
            if (ib)
                for (const auto& [t, c] : inner) add_to(sub, top_brk_basis(ctx, u, global_of(*ib, t)), c);
            add_to(row, sub, F_->from_int(-sign_of(par_[i], parity_basis(u))));
        }
        return row;
    }
    std::vector<FieldElement> top_word_mul_gen(const TopCtx& ctx, int i, const Word& ms) {
        SV red = reduce_cand(ctx.half, ms);
        return top_mul_gen(ctx, i, red); // red is local over the half block...
    }
    SV reduce_cand(const Degree& d, const Word& w) const {
        // expansion of a candidate word over the basis of its block
        const Block* b = block_at(d);
        for (size_t c = 0; c < b->cands.size(); ++c) {
            const Word& cw = b->cands[c];
            if (cw.kind == w.kind && cw.gen == w.gen && cw.child == w.child) return b->cand_exp[c];
        }
        throw std::runtime_error("candidate word not found during reduction");
    }

    // q of a reduced combo, as a candidate row (polarization over basis)
    std::vector<FieldElement> top_square_combo(TopCtx& ctx, const SV& y) {
        std::vector<FieldElement> row = zero_row(ctx);
        const Block* hb = ctx.halfblk;
        for (size_t a = 0; a < y.size(); ++a) {
            // q(b): the square column of the candidate that equals this basis word
            int bglob = global_of(*hb, y[a].first);
            int cidx = cand_index_of_basis(*hb, y[a].first);
            auto it = ctx.col_square.find(cidx);
            if (it != ctx.col_square.end()) row[it->second] += y[a].second * y[a].second;
            for (size_t b2 = a + 1; b2 < y.size(); ++b2) {
                int bg2 = global_of(*hb, y[b2].first);
                add_to(row, top_brk_basis(ctx, bglob, bg2), y[a].second * y[b2].second);
            }
        }
        return row;
    }
    static int cand_index_of_basis(const Block& b, int local) {
        for (size_t c = 0; c < b.cands.size(); ++c)
            if (!b.cand_exp[c].empty() && b.cand_exp[c].size() == 1 && b.cand_exp[c][0].first == local &&
                b.cand_exp[c][0].second.is_one()) {
                // candidate c reduces to exactly this basis element; basis
                // words are candidates picked as free columns, so this match
                // is the defining one when the words agree
                if (b.words[local].kind == b.cands[c].kind && b.words[local].gen == b.cands[c].gen &&
                    b.words[local].child == b.cands[c].child)
                    return int(c);
            }
        return -1;
    }

    // relation monomial straightened into the candidate row at alpha
    std::vector<FieldElement> top_monomial(TopCtx& ctx, const RelMono& m, int at) {
        const auto& nd = m.nodes[at];
        Degree d(n_, 0);
        RelMono sub;
        // degree of this node
        std::function<void(int, int)> coll = [&](int a, int mult) {
            const auto& x = m.nodes[a];
            if (x.kind == 0)
                d[x.gen] += mult;
            else if (x.kind == 1) {
                coll(x.left, mult);
                coll(x.right, mult);
            } else
                coll(x.left, 2 * mult);
        };
        coll(at, 1);
        if (d != ctx.alpha) throw std::runtime_error("monomial degree mismatch at top");
        if (nd.kind == 2) {
            SV y = reduce_monomial(m, nd.left);
            Degree hd(n_, 0);
            coll = [&](int a, int mult) {
                const auto& x = m.nodes[a];
                if (x.kind == 0)
                    hd[x.gen] += mult;
                else if (x.kind == 1) {
                    coll(x.left, mult);
                    coll(x.right, mult);
                } else
                    coll(x.left, 2 * mult);
            };
            coll(nd.left, 1);
            if (hd != ctx.half) throw std::runtime_error("square monomial at unexpected degree");
            return top_square_combo(ctx, y);
        }
        if (nd.kind == 0) throw std::runtime_error("degree-1 relation at top degree");
        // bracket node: reduce both sides below the top, then pair basis
        // elements through top_brk_basis; if one side is degree alpha...
        // weights are positive so both sides are strictly below alpha.
        SV L = reduce_monomial(m, nd.left);
        SV R = reduce_monomial(m, nd.right);
        Degree dl(n_, 0);
        coll = [&](int a, int mult) {
            const auto& x = m.nodes[a];
            if (x.kind == 0)
                dl[x.gen] += mult;
            else if (x.kind == 1) {
                coll(x.left, mult);
                coll(x.right, mult);
            } else
                coll(x.left, 2 * mult);
        };
        coll(nd.left, 1);
        Degree dr = ctx.alpha;
        for (int j = 0; j < n_; ++j) dr[j] -= dl[j];
        const Block* lb = block_at(dl);
        const Block* rb = block_at(dr);
        std::vector<FieldElement> row = zero_row(ctx);
        if (!lb || !rb) return row;
        for (const auto& [tl, cl] : L)
            for (const auto& [tr, cr] : R)
                add_to(row, top_brk_basis(ctx, global_of(*lb, tl), global_of(*rb, tr)), cl * cr);
        return row;
    }

    // reduce a monomial strictly below the top degree to a basis combo
    SV reduce_monomial(const RelMono& m, int at) {
        const auto& nd = m.nodes[at];
        if (nd.kind == 0) {
            Degree d(n_, 0);
            d[nd.gen] = 1;
            return sv_unit(0, F_->one());
        }
        if (nd.kind == 1) {
            SV L = reduce_monomial(m, nd.left);
            SV R = reduce_monomial(m, nd.right);
            Degree dl = mono_degree(m, nd.left), dr = mono_degree(m, nd.right);
            const Block* lb = block_at(dl);
            const Block* rb = block_at(dr);
            SV out;
            if (!lb || !rb) return out;
            for (const auto& [tl, cl] : L)
                for (const auto& [tr, cr] : R)
                    sv_add_scaled(out, brk(global_of(*lb, tl), global_of(*rb, tr)), cl * cr);
            return out;
        }
        // square below the top: q(y) with y reduced at half the degree
        SV y = reduce_monomial(m, nd.left);
        Degree hd = mono_degree(m, nd.left);
        const Block* hb = block_at(hd);
        Degree full = hd;
        for (auto& x : full) x *= 2;
        const Block* fb = block_at(full);
        SV out;
        if (!hb || !fb) return out;
        for (size_t a = 0; a < y.size(); ++a) {
            sv_add_scaled(out, square_of_basis(global_of(*hb, y[a].first)), y[a].second * y[a].second);
            for (size_t b2 = a + 1; b2 < y.size(); ++b2)
                sv_add_scaled(out, brk(global_of(*hb, y[a].first), global_of(*hb, y[b2].first)),
                              y[a].second * y[b2].second);
        }
        return out;
    }
    Degree mono_degree(const RelMono& m, int at) const {
        Degree d(n_, 0);
        std::function<void(int, int)> coll = [&](int a, int mult) {
            const auto& x = m.nodes[a];
            if (x.kind == 0)
                d[x.gen] += mult;
            else if (x.kind == 1) {
                coll(x.left, mult);
                coll(x.right, mult);
            } else
                coll(x.left, 2 * mult);
        };
        coll(at, 1);
        return d;
    }
    // q(basis g) as a basis combo at the doubled degree
    SV square_of_basis(int g) {
        const Block& b = block_of_basis(g);
        Degree dd = b.deg;
        for (auto& x : dd) x *= 2;
        const Block* db = block_at(dd);
        if (!db) return {};
        // find the square candidate whose child reduces to this basis element
        int want = cand_index_of_basis(b, local_of_basis(g));
        for (size_t c = 0; c < db->cands.size(); ++c)
            if (db->cands[c].kind == 2 && db->cands[c].child == want) return db->cand_exp[c];
        return {};
    }

    void process(const Degree& alpha, std::set<Degree>& pend) {
        TopCtx ctx;
        ctx.alpha = alpha;
        Block nb;
        nb.deg = alpha;
        nb.par = parity_deg(alpha);
        // candidates
        for (int i = 0; i < n_; ++i) {
            if (alpha[i] == 0) continue;
            Degree beta = alpha;
            beta[i] -= 1;
            const Block* src = block_at(beta);
            if (!src || src->words.empty()) continue;
            for (int t = 0; t < int(src->words.size()); ++t) {
                int child = global_of(*src, t);
                const Word& cw = src->words[t];
                if (cw.kind == 0 && cw.gen == i && (p_ == 2 || par_[i] == 0)) continue; // [x,x] = 0
                ctx.col_bracket[{i, child}] = int(nb.cands.size());
                nb.cands.push_back({1, i, child});
            }
        }
        bool doubled = p_ == 2;
        ctx.half.assign(n_, 0);
        for (int i = 0; i < n_ && doubled; ++i) {
            if (alpha[i] % 2) doubled = false;
            ctx.half[i] = alpha[i] / 2;
        }
        if (doubled && parity_deg(ctx.half) == 1) {
            ctx.halfblk = block_at(ctx.half);
            if (ctx.halfblk) {
                for (size_t c = 0; c < ctx.halfblk->cands.size(); ++c) {
                    ctx.col_square[int(c)] = int(nb.cands.size());
                    nb.cands.push_back({2, 0, int(c)});
                }
            }
        }
        if (nb.cands.empty()) return;
        ctx.W = int(nb.cands.size());

        std::vector<std::vector<FieldElement>> rows;
        auto addrow = [&](std::vector<FieldElement> r) {
            for (const auto& x : r)
                if (!x.is_zero()) {
                    rows.push_back(std::move(r));
                    return;
                }
        };

        // basis elements that can contribute to a product at this weight
        std::vector<int> lower;
        for (const auto& [d, blk] : block_of_) {
            bool fits = true;
            for (int j = 0; j < n_; ++j)
                if (d[j] > alpha[j]) fits = false;
            if (!fits || d == alpha) continue;
            const Block& b = blocks_[blk];
            for (int t = 0; t < int(b.words.size()); ++t) lower.push_back(global_of(b, t));
        }
        auto fits_pair = [&](int u, int v) {
            const Degree &du = deg_basis(u), &dv = deg_basis(v);
            for (int j = 0; j < n_; ++j)
                if (du[j] + dv[j] != alpha[j]) return false;
            return true;
        };

        // (a1) alternation: [u, u] = 0 for even u (any p) and all u when p = 2
        for (int u : lower) {
            if (!fits_pair(u, u)) continue;
            if (p_ != 2 && parity_basis(u)) continue;
            addrow(top_brk_basis(ctx, u, u));
        }
        // (a2) anticommutativity: [u,v] + (-1)^{p_u p_v} [v,u] = 0
        for (size_t a = 0; a < lower.size(); ++a)
            for (size_t b2 = a + 1; b2 < lower.size(); ++b2) {
                int u = lower[a], v = lower[b2];
                if (!fits_pair(u, v)) continue;
                auto row = top_brk_basis(ctx, u, v);
                add_to(row, top_brk_basis(ctx, v, u), F_->from_int(sign_of(parity_basis(u), parity_basis(v))));
                addrow(std::move(row));
            }
        // (a3) Jacobi: [u,[v,w]] - [[u,v],w] - (-1)^{p_u p_v} [v,[u,w]] = 0
        for (size_t a = 0; a < lower.size(); ++a)
            for (size_t b2 = a; b2 < lower.size(); ++b2)
                for (size_t c2 = b2; c2 < lower.size(); ++c2) {
                    int u = lower[a], v = lower[b2], w = lower[c2];
                    {
                        const Degree &du = deg_basis(u), &dv = deg_basis(v), &dw = deg_basis(w);
                        bool ok = true;
                        for (int j = 0; j < n_; ++j)
                            if (du[j] + dv[j] + dw[j] != alpha[j]) ok = false;
                        if (!ok) continue;
                    }
                    auto row = zero_row(ctx);
                    // [u, [v,w]]
                    {
                        SV vw = brk(v, w);
                        Degree d = deg_basis(v);
                        const Degree& dw = deg_basis(w);
                        for (int j = 0; j < n_; ++j) d[j] += dw[j];
                        const Block* tb = block_at(d);
                        if (tb)
                            for (const auto& [t, c] : vw) add_to(row, top_brk_basis(ctx, u, global_of(*tb, t)), c);
                    }
                    // -[[u,v], w]
                    {
                        SV uv = brk(u, v);
                        Degree d = deg_basis(u);
                        const Degree& dv = deg_basis(v);
                        for (int j = 0; j < n_; ++j) d[j] += dv[j];
                        const Block* tb = block_at(d);
                        if (tb)
                            for (const auto& [t, c] : uv)
                                add_to(row, top_brk_basis(ctx, global_of(*tb, t), w), -c);
                    }
                    // -(-1)^{p_u p_v} [v, [u,w]]
                    {
                        SV uw = brk(u, w);
                        Degree d = deg_basis(u);
                        const Degree& dw = deg_basis(w);
                        for (int j = 0; j < n_; ++j) d[j] += dw[j];
                        const Block* tb = block_at(d);
                        if (tb) {
                            FieldElement s = F_->from_int(-sign_of(parity_basis(u), parity_basis(v)));
                            for (const auto& [t, c] : uw)
                                add_to(row, top_brk_basis(ctx, v, global_of(*tb, t)), s * c);
                        }
                    }
                    addrow(std::move(row));
                }
        // (a4) squaring acts like a half bracket: [q(u), y] = [u, [u, y]]
        // for every odd basis u whose square lands below this weight
        if (p_ == 2)
            for (int u : lower) {
                if (!parity_basis(u)) continue;
                Degree d2 = deg_basis(u);
                for (auto& x : d2) x *= 2;
                for (int y : lower) {
                    {
                        const Degree& dy = deg_basis(y);
                        bool ok = true;
                        for (int j = 0; j < n_; ++j)
                            if (d2[j] + dy[j] != alpha[j]) ok = false;
                        if (!ok) continue;
                    }
                    auto row = zero_row(ctx);
                    SV q = square_of_basis(u);
                    const Block* qb = block_at(d2);
                    if (qb)
                        for (const auto& [t, c] : q) add_to(row, top_brk_basis(ctx, global_of(*qb, t), y), c);
                    // -[u, [u, y]]
                    {
                        SV uy = brk(u, y);
                        Degree d = deg_basis(u);
                        const Degree& dy = deg_basis(y);
                        for (int j = 0; j < n_; ++j) d[j] += dy[j];
                        const Block* tb = block_at(d);
                        if (tb)
                            for (const auto& [t, c] : uy)
                                add_to(row, top_brk_basis(ctx, u, global_of(*tb, t)), -c);
                    }
                    addrow(std::move(row));
                }
            }
        // (b) imposed relations at this weight
        auto it = rels_by_degree_.find(alpha);
        if (it != rels_by_degree_.end()) {
            for (const RelationExpr* rel : it->second) {
                auto row = zero_row(ctx);
                for (const auto& [cf, mono] : rel->terms) {
                    FieldElement c = cf.eval(param_);
                    if (c.is_zero()) continue;
                    add_to(row, top_monomial(ctx, mono, mono.root()), c);
                }
                addrow(std::move(row));
            }
        }
        // (c) squares of killed combos at the half degree
        if (ctx.halfblk) {
            const Block& hb = *ctx.halfblk;
            for (const auto& z : hb.kernel) {
                auto row = zero_row(ctx);
                for (const auto& [r, cr] : z) {
                    auto sq = ctx.col_square.find(r);
                    if (sq != ctx.col_square.end()) row[sq->second] += cr * cr;
                    for (const auto& [s2, cs] : z) {
                        if (s2 <= r) continue;
                        add_to(row, top_brk_cand(ctx, hb.cands[r], hb.cands[s2]), cr * cs);
                    }
                }
                addrow(std::move(row));
            }
        }

        // eliminate
        Matrix R(F_, int(rows.size()), ctx.W);
        for (size_t r = 0; r < rows.size(); ++r)
            for (int c = 0; c < ctx.W; ++c) R.set(int(r), c, rows[r][c]);
        auto rr = rref(R);
        std::vector<int> pivot_of_col(ctx.W, -1);
        for (size_t r = 0; r < rr.pivot_cols.size(); ++r) pivot_of_col[rr.pivot_cols[r]] = int(r);
        std::map<int, int> local_of_col;
        for (int c = 0; c < ctx.W; ++c)
            if (pivot_of_col[c] < 0) {
                int l = int(local_of_col.size());
                local_of_col[c] = l;
                nb.words.push_back(nb.cands[c]);
            }
        nb.offset = nbasis_;
        nb.e_act.assign(nb.words.size(), std::vector<SV>(n_));
        nb.cand_exp.assign(ctx.W, SV{});
        for (int c = 0; c < ctx.W; ++c) {
            if (pivot_of_col[c] >= 0) {
                int r = pivot_of_col[c];
                SV e;
                for (const auto& [cl, l] : local_of_col) {
                    FieldElement x = rr.R.get(r, cl);
                    if (!x.is_zero()) e.emplace_back(l, -x);
                }
                std::sort(e.begin(), e.end());
                nb.cand_exp[c] = std::move(e);
            } else {
                nb.cand_exp[c] = sv_unit(local_of_col[c], F_->one());
            }
        }
        // killed combos, one per pivot column: the rref row says
        // m_pivot + sum_{free} R[r][free] m_free = 0
        for (int c = 0; c < ctx.W; ++c) {
            if (pivot_of_col[c] < 0) continue;
            SV z = sv_unit(c, F_->one());
            for (const auto& [cl, l] : local_of_col) {
                FieldElement x = rr.R.get(pivot_of_col[c], cl);
                if (!x.is_zero()) sv_add_scaled(z, sv_unit(cl, F_->one()), x);
            }
            nb.kernel.push_back(std::move(z));
        }

        // write e_act of sources
        int blkid = int(blocks_.size());
        block_of_[alpha] = blkid;
        for (size_t t = 0; t < nb.words.size(); ++t) basis_block_.push_back(blkid);
        nbasis_ += int(nb.words.size());
        bool nonzero = !nb.words.empty();
        blocks_.push_back(std::move(nb));
        Block& placed = blocks_[blkid];
        for (int c = 0; c < ctx.W; ++c) {
            const Word& w = placed.cands[c];
            if (w.kind != 1) continue;
            Block& src = blocks_[basis_block_[w.child]];
            src.e_act[w.child - src.offset][w.gen] = placed.cand_exp[c];
        }
        if (nonzero) push(pend, alpha);
    }

    const FieldSpec* F_;
    std::vector<int> par_;
    int n_;
    long p_;
    FieldElement param_;
    std::map<Degree, std::vector<const RelationExpr*>> rels_by_degree_;
    std::vector<Block> blocks_;
    std::map<Degree, int> block_of_;
    std::vector<int> basis_block_; // global basis id -> block index
    int nbasis_ = 0;
    std::map<uint64_t, SV> brk_memo_;
};

// ---------------------------------------------------------------------------
// Completeness: the quotient by (Serre + extra) must match the positive part
// of the build at every degree up to the top.

struct CompletenessVerdict {
    bool pass = true;
    Degree first_failure;
    int quotient_dim = 0, build_dim = 0;
    std::map<Degree, int> quotient_dims, build_dims;
};

inline CompletenessVerdict completeness_check(const CartanSpec& A, const std::vector<RelationExpr>& extra,
                                              int max_height = 64) {
    GAlgebra g(A, BuildOptions{max_height, 0, false});
    auto build_dims = g.positive_dims();
    int top = 0;
    for (const auto& [d, dim] : build_dims) {
        int h = 0;
        for (int x : d) h += x;
        top = std::max(top, h);
    }
    std::vector<RelationExpr> rels = serre_relations(A);
    for (const auto& r : extra) rels.push_back(r);
    std::vector<int> parities;
    for (int i = 0; i < A.size(); ++i) parities.push_back(A.parity(i));
    NilpotentQuotient nq(A.field(), parities, rels, A.param_value(), top + 1);
    CompletenessVerdict v;
    v.quotient_dims = nq.graded_dims();
    v.build_dims = build_dims;
    for (const auto& [d, dim] : v.quotient_dims) v.quotient_dim += dim;
    for (const auto& [d, dim] : v.build_dims) v.build_dim += dim;
    std::set<Degree> alldegs;
    for (const auto& [d, dim] : v.quotient_dims) alldegs.insert(d);
    for (const auto& [d, dim] : v.build_dims) alldegs.insert(d);
    for (const auto& d : alldegs) {
        auto qi = v.quotient_dims.find(d);
        auto bi = v.build_dims.find(d);
        int q = qi == v.quotient_dims.end() ? 0 : qi->second;
        int b = bi == v.build_dims.end() ? 0 : bi->second;
        if (q != b) {
            v.pass = false;
            v.first_failure = d;
            return v;
        }
    }
    return v;
}

} // namespace modchev
