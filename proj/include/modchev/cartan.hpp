#pragma once

// Cartan matrices with parities: parsing/serialization of the CM text
// format, normalization to the five diagonal kinds, equivalence testing,
// reflection exponent rows, Serre exponents, Dynkin diagram rendering.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "field.hpp"

namespace modchev {

struct MalformedFile : std::runtime_error {
    explicit MalformedFile(const std::string& what) : std::runtime_error("malformed CM file: " + what) {}
};
struct NonNormalizable : std::runtime_error {
    explicit NonNormalizable(const std::string& what) : std::runtime_error("non-normalizable: " + what) {}
};

// The five normalized diagonal markers.  A kind pins both the row parity and
// the diagonal value (2 collapses to ev when p = 2, so Two is banned there).
enum class DiagonalKind { Two, EvZero, EvOne, OddZero, OddOne };

inline bool kind_is_odd(DiagonalKind k) { return k == DiagonalKind::OddZero || k == DiagonalKind::OddOne; }
inline long kind_diag_int(DiagonalKind k) {
    switch (k) {
        case DiagonalKind::Two: return 2;
        case DiagonalKind::EvZero: return 0;
        case DiagonalKind::EvOne: return 1;
        case DiagonalKind::OddZero: return 0;
        case DiagonalKind::OddOne: return 1;
    }
    return 0;
}
inline const char* kind_glyph(DiagonalKind k) {
    switch (k) {
        case DiagonalKind::Two: return "○";     // white circle
        case DiagonalKind::EvOne: return "∗";   // asterisk operator
        case DiagonalKind::OddOne: return "●";  // black circle
        case DiagonalKind::OddZero: return "⊗"; // circled times
        case DiagonalKind::EvZero: return "⊙";  // circled dot
    }
    return "?";
}

class CartanSpec {
  public:
    CartanSpec(const FieldSpec* field, std::vector<DiagonalKind> kinds,
               std::vector<std::vector<FieldElement>> entries, std::string param_name = "",
               FieldElement param_value = {})
        : field_(field), kinds_(std::move(kinds)), a_(std::move(entries)),
          param_name_(std::move(param_name)), param_value_(std::move(param_value)) {
        normalize();
    }

    int size() const { return int(kinds_.size()); }
    const FieldSpec* field() const { return field_; }
    DiagonalKind kind(int i) const { return kinds_[i]; }
    const std::vector<DiagonalKind>& kinds() const { return kinds_; }
    int parity(int i) const { return kind_is_odd(kinds_[i]) ? 1 : 0; }
    const FieldElement& entry(int i, int j) const { return a_[i][j]; }
    const std::vector<std::vector<FieldElement>>& entries() const { return a_; }
    bool is_isotropic(int i) const {
        return kinds_[i] == DiagonalKind::OddZero || kinds_[i] == DiagonalKind::EvZero;
    }
    const std::string& param_name() const { return param_name_; }
    const FieldElement& param_value() const { return param_value_; }

    long p() const { return field_->is_rationals() ? 0 : field_->characteristic(); }

    // Exact equality of normalized data.
    bool operator==(const CartanSpec& o) const {
        return field_ == o.field_ && kinds_ == o.kinds_ && a_ == o.a_;
    }

  private:
    void normalize() {
        int n = size();
        if (int(a_.size()) != n) throw NonNormalizable("entry rows do not match size");
        for (auto& row : a_)
            if (int(row.size()) != n) throw NonNormalizable("entry row length mismatch");
        long ch = p();
        for (int i = 0; i < n; ++i) {
            if (ch == 2 && kinds_[i] == DiagonalKind::Two) kinds_[i] = DiagonalKind::EvZero;
            FieldElement d = a_[i][i];
            FieldElement target = field_->from_int(kind_diag_int(kinds_[i]));
            if (d.is_zero()) {
                if (!target.is_zero()) throw NonNormalizable("zero diagonal under a nonzero kind");
                continue;
            }
            if (target.is_zero()) throw NonNormalizable("nonzero diagonal under an isotropic kind");
            if (d == target) continue;
            FieldElement lambda = target / d;
            for (int j = 0; j < n; ++j) a_[i][j] = lambda * a_[i][j];
        }
    }

    const FieldSpec* field_;
    std::vector<DiagonalKind> kinds_;
    std::vector<std::vector<FieldElement>> a_;
    std::string param_name_;
    FieldElement param_value_;
};

// ---------------------------------------------------------------------------
// CM text format
//
//   # comment
//   p=3
//   ext=1
//   param a=t        (optional; binds the symbol used in entries)
//   parities: 1 0 0
//   0  -1  0
//   -2  1  0
//   0  -1  2
//
// Diagonal tokens may also be "ev" / "od" (even parity zero resp. one).
// Entries may mention the parameter linearly: "a", "1+a", "-a".

namespace detail {

inline FieldElement parse_entry_token(const FieldSpec* F, const std::string& tok,
                                      const std::string& pname, const FieldElement& pval) {
    // sum of terms: INT | INT? <pname> with signs
    FieldElement total = F->zero();
    size_t i = 0;
    bool any = false;
    while (i < tok.size()) {
        long sign = 1;
        if (tok[i] == '+' || tok[i] == '-') {
            if (tok[i] == '-') sign = -1;
            ++i;
        } else if (any) {
            throw MalformedFile("bad entry token '" + tok + "'");
        }
        long coef = 1;
        bool sawnum = false;
        long val = 0;
        while (i < tok.size() && isdigit(static_cast<unsigned char>(tok[i]))) {
            val = val * 10 + (tok[i] - '0');
            ++i;
            sawnum = true;
        }
        if (sawnum) coef = val;
        bool param = false;
        if (!pname.empty() && tok.compare(i, pname.size(), pname) == 0) {
            param = true;
            i += pname.size();
        } else if (i < tok.size() && (tok[i] == 't' || tok[i] == '^')) {
            // plain field literal with generator powers: delegate
            size_t j = i;
            while (j < tok.size() && tok[j] != '+' && tok[j] != '-') ++j;
            std::string lit = (sawnum ? std::to_string(coef) : std::string()) + tok.substr(i, j - i);
            FieldElement v = F->parse(lit);
            if (sign < 0) v = -v;
            total += v;
            i = j;
            any = true;
            continue;
        }
        if (!sawnum && !param) throw MalformedFile("bad entry token '" + tok + "'");
        FieldElement term = F->from_int(sign * coef);
        if (param) {
            if (pval.owner() == nullptr) throw MalformedFile("entry uses unbound parameter '" + pname + "'");
            term = term * pval;
        }
        total += term;
        any = true;
    }
    if (!any) throw MalformedFile("empty entry");
    return total;
}

} // namespace detail

struct ParsedCm {
    CartanSpec spec;
    std::vector<std::vector<std::string>> tokens; // original entry tokens, for serialization
    long p = 0;
    int ext = 1;
};

inline ParsedCm parse_cm(const std::string& text,
                         const std::map<std::string, std::string>& param_overrides = {}) {
    std::istringstream in(text);
    std::string line;
    long p = -1;
    int ext = 1;
    std::string pname;
    std::string pvaltext;
    std::vector<int> parities;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first.rfind("p=", 0) == 0) {
            p = std::stol(first.substr(2));
        } else if (first.rfind("ext=", 0) == 0) {
            ext = std::stoi(first.substr(4));
        } else if (first == "param") {
            std::string rest;
            ls >> rest;
            auto eq = rest.find('=');
            if (eq == std::string::npos) throw MalformedFile("param line needs name=value");
            pname = rest.substr(0, eq);
            pvaltext = rest.substr(eq + 1);
        } else if (first.rfind("parities:", 0) == 0) {
            int b;
            while (ls >> b) parities.push_back(b);
        } else {
            std::vector<std::string> row;
            row.push_back(first);
            std::string tok;
            while (ls >> tok) row.push_back(tok);
            rows.push_back(std::move(row));
        }
    }
    if (p < 0) throw MalformedFile("missing p= header");
    const FieldSpec* F = p == 0 ? FieldSpec::rationals() : FieldSpec::gf(p, ext);
    FieldElement pval;
    if (!pname.empty()) {
        auto ov = param_overrides.find(pname);
        pval = F->parse(ov != param_overrides.end() ? ov->second : pvaltext);
    }
    int n = int(rows.size());
    if (n == 0) throw MalformedFile("no matrix rows");
    if (parities.empty()) parities.assign(n, 0);
    if (int(parities.size()) != n) throw MalformedFile("parities length mismatch");
    std::vector<DiagonalKind> kinds(n, DiagonalKind::EvZero);
    std::vector<std::vector<FieldElement>> a(n);
    for (int i = 0; i < n; ++i) {
        if (int(rows[i].size()) != n) throw MalformedFile("row length mismatch");
        a[i].assign(n, F->zero());
        for (int j = 0; j < n; ++j) {
            const std::string& tok = rows[i][j];
            if (i == j && (tok == "ev" || tok == "od")) {
                if (parities[i] != 0) throw MalformedFile("ev/od diagonal on an odd row");
                kinds[i] = tok == "ev" ? DiagonalKind::EvZero : DiagonalKind::EvOne;
                a[i][j] = F->from_int(tok == "ev" ? 0 : 1);
                continue;
            }
            a[i][j] = detail::parse_entry_token(F, tok, pname, pval);
            if (i == j) {
                bool odd = parities[i] != 0;
                if (a[i][j].is_zero())
                    kinds[i] = odd ? DiagonalKind::OddZero : DiagonalKind::EvZero;
                else if (odd)
                    kinds[i] = DiagonalKind::OddOne;
                else if (p == 2)
                    kinds[i] = DiagonalKind::EvOne;
                else
                    kinds[i] = DiagonalKind::Two;
            }
        }
    }
    CartanSpec spec(F, std::move(kinds), std::move(a), pname, pval);
    return ParsedCm{std::move(spec), std::move(rows), p, ext};
}

inline std::string serialize_cm(const ParsedCm& parsed) {
    std::ostringstream out;
    out << "p=" << parsed.p << "\n";
    if (parsed.ext != 1) out << "ext=" << parsed.ext << "\n";
    const auto& spec = parsed.spec;
    if (!spec.param_name().empty())
        out << "param " << spec.param_name() << "=" << spec.param_value().str() << "\n";
    out << "parities:";
    for (int i = 0; i < spec.size(); ++i) out << " " << spec.parity(i);
    out << "\n";
    for (const auto& row : parsed.tokens) {
        for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
        out << "\n";
    }
    return out.str();
}

inline std::string serialize_cm(const CartanSpec& spec) {
    ParsedCm p{spec, {}, spec.p(), spec.field()->extension_degree()};
    p.tokens.resize(spec.size());
    for (int i = 0; i < spec.size(); ++i) {
        for (int j = 0; j < spec.size(); ++j) {
            if (i == j && spec.kind(i) == DiagonalKind::EvZero)
                p.tokens[i].push_back("ev");
            else if (i == j && spec.kind(i) == DiagonalKind::EvOne)
                p.tokens[i].push_back("od");
            else
                p.tokens[i].push_back(spec.entry(i, j).str());
        }
    }
    return serialize_cm(p);
}

// ---------------------------------------------------------------------------
// Equivalence

// Row-rescaling equivalence with the identity permutation: kinds equal and
// diag(lambda) * A == B for some nonzero lambda_i.  Returns the scalings.
inline std::optional<std::vector<FieldElement>> equivalent_scaled(const CartanSpec& A, const CartanSpec& B) {
    if (A.field() != B.field() || A.size() != B.size()) return std::nullopt;
    int n = A.size();
    for (int i = 0; i < n; ++i) {
        if (kind_is_odd(A.kind(i)) != kind_is_odd(B.kind(i))) return std::nullopt;
        if (A.entry(i, i).is_zero() != B.entry(i, i).is_zero()) return std::nullopt;
    }
    std::vector<FieldElement> lambda(n);
    for (int i = 0; i < n; ++i) {
        FieldElement l;
        for (int j = 0; j < n; ++j) {
            bool az = A.entry(i, j).is_zero(), bz = B.entry(i, j).is_zero();
            if (az != bz) return std::nullopt;
            if (az) continue;
            FieldElement cand = B.entry(i, j) / A.entry(i, j);
            if (l.owner() == nullptr)
                l = cand;
            else if (!(l == cand))
                return std::nullopt;
        }
        if (l.owner() == nullptr) l = A.field()->one(); // zero row
        lambda[i] = l;
    }
    return lambda;
}

// Entrywise Frobenius power: realizes, at desk scale, the re-parameterization
// a -> a^p of parametric families (over the closure those give isomorphic
// algebras, and the catalogs list them once).
inline CartanSpec frobenius_twist(const CartanSpec& A, int power) {
    int n = A.size();
    std::vector<std::vector<FieldElement>> a(n, std::vector<FieldElement>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a[i][j] = A.entry(i, j);
            for (int m = 0; m < power; ++m) a[i][j] = a[i][j].frobenius();
        }
    FieldElement pv = A.param_value();
    if (pv.owner())
        for (int m = 0; m < power; ++m) pv = pv.frobenius();
    return CartanSpec(A.field(), A.kinds(), std::move(a), A.param_name(), pv);
}

// Rescaling equivalence allowing an entrywise field automorphism on A.
inline bool equivalent_scaled_galois(const CartanSpec& A, const CartanSpec& B) {
    int k = A.field()->is_rationals() ? 1 : A.field()->extension_degree();
    for (int m = 0; m < k; ++m)
        if (equivalent_scaled(m == 0 ? A : frobenius_twist(A, m), B)) return true;
    return false;
}

struct EquivalenceWitness {
    std::vector<int> perm;             // node i of A plays the role of perm[i] in B
    std::vector<FieldElement> scaling; // applied to the permuted rows of A
};

// Full equivalence: a permutation plus a row rescaling carrying (A, I) to
// (B, I').  Exhaustive over permutations (catalog sizes are <= 8).
inline std::optional<EquivalenceWitness> equivalent_pairs(const CartanSpec& A, const CartanSpec& B) {
    if (A.field() != B.field() || A.size() != B.size()) return std::nullopt;
    int n = A.size();
    std::vector<int> perm(n, -1);
    std::vector<bool> used(n, false);

    // feasibility of a full permutation: solve scalings row by row
    auto check_full = [&]() -> std::optional<std::vector<FieldElement>> {
        std::vector<FieldElement> lambda(n);
        for (int i = 0; i < n; ++i) {
            FieldElement l;
            for (int j = 0; j < n; ++j) {
                const FieldElement& x = A.entry(i, j);
                const FieldElement& y = B.entry(perm[i], perm[j]);
                if (x.is_zero() != y.is_zero()) return std::nullopt;
                if (x.is_zero()) continue;
                FieldElement cand = y / x;
                if (l.owner() == nullptr)
                    l = cand;
                else if (!(l == cand))
                    return std::nullopt;
            }
            if (l.owner() == nullptr) l = A.field()->one();
            lambda[i] = l;
        }
        return lambda;
    };

    std::optional<EquivalenceWitness> found;
    auto compatible = [&](int i, int img) {
        if (kind_is_odd(A.kind(i)) != kind_is_odd(B.kind(img))) return false;
        if (A.entry(i, i).is_zero() != B.entry(img, img).is_zero()) return false;
        // zero-pattern pruning against already assigned nodes
        for (int l = 0; l < i; ++l) {
            if (A.entry(i, l).is_zero() != B.entry(img, perm[l]).is_zero()) return false;
            if (A.entry(l, i).is_zero() != B.entry(perm[l], img).is_zero()) return false;
        }
        return true;
    };
    std::function<bool(int)> dfs = [&](int i) -> bool {
        if (i == n) {
            auto lam = check_full();
            if (lam) {
                found = EquivalenceWitness{perm, *lam};
                return true;
            }
            return false;
        }
        for (int img = 0; img < n; ++img) {
            if (used[img] || !compatible(i, img)) continue;
            used[img] = true;
            perm[i] = img;
            if (dfs(i + 1)) return true;
            used[img] = false;
            perm[i] = -1;
        }
        return false;
    };
    dfs(0);
    return found;
}

// ---------------------------------------------------------------------------
// Reflection exponents B_{k.}

// The case table, with Z/p viewed inside K via min_nonneg_int and the p=2
// exception (A_kk = A_kj nonzero reads as 2, not 0).  An odd non-isotropic
// row acts through the even root 2 sigma_k ((ad x)^2 = ad x^2), so its
// exponent doubles the representative of -A_kj/A_kk; reducing the doubled
// value mod p instead would undercut root strings longer than p.
inline std::vector<long> reflection_exponents(const CartanSpec& A, int k) {
    int n = A.size();
    long p = A.p();
    std::vector<long> B(n, 0);
    bool oddk = kind_is_odd(A.kind(k));
    const FieldElement& akk = A.entry(k, k);
    auto rep = [&](const FieldElement& v) -> long {
        if (p == 0) {
            const mpq_class& q = v.rational();
            if (q.get_den() != 1 || q < 0) throw std::runtime_error("non-integral reflection exponent");
            return q.get_num().get_si();
        }
        auto r = v.min_nonneg_int();
        return r ? *r : p - 1;
    };
    for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        const FieldElement& akj = A.entry(k, j);
        if (!akk.is_zero()) {
            if (p == 2 && akj == akk) {
                B[j] = 2; // the known exception
                continue;
            }
            if (oddk)
                B[j] = 2 * rep(-akj / akk);
            else
                B[j] = rep(-(A.field()->from_int(2) * akj) / akk);
        } else if (oddk) { // A_kk = 0
            B[j] = akj.is_zero() ? 0 : 1;
        } else { // even, A_kk = ev
            if (p == 0) throw std::runtime_error("isotropic even row in characteristic 0");
            B[j] = akj.is_zero() ? 0 : p - 1;
        }
    }
    return B;
}

inline long serre_exponent(const CartanSpec& A, int i, int j) {
    if (i == j) throw std::runtime_error("serre_exponent needs distinct nodes");
    return 1 + reflection_exponents(A, i)[j];
}

// ---------------------------------------------------------------------------
// Dynkin diagrams

struct DynkinDiagram {
    struct Edge {
        int i, j;
        std::string label; // empty for a plain single edge
        int multiplicity = 1;
        int arrow_to = -1; // node index the arrow points at, -1 for none
    };
    std::vector<DiagonalKind> nodes;
    std::vector<Edge> edges;
};

inline DynkinDiagram dynkin_diagram(const CartanSpec& A) {
    DynkinDiagram d;
    d.nodes = A.kinds();
    int n = A.size();
    long p = A.p();
    auto nonpos_int = [&](const FieldElement& v) -> std::optional<long> {
        // |v| for entries representing non-positive integers
        if (v.is_zero()) return 0;
        if (p == 0) {
            const mpq_class& q = v.rational();
            if (q.get_den() != 1 || q > 0) return std::nullopt;
            return -q.get_num().get_si();
        }
        auto r = v.min_nonneg_int();
        if (!r) return std::nullopt;
        return *r == 0 ? 0 : p - *r;
    };
    bool all_int = true;
    if (p != 2) {
        for (int i = 0; i < n && all_int; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && !nonpos_int(A.entry(i, j))) {
                    all_int = false;
                    break;
                }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const FieldElement &aij = A.entry(i, j), &aji = A.entry(j, i);
            if (aij.is_zero() && aji.is_zero()) continue;
            DynkinDiagram::Edge e{i, j, "", 1, -1};
            if (p == 2) {
                // char-2 finite-dimensional CMs are symmetric; label raw
                // entries other than 1
                if (!(aij == A.field()->one())) e.label = aij.str();
            } else if (all_int) {
                long mi = *nonpos_int(aij), mj = *nonpos_int(aji);
                e.multiplicity = int(std::max(mi, mj));
                if (mi > mj)
                    e.arrow_to = j;
                else if (mj > mi)
                    e.arrow_to = i;
            } else {
                e.label = aij.str() + "|" + aji.str();
            }
            d.edges.push_back(e);
        }
    return d;
}

inline std::string render_dynkin(const CartanSpec& A, const std::string& format) {
    DynkinDiagram d = dynkin_diagram(A);
    int n = int(d.nodes.size());
    std::ostringstream out;
    if (format == "dot") {
        out << "graph dynkin {\n";
        for (int i = 0; i < n; ++i) {
            const char* shape = "circle";
            switch (d.nodes[i]) {
                case DiagonalKind::Two: shape = "circle"; break;
                case DiagonalKind::EvOne: shape = "diamond"; break;
                case DiagonalKind::OddOne: shape = "point"; break;
                case DiagonalKind::OddZero: shape = "doublecircle"; break;
                case DiagonalKind::EvZero: shape = "Mcircle"; break;
            }
            out << "  n" << (i + 1) << " [shape=" << shape << ", label=\"" << (i + 1) << ":"
                << kind_glyph(d.nodes[i]) << "\"];\n";
        }
        for (const auto& e : d.edges) {
            out << "  n" << (e.i + 1) << " -- n" << (e.j + 1);
            std::string label = e.label;
            if (e.multiplicity > 1) label = "x" + std::to_string(e.multiplicity) + label;
            if (e.arrow_to >= 0) label += std::string(">") + std::to_string(e.arrow_to + 1);
            if (!label.empty()) out << " [label=\"" << label << "\"]";
            out << ";\n";
        }
        out << "}\n";
        return out.str();
    }
    // ascii: inline chain when the diagram is the path 1-2-...-n, otherwise
    // a node line plus an edge list
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : d.edges) {
        adj[e.i].push_back(e.j);
        adj[e.j].push_back(e.i);
    }
    bool path = true;
    for (int i = 0; i + 1 < n; ++i) {
        bool linked = false;
        for (const auto& e : d.edges)
            if ((e.i == i && e.j == i + 1) || (e.i == i + 1 && e.j == i)) linked = true;
        if (!linked) path = false;
    }
    if (int(d.edges.size()) != n - 1) path = false;
    auto edge_text = [&](const DynkinDiagram::Edge& e) {
        std::string s;
        if (e.multiplicity == 2) s = "=";
        else if (e.multiplicity == 3) s = "≡";
        else s = "—";
        if (!e.label.empty()) s = "—(" + e.label + ")—";
        if (e.arrow_to == e.j) s += ">";
        if (e.arrow_to == e.i) s = "<" + s;
        return s;
    };
    if (path && n > 1) {
        for (int i = 0; i < n; ++i) {
            out << kind_glyph(d.nodes[i]);
            if (i + 1 < n) {
                for (const auto& e : d.edges)
                    if ((e.i == i && e.j == i + 1) || (e.i == i + 1 && e.j == i)) out << edge_text(e);
            }
        }
        out << "\n";
        return out.str();
    }
    for (int i = 0; i < n; ++i) out << (i ? " " : "") << (i + 1) << ":" << kind_glyph(d.nodes[i]);
    out << "\n";
    for (const auto& e : d.edges)
        out << (e.i + 1) << edge_text(e) << (e.j + 1) << "\n";
    return out.str();
}

// Optional canonicalization: reorder nodes to minimize the bandwidth
// max |i-j| over nonzero entries (ties: lexicographically least row pattern).
inline CartanSpec best_order(const CartanSpec& A) {
    int n = A.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    long best_width = 1 << 20;
    std::vector<long> best_key;
    do {
        long width = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && !A.entry(perm[i], perm[j]).is_zero()) width = std::max<long>(width, std::abs(i - j));
        std::vector<long> key;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) key.push_back(A.entry(perm[i], perm[j]).is_zero() ? 0 : 1);
        if (width < best_width || (width == best_width && key < best_key)) {
            best_width = width;
            best = perm;
            best_key = key;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<DiagonalKind> kinds(n);
    std::vector<std::vector<FieldElement>> a(n, std::vector<FieldElement>(n));
    for (int i = 0; i < n; ++i) {
        kinds[i] = A.kind(best[i]);
        for (int j = 0; j < n; ++j) a[i][j] = A.entry(best[i], best[j]);
    }
    return CartanSpec(A.field(), std::move(kinds), std::move(a), A.param_name(), A.param_value());
}

} // namespace modchev
