#pragma once

// The shipped catalog: Cartan matrices, defining-relation lists, reflection
// tables and golden values, parsed from text files in the data directory
// (override with MODCHEV_DATA).  Serial families (sl, e, oc, oPi, oI) are
// synthesized in code; their relation lists follow the general patterns.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cartan.hpp"
#include "matrixreal.hpp"
#include "presentations.hpp"

namespace modchev {

struct UnknownCatalogEntry : std::runtime_error {
    explicit UnknownCatalogEntry(const std::string& key) : std::runtime_error("unknown catalog entry: " + key) {}
};

struct CatalogEntry {
    std::string name;
    long p = 0;
    int ext = 1;
    std::string param_name;
    std::string param_default;
    std::vector<std::string> cm_texts;                // 1-based via index+1
    std::vector<std::vector<std::string>> rel_texts;  // per cm, may be empty
    std::vector<std::vector<int>> table;              // reflection table, -1 = '-'
    std::pair<int, int> sdim{-1, -1};
    std::pair<int, int> core{-1, -1};
    bool has_core = false;
    int classes = -1;
    int coarse_classes = -1;
    std::string tier = "core";
    bool conjectural = false;
    std::string note;
    int ngens = 0;              // for entries presented by generators only (o_I)
    bool inhomogeneous = false; // o_I relations mix weights

    int cm_count() const { return int(cm_texts.size()); }

    CartanSpec cm(int index1, const std::map<std::string, std::string>& overrides = {}) const {
        if (index1 < 1 || index1 > cm_count()) throw UnknownCatalogEntry(name + " cm " + std::to_string(index1));
        return parse_cm(cm_texts[index1 - 1], overrides).spec;
    }
    std::vector<RelationExpr> relations(int index1) const {
        if (index1 < 1 || index1 > int(rel_texts.size()) || rel_texts[index1 - 1].empty()) return {};
        const FieldSpec* F = p == 0 ? FieldSpec::rationals() : FieldSpec::gf(p, ext);
        int gens = ngens;
        if (!cm_texts.empty()) gens = cm(index1).size();
        std::vector<RelationExpr> out;
        for (const auto& t : rel_texts[index1 - 1])
            out.push_back(parse_relation(t, F, gens, param_name, inhomogeneous));
        return out;
    }
};

namespace detail {

inline std::string data_dir() {
    if (const char* env = std::getenv("MODCHEV_DATA")) return env;
#ifdef MODCHEV_DEFAULT_DATA
    return MODCHEV_DEFAULT_DATA;
#else
    return "data";
#endif
}

inline CatalogEntry parse_cat_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UnknownCatalogEntry(path);
    CatalogEntry e;
    std::string line;
    std::string mode;
    std::ostringstream cmbuf;
    std::vector<std::string> relbuf;
    int relidx = -1;
    auto flush_cm = [&] {
        e.cm_texts.push_back(cmbuf.str());
        cmbuf.str("");
    };
    while (std::getline(in, line)) {
        std::string stripped = line;
        auto hash = stripped.find('#');
        if (hash != std::string::npos && mode.empty()) stripped = stripped.substr(0, hash);
        std::istringstream ls(stripped);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (mode == "cm") {
            if (tok == "endcm") {
                flush_cm();
                mode.clear();
            } else {
                cmbuf << stripped << "\n";
            }
            continue;
        }
        if (mode == "rels") {
            if (tok == "endrels") {
                if (int(e.rel_texts.size()) < relidx) e.rel_texts.resize(relidx);
                e.rel_texts[relidx - 1] = relbuf;
                relbuf.clear();
                mode.clear();
            } else {
                auto h2 = stripped.find('#');
                if (h2 != std::string::npos) stripped = stripped.substr(0, h2);
                bool blank = stripped.find_first_not_of(" \t") == std::string::npos;
                if (!blank) relbuf.push_back(stripped);
            }
            continue;
        }
        if (mode == "table") {
            if (tok == "endtable") {
                mode.clear();
            } else {
                std::vector<int> row;
                std::istringstream rs(stripped);
                std::string cell;
                while (rs >> cell) row.push_back(cell == "-" ? -1 : std::stoi(cell));
                e.table.push_back(std::move(row));
            }
            continue;
        }
        if (tok == "name") ls >> e.name;
        else if (tok == "p") ls >> e.p;
        else if (tok == "ext") ls >> e.ext;
        else if (tok == "param") {
            std::string pv;
            ls >> pv;
            auto eq = pv.find('=');
            e.param_name = pv.substr(0, eq);
            e.param_default = pv.substr(eq + 1);
        } else if (tok == "sdim")
            ls >> e.sdim.first >> e.sdim.second;
        else if (tok == "core") {
            ls >> e.core.first >> e.core.second;
            e.has_core = true;
        } else if (tok == "classes")
            ls >> e.classes;
        else if (tok == "coarse_classes")
            ls >> e.coarse_classes;
        else if (tok == "tier")
            ls >> e.tier;
        else if (tok == "conjectural")
            e.conjectural = true;
        else if (tok == "note") {
            std::getline(ls, e.note);
        } else if (tok == "cm") {
            mode = "cm";
            cmbuf.str("");
            cmbuf << "p=" << e.p << "\n";
            if (e.ext != 1) cmbuf << "ext=" << e.ext << "\n";
            if (!e.param_name.empty()) cmbuf << "param " << e.param_name << "=" << e.param_default << "\n";
        } else if (tok == "rels") {
            ls >> relidx;
            if (int(e.rel_texts.size()) < relidx) e.rel_texts.resize(relidx);
            mode = "rels";
        } else if (tok == "table") {
            mode = "table";
        }
    }
    if (e.rel_texts.size() < e.cm_texts.size()) e.rel_texts.resize(e.cm_texts.size());
    return e;
}

// --- synthesized families ---------------------------------------------------

// e(n) Cartan matrix at p = 2 from a parity string; nodes follow the e(8)
// numbering 1-2-3-4-5-6-7 chain with 8 on node 5, truncated from the left
// for e(7)/e(6) and renumbered.
inline std::string e_cm_text(int n, const std::string& bits) {
    int branch = n == 6 ? 3 : (n == 7 ? 4 : 5);
    std::ostringstream out;
    out << "p=2\nparities:";
    for (char c : bits) out << (c == '1' ? " 1" : " 0");
    out << "\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out << " ";
            bool adj = (j == i + 1 && j < n - 1) || (i == j + 1 && i < n - 1) ||
                       (i + 1 == branch && j == n - 1) || (j + 1 == branch && i == n - 1);
            if (i == j)
                out << (bits[i] == '1' ? "0" : "ev");
            else
                out << (adj ? "1" : "0");
        }
        out << "\n";
    }
    return out.str();
}

// non-Serre relations of e(8) in characteristic 2; e(7)/e(6) delete the
// relations containing x1 (resp. x1, x2) and shift indices down
inline std::vector<std::string> e_relation_texts(int n) {
    static const std::vector<std::string> e8 = {
        "[[x1,x2],[x2,x3]]",
        "[[x2,x3],[x3,x4]]",
        "[[x3,x4],[x4,x5]]",
        "[[x4,x5],[x5,x6]]",
        "[[x5,x6],[x6,x7]]",
        "[[x4,x5],[x5,x8]]",
        "[[x5,x6],[x5,x8]]",
        "[[x4,[x5,x6]],[x4,[x5,x8]]]",
        "[[x4,[x5,x6]],[x8,[x5,x6]]]",
        "[[x4,[x5,x8]],[x8,[x5,x6]]]",
        "[[x3,[x4,[x5,x6]]],[x3,[x4,[x5,x8]]]]",
        "[[x4,[x5,[x6,x7]]],[x8,[x5,[x6,x7]]]]",
        "[[x2,[x3,[x4,[x5,x6]]]],[x2,[x3,[x4,[x5,x8]]]]]",
        "[[x1,[x2,[x3,[x4,[x5,x6]]]]],[x1,[x2,[x3,[x4,[x5,x8]]]]]]",
    };
    int drop = 8 - n; // generators x1..xdrop disappear
    std::vector<std::string> out;
    for (const auto& r : e8) {
        bool contains_low = false;
        for (int g = 1; g <= drop; ++g)
            if (r.find("x" + std::to_string(g) + ",") != std::string::npos ||
                r.find("x" + std::to_string(g) + "]") != std::string::npos)
                contains_low = true;
        if (contains_low) continue;
        // decrease indices by drop
        std::string s;
        for (size_t i = 0; i < r.size(); ++i) {
            if (r[i] == 'x' && i + 1 < r.size() && isdigit(static_cast<unsigned char>(r[i + 1]))) {
                int v = r[i + 1] - '0';
                s += "x" + std::to_string(v - drop);
                ++i;
            } else {
                s += r[i];
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

// sl(n+1): chain diagram; char 2 adds [[x_{i-1},x_i],[x_i,x_{i+1}]] = 0
inline std::string sl_cm_text(int nplus1, long p) {
    int n = nplus1 - 1;
    std::ostringstream out;
    out << "p=" << p << "\nparities:";
    for (int i = 0; i < n; ++i) out << " 0";
    out << "\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out << " ";
            if (i == j)
                out << (p == 2 ? "ev" : "2");
            else if (std::abs(i - j) == 1)
                out << (p == 2 ? "1" : "-1");
            else
                out << "0";
        }
        out << "\n";
    }
    return out.str();
}
inline std::vector<std::string> sl_relation_texts(int nplus1) {
    int n = nplus1 - 1;
    std::vector<std::string> out;
    for (int i = 2; i < n; ++i)
        out.push_back("[[x" + std::to_string(i - 1) + ",x" + std::to_string(i) + "],[x" + std::to_string(i) +
                      ",x" + std::to_string(i + 1) + "]]");
    return out;
}

// chains of nodes: the non-Serre relations of the form (two chains differing
// in the last node); reproduces the sl and e lists
inline std::vector<std::string> node_chain_relations(const CartanSpec& A) {
    int n = A.size();
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !A.entry(i, j).is_zero()) adj[i].push_back(j);
    std::vector<std::string> out;
    // enumerate chains i_1..i_{k-1} plus two distinct tails
    std::vector<int> chain;
    std::vector<bool> used(n, false);
    std::function<void()> rec = [&]() {
        if (chain.size() >= 1) {
            int last = chain.back();
            for (int a : adj[last])
                for (int b : adj[last]) {
                    if (a >= b || used[a] || used[b]) continue;
                    auto wrap = [&](int tail) {
                        std::string s = "x" + std::to_string(tail + 1);
                        for (int q = int(chain.size()) - 1; q >= 0; --q)
                            s = "[x" + std::to_string(chain[q] + 1) + "," + s + "]";
                        return s;
                    };
                    out.push_back("[" + wrap(a) + "," + wrap(b) + "]");
                }
        }
        for (int next = 0; next < n; ++next) {
            if (used[next]) continue;
            if (!chain.empty()) {
                bool linked = false;
                for (int a : adj[chain.back()])
                    if (a == next) linked = true;
                if (!linked) continue;
            }
            used[next] = true;
            chain.push_back(next);
            rec();
            chain.pop_back();
            used[next] = false;
        }
    };
    rec();
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}


// --- orthogonal series entries ------------------------------------------------

// oc(i;2n) (+) K I_0: the Cartan-matrix relative of o_Pi(2n); relations per
// the o_P_2n theorem (n >= 4)
inline CatalogEntry oc_catalog_entry(int twon) {
    int n = twon / 2;
    const FieldSpec* F = FieldSpec::gf(2);
    int level = n % 2 ? 2 : 1;
    MatrixAlgebra alg = oc(level, n, F, true);
    ChevalleySet ch = chevalley_oc(alg, n);
    std::vector<int> parities(n, 0);
    CartanSpec A = cartan_from_generators(alg, ch.x, ch.h, parities);
    CatalogEntry e;
    e.name = "oc2-" + std::to_string(twon);
    e.p = 2;
    e.cm_texts.push_back(serialize_cm(A));
    std::vector<std::string> rels;
    auto xs = [](int i) { return "x" + std::to_string(i); };
    for (int i = 2; i <= n - 2; ++i)
        rels.push_back("[[" + xs(i - 1) + "," + xs(i) + "],[" + xs(i) + "," + xs(i + 1) + "]]");
    rels.push_back("[[" + xs(n - 3) + "," + xs(n - 2) + "],[" + xs(n - 2) + "," + xs(n) + "]]");
    rels.push_back("[[" + xs(n - 2) + "," + xs(n - 1) + "],[" + xs(n - 2) + "," + xs(n) + "]]");
    rels.push_back("[[" + xs(n - 3) + ",[" + xs(n - 2) + "," + xs(n - 1) + "]],[" + xs(n) + ",[" + xs(n - 1) +
                   "," + xs(n - 2) + "]]]");
    rels.push_back("[[" + xs(n - 3) + ",[" + xs(n - 2) + "," + xs(n) + "]],[" + xs(n) + ",[" + xs(n - 1) + "," +
                   xs(n - 2) + "]]]");
    for (int i = 1; i <= n - 3; ++i) {
        std::string chain = "[" + xs(n - 3) + "," + xs(n - 2) + "]";
        for (int k = n - 4; k >= i; --k) chain = "[" + xs(k) + "," + chain + "]";
        rels.push_back("[[" + xs(n - 1) + "," + chain + "],[" + xs(n) + "," + chain + "]]");
    }
    e.rel_texts.push_back(rels);
    e.sdim = {2 * n * n - n + 2, 0};
    e.tier = "core";
    return e;
}

// o^(1)_Pi(2n+1); relations per the o_P_2n+1 theorem
inline CatalogEntry oPi_odd_catalog_entry(int m) {
    int n = (m - 1) / 2;
    const FieldSpec* F = FieldSpec::gf(2);
    MatrixAlgebra base = aut_algebra(oo_form("PI", m, 0, F));
    auto der = derived_matrices(base, 1);
    std::vector<SuperMatrix> mats;
    std::vector<int> pars;
    for (auto& [mm, q] : der) {
        mats.push_back(std::move(mm));
        pars.push_back(q);
    }
    MatrixAlgebra alg(F, std::move(mats), std::move(pars));
    ChevalleySet ch = chevalley_oPi_odd(alg, n);
    std::vector<int> parities(n, 0);
    CartanSpec A = cartan_from_generators(alg, ch.x, ch.h, parities);
    CatalogEntry e;
    e.name = "oPi" + std::to_string(m);
    e.p = 2;
    e.cm_texts.push_back(serialize_cm(A));
    std::vector<std::string> rels;
    auto xs = [](int i) { return "x" + std::to_string(i); };
    for (int i = 2; i <= n - 2; ++i)
        rels.push_back("[[" + xs(i - 1) + "," + xs(i) + "],[" + xs(i) + "," + xs(i + 1) + "]]");
    e.rel_texts.push_back(rels);
    e.sdim = {2 * n * n + n, 0};
    e.tier = "core";
    return e;
}

// o^(1)_I(2n): generators X_i = E_{i,i+1} + E_{i+1,i}; whole-algebra
// presentation with weight-mixing relations
inline CatalogEntry oI_catalog_entry(int m) {
    int g = m - 1;
    CatalogEntry e;
    e.name = "oI" + std::to_string(m);
    e.p = 2;
    e.ngens = g;
    e.inhomogeneous = true;
    std::vector<std::string> rels;
    auto xs = [](int i) { return "x" + std::to_string(i); };
    for (int i = 1; i <= g; ++i)
        for (int j = i + 2; j <= g; ++j) rels.push_back("[" + xs(i) + "," + xs(j) + "]");
    for (int i = 1; i <= g - 1; ++i) {
        rels.push_back("[" + xs(i) + ",[" + xs(i) + "," + xs(i + 1) + "]] = " + xs(i + 1));
        rels.push_back("[" + xs(i + 1) + ",[" + xs(i) + "," + xs(i + 1) + "]] = " + xs(i));
    }
    for (int i = 2; i <= g - 1; ++i)
        rels.push_back("[[" + xs(i - 1) + "," + xs(i) + "],[" + xs(i) + "," + xs(i + 1) + "]]");
    e.rel_texts.push_back(rels);
    e.sdim = {m * (m - 1) / 2, 0};
    e.tier = "core";
    return e;
}

} // namespace detail

inline const CatalogEntry& catalog(const std::string& key) {
    static std::map<std::string, CatalogEntry> cache;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    CatalogEntry e;
    if (key.rfind("sl", 0) == 0 && key.size() > 2 && isdigit(static_cast<unsigned char>(key[2]))) {
        int nplus1 = std::stoi(key.substr(2));
        e.name = key;
        e.p = 2;
        e.cm_texts.push_back(detail::sl_cm_text(nplus1, 2));
        e.rel_texts.push_back(detail::sl_relation_texts(nplus1));
        e.tier = "core";
    } else if (key == "e6" || key == "e7" || key == "e8") {
        int n = key[1] - '0';
        e.name = key;
        e.p = 2;
        e.cm_texts.push_back(detail::e_cm_text(n, std::string(n, '0')));
        e.rel_texts.push_back(detail::e_relation_texts(n));
        e.sdim = n == 6 ? std::pair{78, 0} : (n == 7 ? std::pair{134, 0} : std::pair{248, 0});
        e.tier = n == 6 ? "core" : "extended";
    } else if (key.rfind("e", 0) == 0 && key.find('-') != std::string::npos && key.size() >= 4 &&
               isdigit(static_cast<unsigned char>(key[1]))) {
        int n = key[1] - '0';
        std::string variant = key.substr(3);
        e.name = key;
        e.p = 2;
        static const std::map<std::string, std::tuple<std::string, std::pair<int, int>, std::pair<int, int>, int>>
            table = {
                {"e6-1", {"000010", {46, 32}, {-1, -1}, 27}},  {"e6-6", {"000001", {38, 40}, {-1, -1}, 36}},
                {"e7-1", {"1000000", {80, 54}, {78, 54}, 28}}, {"e7-6", {"0000010", {70, 64}, {68, 64}, 63}},
                {"e7-7", {"0000001", {64, 70}, {62, 70}, 35}}, {"e8-1", {"10000000", {136, 112}, {-1, -1}, 120}},
                {"e8-8", {"00000001", {120, 128}, {-1, -1}, 135}},
            };
        auto f = table.find(key);
        if (f == table.end()) throw UnknownCatalogEntry(key);
        const auto& [bits, sdim, core, classes] = f->second;
        e.cm_texts.push_back(detail::e_cm_text(n, bits));
        e.rel_texts.push_back(detail::e_relation_texts(n));
        e.sdim = sdim;
        if (core.first >= 0) {
            e.core = core;
            e.has_core = true;
        }
        e.classes = classes;
        e.tier = n >= 7 ? "extended" : "core";
    } else if (key.rfind("oc2-", 0) == 0) {
        int twon = std::stoi(key.substr(4));
        e = detail::oc_catalog_entry(twon);
    } else if (key.rfind("oPi", 0) == 0) {
        int m = std::stoi(key.substr(3));
        e = detail::oPi_odd_catalog_entry(m);
    } else if (key.rfind("oI", 0) == 0) {
        int m = std::stoi(key.substr(2));
        e = detail::oI_catalog_entry(m);
    } else {
        e = detail::parse_cat_file(detail::data_dir() + "/catalog/" + key + ".cat");
    }
    return cache.emplace(key, std::move(e)).first->second;
}

inline std::vector<std::string> catalog_file_names() {
    std::vector<std::string> out;
    std::filesystem::path dir = std::filesystem::path(detail::data_dir()) / "catalog";
    if (!std::filesystem::exists(dir)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".cat") out.push_back(entry.path().stem().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace modchev
