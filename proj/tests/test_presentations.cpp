#include <catch2/catch_amalgamated.hpp>

#include "modchev/presentations.hpp"

using namespace modchev;

static CartanSpec cm(const std::string& text) { return parse_cm(text).spec; }

TEST_CASE("relation parsing and homogeneity") {
    auto F = FieldSpec::gf(3);
    auto r = parse_relation("[x3,[x2,x4]] - [x4,[x2,x3]]", F, 4);
    CHECK(r.terms.size() == 2);
    // inhomogeneous should throw
    CHECK_THROWS(parse_relation("[x1,x2] + [x1,x3]", F, 3));
    auto F4 = FieldSpec::gf(2, 2);
    auto pr = parse_relation("[x2,[x1,x3]] = a [x3,[x1,x2]]", F4, 3, "a");
    CHECK(pr.terms.size() == 2);
    auto co = parse_relation("(1+a) [x1,x2]", F4, 2, "a");
    CHECK(co.terms.size() == 1);
    CHECK(co.terms[0].first.eval(F4->generator()) == F4->one() + F4->generator());
    auto ad = parse_relation("ad(x1,2,x2)", F, 2);
    REQUIRE(ad.terms.size() == 1);
    CHECK(ad.terms[0].second.str() == "[x1,[x1,x2]]");
}

TEST_CASE("Serre relations of sl(3) over Q") {
    auto A = cm("p=0\nparities: 0 0\n2 -1\n-1 2\n");
    auto rels = serre_relations(A);
    REQUIRE(rels.size() == 2);
    CHECK(rels[0].terms[0].second.str() == "[x1,[x1,x2]]");
    GAlgebra g(A);
    auto rep = verify(g, rels);
    CHECK(rep.all_zero);
}

TEST_CASE("Serre relations: isotropic and p=3 cube cases") {
    auto A = cm("p=2\nparities: 1 1\n0 1\n1 0\n");
    auto rels = serre_relations(A);
    bool has_sq = false;
    for (const auto& r : rels) has_sq |= r.str().find("sq(x1)") != std::string::npos;
    CHECK(has_sq);
    GAlgebra g(A);
    CHECK(verify(g, rels).all_zero);

    auto B = cm("p=3\nparities: 1 1\n0 -1\n-2 1\n");
    auto rels3 = serre_relations(B);
    bool has_cube = false;
    for (const auto& r : rels3) has_cube |= r.str().find("[x2,[x2,x2]]") != std::string::npos;
    CHECK(has_cube);
    GAlgebra g3(B);
    CHECK(verify(g3, rels3).all_zero);
}

TEST_CASE("negative control: perturbed relation has a nonzero residual") {
    auto A = cm("p=0\nparities: 0 0\n2 -1\n-1 2\n");
    GAlgebra g(A);
    auto bad = parse_relation("[x1,[x1,x2]] + [x1,[x2,x1]]", A.field(), 2); // = 2[x1,[x1,x2]]... no wait
    // [x1,[x2,x1]] = -[x1,[x1,x2]], so that vanishes; use a genuinely bad one
    auto bad2 = parse_relation("[x1,x2]", A.field(), 2);
    auto rep = verify(g, {bad2});
    CHECK(!rep.all_zero);
    CHECK(!rep.entries[0].residual.empty());
}

TEST_CASE("free Lie superalgebra facts via the quotient engine") {
    // one odd generator, p = 0: x, [x,x] survive; [x,[x,x]] dies by Jacobi
    NilpotentQuotient nq0(FieldSpec::rationals(), {1}, {}, {}, 5);
    CHECK(nq0.total_dim() == 2);
    // p = 3 without the cube relation: [x,[x,x]] survives
    NilpotentQuotient nq3(FieldSpec::gf(3), {1}, {}, {}, 3);
    CHECK(nq3.total_dim() >= 3);
    // p = 3 with the cube relation: matches osp(1|2)
    auto rel = parse_relation("[x1,[x1,x1]]", FieldSpec::gf(3), 1);
    NilpotentQuotient nq3c(FieldSpec::gf(3), {1}, {rel}, {}, 6);
    CHECK(nq3c.total_dim() == 2);
}

TEST_CASE("completeness: sl(3) and sl(4) over Q need only Serre") {
    auto sl3 = cm("p=0\nparities: 0 0\n2 -1\n-1 2\n");
    auto v = completeness_check(sl3, {});
    CHECK(v.pass);
    CHECK(v.quotient_dim == 3);
    auto sl4 = cm("p=0\nparities: 0 0 0\n2 -1 0\n-1 2 -1\n0 -1 2\n");
    auto v4 = completeness_check(sl4, {});
    CHECK(v4.pass);
    CHECK(v4.quotient_dim == 6);
}

TEST_CASE("sl(4) in characteristic 2: Serre alone fails at (1,2,1)") {
    auto sl4 = cm("p=2\nparities: 0 0 0\nev 1 0\n1 ev 1\n0 1 ev\n");
    auto v = completeness_check(sl4, {});
    CHECK(!v.pass);
    CHECK(v.first_failure == Degree({1, 2, 1}));
    // adding the non-Serre relation fixes it
    auto extra = parse_relation("[[x1,x2],[x2,x3]]", sl4.field(), 3);
    auto v2 = completeness_check(sl4, {extra});
    CHECK(v2.pass);
    CHECK(v2.quotient_dim == 6);
}

TEST_CASE("completeness: wk(3;a) with the catalog relations") {
    auto wk3 = cm("p=2\next=2\nparam a=t\nparities: 0 0 0\nev a 0\na ev 1\n0 1 ev\n");
    std::vector<RelationExpr> extra = {
        parse_relation("[[x1,x2],[x3,[x1,x2]]]", wk3.field(), 3, "a"),
        parse_relation("[[x2,x3],[x3,[x1,x2]]]", wk3.field(), 3, "a"),
    };
    auto v = completeness_check(wk3, extra);
    INFO("first failure at degree "
         << (v.pass ? std::string("-")
                    : std::to_string(v.first_failure[0]) + "," + std::to_string(v.first_failure[1]) + "," +
                          std::to_string(v.first_failure[2])));
    CHECK(v.pass);
    CHECK(v.quotient_dim == 7);
    // verification inside the build as well
    GAlgebra g(wk3);
    CHECK(verify(g, extra).all_zero);
    // Serre alone must fail
    CHECK(!completeness_check(wk3, {}).pass);
}

TEST_CASE("completeness: brj(2;3) with the catalog relations") {
    auto A = cm("p=3\nparities: 1 1\n0 -1\n-2 1\n");
    std::vector<RelationExpr> extra = {
        parse_relation("ad([x1,x2],2,x2)", A.field(), 2),
        parse_relation("ad([x2,x2],2,[x1,x2])", A.field(), 2),
    };
    GAlgebra g(A);
    CHECK(verify(g, extra).all_zero);
    auto v = completeness_check(A, extra);
    CHECK(v.pass);
}
