#include <catch2/catch_amalgamated.hpp>

#include "modchev/contragredient.hpp"

using namespace modchev;

static CartanSpec cm(const std::string& text) { return parse_cm(text).spec; }

TEST_CASE("rank-1 classical: sl(2) over Q") {
    GAlgebra g(cm("p=0\nparities: 0\n2\n"));
    CHECK(g.dim() == 3);
    CHECK(g.sdim() == std::pair<int, int>(3, 0));
    auto rep = check_axioms(g);
    INFO(rep.first_failure);
    CHECK(rep.ok);
}

TEST_CASE("gl(2) over GF(2): Cartan matrix (ev), dim 4 and solvable") {
    GAlgebra g(cm("p=2\nparities: 0\nev\n"));
    CHECK(g.dim() == 4);
    auto fp = iso_fingerprint(g);
    // derived series shrinks to zero: solvable
    REQUIRE(!fp.derived_sdims.empty());
    auto last = fp.derived_sdims.back();
    CHECK(last.first + last.second < 4);
    auto rep = check_axioms(g);
    INFO(rep.first_failure);
    CHECK(rep.ok);
}

TEST_CASE("gl(2|2)-type rank 1: Cartan matrix (0) odd, sdim 2|2") {
    GAlgebra g(cm("p=0\nparities: 1\n0\n"));
    CHECK(g.sdim() == std::pair<int, int>(2, 2));
    auto rep = check_axioms(g);
    INFO(rep.first_failure);
    CHECK(rep.ok);
}

TEST_CASE("osp(1|2): Cartan matrix (1) odd") {
    for (long p : {0L, 5L, 3L}) {
        GAlgebra g(cm("p=" + std::to_string(p) + "\nparities: 1\n1\n"));
        INFO("p = " << p);
        CHECK(g.sdim() == std::pair<int, int>(3, 2));
        auto rep = check_axioms(g);
        INFO(rep.first_failure);
        CHECK(rep.ok);
    }
}

TEST_CASE("o(3)^(1) over GF(2): Cartan matrix (od)") {
    GAlgebra g(cm("p=2\nparities: 0\nod\n"));
    CHECK(g.dim() == 3);
}

TEST_CASE("sl(3) over Q: roots and dimensions") {
    GAlgebra g(cm("p=0\nparities: 0 0\n2 -1\n-1 2\n"));
    CHECK(g.dim() == 8);
    auto roots = g.roots();
    int pos = 0, even = 0;
    for (const auto& r : roots) {
        int h = 0;
        for (int x : r.degree) h += x;
        if (h > 0) {
            ++pos;
            if (!r.parity) ++even;
            CHECK(r.dim == 1);
        }
    }
    CHECK(pos == 3);
    CHECK(even == 3);
    auto rep = check_axioms(g);
    INFO(rep.first_failure);
    CHECK(rep.ok);
}

TEST_CASE("sl(4) over GF(2): dims of the positive part") {
    GAlgebra g(cm("p=2\nparities: 0 0 0\nev 1 0\n1 ev 1\n0 1 ev\n"));
    // gl(4) at p=2: 6 positive roots, cartan 3 + deficiency 1
    CHECK(g.positive_dim() == 6);
    CHECK(g.dim() == 16);
    auto rep = check_axioms(g);
    INFO(rep.first_failure);
    CHECK(rep.ok);
}

TEST_CASE("brj(2;3): sdim 10|8") {
    GAlgebra g(cm("p=3\nparities: 1 1\n0 -1\n-2 1\n"));
    CHECK(g.sdim() == std::pair<int, int>(10, 8));
    auto rep = check_axioms(g);
    INFO(rep.first_failure);
    CHECK(rep.ok);
}

TEST_CASE("wk(3;a) at a=t over GF(4): dim 18, core 16") {
    GAlgebra g(cm("p=2\next=2\nparam a=t\nparities: 0 0 0\nev a 0\na ev 1\n0 1 ev\n"));
    CHECK(g.sdim() == std::pair<int, int>(18, 0));
    auto core = simple_core_sdim(g);
    CHECK(core.first == std::pair<int, int>(16, 0));
    auto rep = check_axioms(g);
    INFO(rep.first_failure);
    CHECK(rep.ok);
}

TEST_CASE("completion and central elements") {
    // invertible: no completion rows, no central elements
    GAlgebra sl3(cm("p=0\nparities: 0 0\n2 -1\n-1 2\n"));
    CHECK(sl3.deficiency() == 0);
    CHECK(sl3.central_elements().empty());

    // gl-type degenerate: one completion row, one central element, and the
    // central element commutes with the generators
    GAlgebra g(cm("p=0\nparities: 1\n0\n"));
    CHECK(g.deficiency() == 1);
    auto cz = g.central_elements();
    REQUIRE(cz.size() == 1);
    for (int i = 0; i < 1; ++i) {
        CHECK(bracket_sv(g, cz[0], sv_unit(g.e_index(i), g.field()->one())).empty());
        CHECK(bracket_sv(g, cz[0], sv_unit(g.f_index(i), g.field()->one())).empty());
    }
}

TEST_CASE("squaring tables polarize to brackets (characteristic 2)") {
    GAlgebra g(cm("p=2\nparities: 1 1\n0 1\n1 0\n"));
    auto rep = check_axioms(g);
    INFO(rep.first_failure);
    CHECK(rep.ok);
    CHECK(g.has_squaring());
}

TEST_CASE("height cap reports non-closing input") {
    // affine-type matrix: sl(2)-hat never closes
    CHECK_THROWS_AS(GAlgebra(cm("p=0\nparities: 0 0\n2 -2\n-2 2\n"), BuildOptions{12, 0, false}),
                    HeightCapExceeded);
}

TEST_CASE("ag(2) reflections follow the paper table") {
    const char* AG2_1 =
        "p=0\nparities: 1 0 0\n"
        "0 -1 0\n"
        "-1 2 -3\n"
        "0 -1 2\n";
    const char* AG2_2 =
        "p=0\nparities: 1 1 0\n"
        "0 -1 0\n"
        "-1 0 3\n"
        "0 -1 2\n";
    auto a1 = cm(AG2_1), a2 = cm(AG2_2);
    auto r = reflect_cm(a1, 0);
    auto scal = equivalent_scaled(r, a2);
    INFO(serialize_cm(r));
    CHECK(scal.has_value());
    // involution: reflecting back lands in class 1
    auto back = reflect_cm(r, 0);
    CHECK(equivalent_scaled(back, a1).has_value());
    // non-isotropic nodes are rejected
    CHECK_THROWS_AS(reflect_cm(a1, 1), ReflectionInadmissible);
}

TEST_CASE("enumerate ag(2): 4 classes") {
    auto a1 = cm(
        "p=0\nparities: 1 0 0\n"
        "0 -1 0\n"
        "-1 2 -3\n"
        "0 -1 2\n");
    auto cls = enumerate_cm_classes(a1);
    CHECK(cls.classes.size() == 4);
    CHECK(cls.boxed[0]);
}
