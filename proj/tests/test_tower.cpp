#include <doctest.h>

#include "dga/atlas.hpp"
#include "dga/series.hpp"
#include "test_util.hpp"

using namespace dga;

TEST_CASE("kill_bottom") {
    RationalField q;
    auto A = sphere_algebra(q, 2);
    SUBCASE("killing R against itself is exact") {
        auto R = algebra_as_module(A, Side::Left);
        auto step = kill_bottom(R);
        CHECK(step.level == 0);
        CHECK(step.beta == 1);
        CHECK(step.next->complex().cohomology().h.support_empty());
        CHECK(step.map.validate().empty());
    }
    SUBCASE("killing k leaves one class in degree 1") {
        auto k = trivial_k_module(A, Side::Left);
        auto step = kill_bottom(k);
        CHECK(step.beta == 1);
        auto h = step.next->complex().cohomology().h;
        CHECK(h.dim(1) == 1);
        CHECK(h.dim(0) == 0);
        CHECK(h.dim(2) == 0);
        CHECK(h.dim(3) == 0);
    }
    SUBCASE("the x-cone has beta^0 = 1") {
        auto M = testutil::x_cone(A, 2);
        auto step = kill_bottom(M);
        CHECK(step.level == 0);
        CHECK(step.beta == 1);
    }
    SUBCASE("zero module raises nothing-to-kill") {
        auto Z = free_module(A, {});
        CHECK_THROWS_AS(kill_bottom(Z), NothingToKillError);
    }
    SUBCASE("window-edge inf raises inconclusive") {
        // k-module data visible only on [0, 2] with no lower certificate
        GradedSpace sp(Window(0, 2, false, true));
        sp.set_dim(0, 1);
        CochainComplex<RationalField> cx(q, sp);
        std::map<int, std::vector<std::string>> labels{{0, {"m"}}};
        ModPtr<RationalField> M = std::make_shared<DGModule<RationalField>>(
            Side::Left, A, cx, labels, StructTable<RationalField>{});
        CHECK_THROWS_AS(kill_bottom(M), InconclusiveWindowError);
    }
}

TEST_CASE("build_tower frozen instances") {
    RationalField q;
    auto A = sphere_algebra(q, 2);
    SUBCASE("k over sphere(2): all Betti numbers 1, never terminates") {
        auto k = trivial_k_module(A, Side::Left);
        auto tw = build_tower(k, 6);
        REQUIRE(tw.steps.size() == 7);
        for (auto& s : tw.steps) CHECK(s.beta == 1);
        CHECK(!tw.terminated);
        auto p = tw.pcd();
        CHECK(!p.exact);
        CHECK(p.value == ExtInt(6));  // at-least
    }
    SUBCASE("a free module resolves itself") {
        auto Fm = free_module(A, {{"g", 3}});
        auto tw = build_tower(Fm, 6);
        CHECK(tw.terminated);
        CHECK(tw.certified);
        auto b = tw.betti();
        REQUIRE(b.size() == 1);
        CHECK(b.at(3) == 1);
        CHECK(tw.pcd().value == ExtInt(3));
        CHECK(tw.pcd().exact);
        // M<4> vanishes
        CHECK(tw.top->complex().cohomology().h.support_empty());
    }
    SUBCASE("the x-cone instance: beta = {0:1, 1:1}, pcd 1") {
        auto M = testutil::x_cone(A, 2);
        auto tw = build_tower(M, 5);
        CHECK(tw.terminated);
        CHECK(tw.certified);
        auto b = tw.betti();
        REQUIRE(b.size() == 2);
        CHECK(b.at(0) == 1);
        CHECK(b.at(1) == 1);
        CHECK(tw.pcd().value == ExtInt(1));
    }
    SUBCASE("free module on degrees {0,3}: beta = {0:1, 3:1}, pcd 3") {
        auto M = free_module(A, {{"a", 0}, {"b", 3}});
        auto tw = build_tower(M, 6);
        CHECK(tw.terminated);
        CHECK(tw.certified);
        auto b = tw.betti();
        REQUIRE(b.size() == 2);
        CHECK(b.at(0) == 1);
        CHECK(b.at(3) == 1);
        CHECK(tw.pcd().value == ExtInt(3));
        CHECK(tw.pcd().exact);
    }
    SUBCASE("zero module: pcd = -inf exactly") {
        auto Z = free_module(A, {});
        auto tw = build_tower(Z, 4);
        CHECK(tw.base_is_zero);
        CHECK(tw.pcd().value == ExtInt::neg_inf());
        CHECK(tw.pcd().exact);
    }
}

TEST_CASE("betti additivity under direct sums") {
    RationalField q;
    auto A = sphere_algebra(q, 2);
    auto k = trivial_k_module(A, Side::Left);
    auto M = direct_sum(k, shift_module(k, -4));
    auto b = betti_numbers(M, Window(0, 9));
    auto bk = betti_numbers(k, Window(0, 9));
    for (int j = 0; j <= 8; ++j) {
        int expect = (bk.beta.count(j) ? bk.beta.at(j) : 0) + (bk.beta.count(j - 4) ? bk.beta.at(j - 4) : 0);
        int got = b.beta.count(j) ? b.beta.at(j) : 0;
        CHECK(got == expect);
    }
}

TEST_CASE("Lemma 2.1(i): the first Betti number equals dim H^{inf}") {
    PrimeField f5(5);
    auto A = wedge_algebra(f5, {2, 3});
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        RandomModuleOptions opt;
        opt.profile = seed % 2 ? RandomProfile::Semifree : RandomProfile::TrivialAction;
        auto M = random_module(A, seed, opt);
        REQUIRE(M->validate().empty());
        auto h = M->complex().cohomology().h;
        if (h.support_empty()) continue;
        auto isa = h.inf_sup_amp();
        auto tw = build_tower(M, isa.inf.value() + 1);
        REQUIRE(!tw.steps.empty());
        CHECK(tw.steps[0].level == isa.inf.value());
        CHECK(tw.steps[0].beta == *h.dim(isa.inf.value()));
    }
}

TEST_CASE("Construction invariants (ii) and (iii) on random modules") {
    PrimeField f5(5);
    auto A = sphere_algebra(f5, 2);
    for (std::uint64_t seed = 20; seed <= 26; ++seed) {
        RandomModuleOptions opt;
        opt.profile = RandomProfile::Semifree;
        auto M = random_module(A, seed, opt);
        REQUIRE(M->validate().empty());
        auto tw = build_tower(M, 8);
        // (iii) is asserted inside build_tower; (ii): restart at M<l>
        for (std::size_t t = 0; t + 1 < tw.steps.size() && t < 2; ++t) {
            auto restarted = build_tower(tw.steps[t].next, 8);
            auto bm = tw.betti();
            auto br = restarted.betti();
            for (int j = tw.steps[t].level + 1; j <= 8; ++j) {
                int a = bm.count(j) ? bm.at(j) : 0;
                int b = br.count(j) ? br.at(j) : 0;
                CHECK(a == b);
            }
        }
    }
}

TEST_CASE("tower Betti numbers equal bar Betti numbers") {
    RationalField q;
    PrimeField f5(5);
    auto check_equal = [](auto M, Window win) {
        auto tb = betti_numbers(M, win);
        auto bb = betti_via_bar(M, win);
        for (int j = win.lo; j <= win.hi; ++j) {
            if (!bb.known(j) || !tb.window.known(j)) continue;
            int a = tb.beta.count(j) ? tb.beta.at(j) : 0;
            CHECK(a == bb.dim(j).value_or(0));
        }
    };
    auto run = [&](auto f) {
        using F = decltype(f);
        std::vector<AlgPtr<F>> algs = {sphere_algebra(f, 2), sphere_algebra(f, 3),
                                       wedge_algebra(f, {2, 3}),
                                       truncated_polynomial_algebra(f, 2, 3)};
        for (auto& A : algs) {
            check_equal(trivial_k_module(A, Side::Left), Window(0, 8));
            check_equal(algebra_as_module(A, Side::Left), Window(0, 8));
            check_equal(testutil::x_cone(A, A->complex().space().support().rbegin()->first),
                        Window(0, 8));
            for (std::uint64_t seed = 1; seed <= 4; ++seed) {
                RandomModuleOptions opt;
                opt.profile = seed % 2 ? RandomProfile::Semifree : RandomProfile::ConeOfFree;
                opt.deg_hi = 3;
                auto M = random_module(A, seed * 7 + 3, opt);
                REQUIRE(M->validate().empty());
                check_equal(M, Window(0, 9));
            }
        }
    };
    run(f5);
    run(q);
}

TEST_CASE("compactness detection") {
    RationalField q;
    auto A = sphere_algebra(q, 2);
    SUBCASE("R is compact with certificate [Σ^0 R]") {
        auto r = is_compact_within(algebra_as_module(A, Side::Left), Window(0, 8));
        CHECK(r.certified);
        REQUIRE(r.pieces.size() == 1);
        CHECK(r.pieces[0] == std::pair<int, int>{0, 1});
    }
    SUBCASE("the x-cone is compact with certificate levels {0,1}") {
        auto r = is_compact_within(testutil::x_cone(A, 2), Window(0, 8));
        CHECK(r.certified);
        REQUIRE(r.pieces.size() == 2);
        CHECK(r.pieces[0] == std::pair<int, int>{0, 1});
        CHECK(r.pieces[1] == std::pair<int, int>{1, 1});
    }
    SUBCASE("free {0,3} is compact with certificate levels {0,3}") {
        auto r = is_compact_within(free_module(A, {{"a", 0}, {"b", 3}}), Window(0, 8));
        CHECK(r.certified);
        REQUIRE(r.pieces.size() == 2);
        CHECK(r.pieces[0] == std::pair<int, int>{0, 1});
        CHECK(r.pieces[1] == std::pair<int, int>{3, 1});
    }
    SUBCASE("k is not certified within any finite window") {
        auto r = is_compact_within(trivial_k_module(A, Side::Left), Window(0, 12));
        CHECK(!r.certified);
        CHECK(!r.tower.terminated);
    }
}

TEST_CASE("termination => the resolution is a quasi-isomorphism") {
    PrimeField f5(5);
    RationalField q;
    auto run = [](auto f) {
        using F = decltype(f);
        auto A = sphere_algebra(f, 2);
        std::vector<ModPtr<F>> mods = {
            algebra_as_module(A, Side::Left),
            free_module(A, {{"a", 0}, {"b", 3}}),
            testutil::x_cone(A, 2),
        };
        for (std::uint64_t seed = 31; seed <= 34; ++seed)
            mods.push_back(random_module(A, seed, RandomModuleOptions{}));
        for (auto& M : mods) {
            auto tw = build_tower(M, 9);
            if (!(tw.terminated && tw.certified)) continue;
            REQUIRE(tw.resolution.mod->validate().empty());
            auto phi = tw.resolution_map();
            CHECK(phi.validate().empty());
            auto hF = tw.resolution.mod->complex().cohomology().h;
            auto hM = M->complex().cohomology().h;
            for (int j = -6; j <= 10; ++j)
                if (hF.known(j) && hM.known(j)) CHECK(hF.dim(j) == hM.dim(j));
            // and k ⊗ S has zero differential with dims = Betti numbers
            auto kr = trivial_k_module(A, Side::Right);
            auto kS = tensor_with_resolution(kr, tw.resolution);
            auto b = tw.betti();
            for (int j = -6; j <= 10; ++j)
                if (kS.space().known(j))
                    CHECK(kS.space().dim(j).value_or(0) == (b.count(j) ? b.at(j) : 0));
        }
    };
    run(f5);
    run(q);
}

TEST_CASE("semifree tensor route agrees with the bar route") {
    RationalField q;
    auto A = sphere_algebra(q, 2);
    auto P = dual_module(algebra_as_module(A, Side::Left));
    std::vector<ModPtr<RationalField>> mods = {
        algebra_as_module(A, Side::Left),
        free_module(A, {{"a", 0}, {"b", 3}}),
        testutil::x_cone(A, 2),
        direct_sum(algebra_as_module(A, Side::Left),
                   shift_module(algebra_as_module(A, Side::Left), -1)),
    };
    for (auto& M : mods) {
        auto tw = build_tower(M, 9);
        REQUIRE(tw.terminated);
        auto exact = tensor_with_resolution(P, tw.resolution).cohomology().h;
        auto viabar = derived_tensor_cohomology(P, M, Window(-6, 7));
        for (int j = -6; j <= 6; ++j)
            if (exact.known(j) && viabar.known(j)) CHECK(exact.dim(j) == viabar.dim(j));
    }
}

TEST_CASE("derived inf/sup/amp") {
    RationalField q;
    auto A = sphere_algebra(q, 2);
    auto R = algebra_as_module(A, Side::Left);
    auto kl = trivial_k_module(A, Side::Left);
    auto kr = trivial_k_module(A, Side::Right);
    SUBCASE("k ⊗ Σ^{-3}R concentrates in degree 3") {
        auto M = shift_module(R, -3);
        auto tw = build_tower(M, 8);
        auto r = derived_inf_sup_amp(kr, M, Window(0, 8), &tw);
        CHECK(r.inf == ExtInt(3));
        CHECK(r.sup == ExtInt(3));
        CHECK(r.amp == ExtInt(0));
        CHECK(r.inf_exact);
        CHECK(r.sup_exact);
    }
    SUBCASE("dual(R) ⊗ x-cone has inf = -2 (Lemma: inf P + inf M)") {
        auto P = dual_module(R);
        auto M = testutil::x_cone(A, 2);
        auto tw = build_tower(M, 8);
        auto r = derived_inf_sup_amp(P, M, Window(-6, 8), &tw);
        CHECK(r.inf == ExtInt(-2));
        CHECK(r.inf_exact);
    }
    SUBCASE("k ⊗ k: inf exact 0, sup only a lower bound") {
        auto r = derived_inf_sup_amp(kr, kl, Window(0, 8));
        CHECK(r.inf == ExtInt(0));
        CHECK(r.inf_exact);
        CHECK(r.sup >= ExtInt(7));
        CHECK(!r.sup_exact);
    }
}

TEST_CASE("Lemma inf additivity and the nonvanishing consequences on random pairs") {
    PrimeField f5(5);
    auto A = wedge_algebra(f5, {2, 3});
    int tested = 0;
    for (std::uint64_t seed = 40; seed < 60; ++seed) {
        RandomModuleOptions lm, rm;
        lm.profile = seed % 2 ? RandomProfile::Semifree : RandomProfile::ShiftedSum;
        rm.profile = RandomProfile::TrivialAction;
        rm.side = Side::Right;
        auto M = random_module(A, seed, lm);
        auto P = random_module(A, seed + 1000, rm);
        REQUIRE(M->validate().empty());
        REQUIRE(P->validate().empty());
        auto im = M->complex().cohomology().h.inf_sup_amp();
        auto ip = P->complex().cohomology().h.inf_sup_amp();
        if (!im.inf_exact || !ip.inf_exact) continue;
        auto r = derived_inf_sup_amp(P, M, Window(-4, 9));
        CHECK(r.inf == ip.inf.plus(im.inf));
        // Lemma 1.6 shape: nonzero M has beta^{inf M} = dim H^{inf M}(M) != 0
        if (im.inf.finite()) {
            auto b = betti_numbers(M, Window(0, im.inf.value() + 2));
            CHECK((b.beta.count(im.inf.value()) ? b.beta.at(im.inf.value()) : 0) ==
                  *M->complex().cohomology().h.dim(im.inf.value()));
        }
        ++tested;
    }
    CHECK(tested >= 10);
}
