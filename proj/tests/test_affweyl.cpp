#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "affqh/affweyl.hpp"

using namespace affqh;

namespace {

// Independent length oracle: BFS distance from the identity in the Cayley
// graph on the affine simple reflections.
std::map<std::pair<std::vector<std::int64_t>, std::vector<int>>, int>
affine_bfs_lengths(const RootSystem& rs, int max_len) {
    std::map<std::pair<std::vector<std::int64_t>, std::vector<int>>, int> depth;
    std::vector<AffineWeylElement> frontier{aff_identity(rs)};
    depth[frontier[0].key()] = 0;
    for (int d = 1; d <= max_len; ++d) {
        std::vector<AffineWeylElement> next;
        for (const AffineWeylElement& x : frontier) {
            for (int i = 0; i <= rs.rank(); ++i) {
                AffineWeylElement y = aff_mul(rs, x, aff_simple(rs, i));
                if (depth.count(y.key())) continue;
                depth[y.key()] = d;
                next.push_back(y);
            }
        }
        frontier = std::move(next);
    }
    return depth;
}

AffineWeylElement a1_elem(const RootSystem& a1, bool s, int k) {
    WeylElement w = s ? a1.simple_reflection(1) : a1.identity();
    return aff_from_parts(a1, w, CoweightVec{{k}});
}

} // namespace

TEST_CASE("A1 group law anchors") {
    RootSystem a1('A', 1);
    AffineWeylElement s0 = aff_s0(a1);
    CHECK(s0.w == a1.simple_reflection(1));
    CHECK(s0.lam.c == std::vector<int>{-1});

    // s_0 is an involution
    CHECK(aff_mul(a1, s0, s0).is_identity());
    // (s,0)(s,-a_coroot) = (e,-a_coroot)
    AffineWeylElement s1 = aff_simple(a1, 1);
    CHECK(aff_mul(a1, s1, s0) == a1_elem(a1, false, -1));
    // identity is neutral
    CHECK(aff_mul(a1, s0, aff_identity(a1)) == s0);
    CHECK(aff_mul(a1, aff_identity(a1), s0) == s0);
}

TEST_CASE("affine action") {
    RootSystem a1('A', 1);
    AffineWeylElement s0 = aff_s0(a1);
    // (s,-a_coroot) . 0 = s(-a_coroot) = a_coroot
    CoweightVec zero{{0}};
    CHECK(aff_act(a1, s0, zero).c == std::vector<int>{1});
    // pure translation
    AffineWeylElement t = aff_translation(a1, CoweightVec{{3}});
    CHECK(aff_act(a1, t, CoweightVec{{-1}}).c == std::vector<int>{2});
    // identity
    CHECK(aff_act(a1, aff_identity(a1), CoweightVec{{5}}).c == std::vector<int>{5});

    // rational points and the action law aff_act(xy, p) = x . (y . p)
    RootSystem b2('B', 2);
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> small(-2, 2);
    std::vector<AffineWeylElement> gens;
    for (int i = 0; i <= 2; ++i) gens.push_back(aff_simple(b2, i));
    AffinePoint p{{Rat(1, 2), Rat(-1, 3)}};
    AffineWeylElement x = aff_identity(b2), y = aff_identity(b2);
    for (int k = 0; k < 5; ++k) {
        x = aff_mul(b2, x, gens[small(rng) == 0 ? 0 : std::abs(small(rng)) % 3]);
        y = aff_mul(b2, y, gens[std::abs(small(rng)) % 3]);
        CHECK(aff_act(b2, aff_mul(b2, x, y), p) ==
              aff_act(b2, x, aff_act(b2, y, p)));
    }
}

TEST_CASE("aff_mul associativity on random triples") {
    RootSystem g2('G', 2);
    std::vector<AffineWeylElement> ball = enumerate_waf_ball(g2, 4);
    std::mt19937 rng(17);
    std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
    for (int trial = 0; trial < 30; ++trial) {
        const auto& x = ball[pick(rng)];
        const auto& y = ball[pick(rng)];
        const auto& z = ball[pick(rng)];
        CHECK(aff_mul(g2, aff_mul(g2, x, y), z) ==
              aff_mul(g2, x, aff_mul(g2, y, z)));
    }
}

TEST_CASE("inverse") {
    RootSystem c2('C', 2);
    for (const AffineWeylElement& x : enumerate_waf_ball(c2, 4)) {
        AffineWeylElement xi = aff_inverse(c2, x);
        CHECK(aff_mul(c2, x, xi).is_identity());
        CHECK(aff_mul(c2, xi, x).is_identity());
        CHECK(length_im(c2, xi) == length_im(c2, x));
    }
}

TEST_CASE("A1 length anchors") {
    RootSystem a1('A', 1);
    CHECK(length_im(a1, aff_identity(a1)) == 0);
    CHECK(length_im(a1, aff_s0(a1)) == 1);
    CHECK(length_im(a1, a1_elem(a1, false, -1)) == 2);
    CHECK(length_im(a1, a1_elem(a1, true, -2)) == 3);
    CHECK(length_im(a1, a1_elem(a1, false, 1)) == 2);
}

TEST_CASE("length_im equals BFS word length") {
    for (auto [t, r, L] : {std::tuple{'A', 1, 8}, {'A', 2, 8}, {'B', 2, 6},
                           {'G', 2, 6}, {'A', 3, 5}}) {
        RootSystem rs(t, r);
        auto oracle = affine_bfs_lengths(rs, L);
        std::vector<AffineWeylElement> ball = enumerate_waf_ball(rs, L);
        CHECK(ball.size() == oracle.size());
        for (const AffineWeylElement& x : ball)
            CHECK(length_im(rs, x) == oracle.at(x.key()));
    }
}

TEST_CASE("coset minimality") {
    RootSystem a1('A', 1);
    CHECK(is_coset_min(a1, aff_identity(a1)));
    CHECK(is_coset_min(a1, aff_s0(a1)));
    CHECK_FALSE(is_coset_min(a1, a1_elem(a1, false, 1)));
    CHECK(is_coset_min(a1, a1_elem(a1, false, -1)));

    // every coset x W contains exactly one minimal representative
    RootSystem a2('A', 2);
    WeylData fin = enumerate_weyl(a2, ParabolicSet{});
    for (const AffineWeylElement& x : enumerate_waf_minus(a2, 4)) {
        for (const WeylElement& u : fin.group) {
            if (u.is_identity()) continue;
            AffineWeylElement y =
                aff_mul(a2, x, aff_from_parts(a2, u, CoweightVec{{0, 0}}));
            CHECK_FALSE(is_coset_min(a2, y));
            CHECK(length_im(a2, y) == length_im(a2, x) + u.length());
        }
    }
}

TEST_CASE("length_minrep matches length_im on minimal representatives") {
    RootSystem a1('A', 1);
    CHECK(length_minrep(a1, aff_s0(a1)) == 1);
    CHECK(length_minrep(a1, a1_elem(a1, false, -1)) == 2);
    CHECK(length_minrep(a1, aff_identity(a1)) == 0);
    CHECK_THROWS_AS(length_minrep(a1, a1_elem(a1, false, 1)),
                    NotMinimalCosetRep);

    for (auto [t, r, L] : {std::tuple{'A', 1, 8}, {'A', 2, 8}, {'C', 2, 8},
                           {'G', 2, 8}}) {
        RootSystem rs(t, r);
        for (const AffineWeylElement& x : enumerate_waf_minus(rs, L))
            CHECK(length_minrep(rs, x) == length_im(rs, x));
    }
}

TEST_CASE("reduced words") {
    RootSystem a1('A', 1);
    CHECK(reduced_word(a1, aff_identity(a1)).empty());
    CHECK(reduced_word(a1, aff_s0(a1)) == std::vector<int>{0});
    CHECK(reduced_word(a1, a1_elem(a1, false, -1)) == std::vector<int>{1, 0});
    CHECK(reduced_word(a1, a1_elem(a1, true, -2)) == std::vector<int>{0, 1, 0});

    for (auto [t, r, L] : {std::tuple{'A', 2, 5}, {'B', 2, 5}, {'G', 2, 5}}) {
        RootSystem rs(t, r);
        for (const AffineWeylElement& x : enumerate_waf_ball(rs, L)) {
            std::vector<int> word = reduced_word(rs, x);
            CHECK((int)word.size() == length_im(rs, x));
            CHECK(aff_from_word(rs, word) == x);
        }
    }
}

TEST_CASE("enumerate_waf_minus anchors") {
    RootSystem a1('A', 1);
    std::vector<AffineWeylElement> m = enumerate_waf_minus(a1, 3);
    REQUIRE(m.size() == 4);
    CHECK(m[0].is_identity());
    CHECK(m[1] == aff_s0(a1));
    CHECK(m[2] == a1_elem(a1, false, -1));
    CHECK(m[3] == a1_elem(a1, true, -2));

    RootSystem a2('A', 2);
    std::vector<AffineWeylElement> m2 = enumerate_waf_minus(a2, 1);
    REQUIRE(m2.size() == 2);
    CHECK(m2[0].is_identity());
    CHECK(m2[1] == aff_s0(a2));

    std::vector<AffineWeylElement> m0 = enumerate_waf_minus(a2, 0);
    REQUIRE(m0.size() == 1);
    CHECK(m0[0].is_identity());
}

TEST_CASE("translation lengths and coset counting") {
    // l(t_lam) = sum over positive roots of |alpha(lam)|
    RootSystem g2('G', 2);
    for (int k1 = -1; k1 <= 1; ++k1)
        for (int k2 = -1; k2 <= 1; ++k2) {
            CoweightVec lam{{k1, k2}};
            long long want = 0;
            for (const RootVec& a : g2.positive_roots())
                want += std::abs(g2.pairing(a, lam));
            if (want > 12) continue;
            CHECK(length_im(g2, aff_translation(g2, lam)) == want);
        }

    // ball elements group into cosets of size |W| once the radius covers
    // a full coset: every minimal rep of length <= L - longest element
    // has its whole coset inside the ball
    RootSystem a2('A', 2);
    std::vector<AffineWeylElement> ball = enumerate_waf_ball(a2, 6);
    int covered = 0;
    for (const AffineWeylElement& x : ball)
        if (is_coset_min(a2, x) && length_im(a2, x) <= 3) ++covered;
    WeylData fin = enumerate_weyl(a2, ParabolicSet{});
    int inside = 0;
    for (const AffineWeylElement& x : ball) {
        AffineWeylElement m = x;
        // strip to the minimal representative by right descents
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 1; i <= 2; ++i) {
                AffineWeylElement y = aff_mul(a2, m, aff_simple(a2, i));
                if (length_im(a2, y) < length_im(a2, m)) {
                    m = y;
                    changed = true;
                }
            }
        }
        if (length_im(a2, m) <= 3) ++inside;
    }
    CHECK(inside == covered * (int)fin.group.size());
}

TEST_CASE("antidominance of minimal representatives") {
    for (auto [t, r, L] : {std::tuple{'A', 2, 8}, {'C', 2, 8}, {'G', 2, 8},
                           {'A', 3, 6}}) {
        RootSystem rs(t, r);
        for (const AffineWeylElement& x : enumerate_waf_minus(rs, L))
            for (const RootVec& a : rs.positive_roots())
                CHECK(rs.pairing(a, x.lam) <= 0);
    }
}

TEST_CASE("enumeration guard rails") {
    RootSystem a2('A', 2);
    CHECK_THROWS_AS(enumerate_waf_ball(a2, 13), EnumerationCapExceeded);
    CHECK_THROWS_AS(enumerate_waf_ball(a2, -1), InvalidInput);
    RootSystem a3('A', 3);
    CHECK_THROWS_AS(enumerate_waf_ball(a3, 9), EnumerationCapExceeded);
    RootSystem d4('D', 4);
    CHECK_THROWS_AS(enumerate_waf_ball(d4, 7), EnumerationCapExceeded);
    CHECK_THROWS_AS(aff_from_word(a2, {0, 3}), InvalidInput);

    CHECK_THROWS_AS(aff_mul(a2, aff_identity(a2), aff_identity(a3)),
                    RankMismatch);
}
