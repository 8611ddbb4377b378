#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "affqh/affweyl.hpp"
#include "affqh/errors.hpp"
#include "affqh/exactalg.hpp"
#include "affqh/grring.hpp"
#include "affqh/peterson.hpp"
#include "affqh/qhring.hpp"
#include "affqh/rootdata.hpp"

using namespace affqh;

namespace {

Poly pc(int n, long long c) { return Poly::constant(n, Int(c)); }
Poly pvar(int n, int i) { return Poly::variable(n, i); }

AffineWeylElement aff(const RootSystem& rs, const WeylElement& w,
                      std::vector<int> lam) {
    return aff_from_parts(rs, w, CoweightVec{std::move(lam)});
}

std::vector<ParabolicSet> all_parabolics(int rank) {
    std::vector<ParabolicSet> out;
    for (int mask = 0; mask < (1 << rank); ++mask) {
        std::vector<int> idx;
        for (int i = 1; i <= rank; ++i)
            if (mask & (1 << (i - 1))) idx.push_back(i);
        out.push_back(ParabolicSet{idx});
    }
    return out;
}

// Independent replica of the chamber-side test used by the section and
// dimension formulas: the sign of the root at a dominant point vanishing
// exactly on the parabolic walls.
int side_oracle(const RootSystem& rs, const ParabolicSet& p,
                const RootVec& g) {
    bool inside = true;
    for (int i = 1; i <= rs.rank(); ++i)
        if (g.c[i - 1] != 0 && !p.contains(i)) inside = false;
    return inside ? 0 : *rs.root_sign(g);
}

} // namespace

TEST_CASE("membership tests at small rank") {
    RootSystem a2 = build_root_system('A', 2);
    ParabolicSet p2{2};

    AffineWeylElement reject = aff(a2, a2.identity(), {-1, -1});
    AffineWeylElement accept = aff(a2, a2.identity(), {-2, -1});
    CHECK_FALSE(in_wp_af(a2, reject, p2));
    CHECK_FALSE(condition_c(a2, reject, p2));
    CHECK(in_wp_af(a2, accept, p2));
    CHECK(condition_c(a2, accept, p2));

    ParabolicSet borel{};
    for (const AffineWeylElement& x : enumerate_waf_ball(a2, 4)) {
        CHECK(in_wp_af(a2, x, borel));
        CHECK(condition_c(a2, x, borel));
    }
}

TEST_CASE("the two membership tests agree on whole balls") {
    const std::vector<std::pair<char, int>> types = {
        {'A', 1}, {'A', 2}, {'B', 2}, {'C', 2}, {'G', 2}};
    for (auto [type, rank] : types) {
        RootSystem rs = build_root_system(type, rank);
        auto ball = enumerate_waf_ball(rs, 6);
        for (const ParabolicSet& p : all_parabolics(rank)) {
            int hits = 0;
            for (const AffineWeylElement& x : ball) {
                bool direct = in_wp_af(rs, x, p);
                CHECK(direct == condition_c(rs, x, p));
                if (direct) ++hits;
            }
            // The sweep must see both outcomes to mean anything.
            CHECK(hits > 0);
            if (!p.empty()) CHECK(hits < static_cast<int>(ball.size()));
        }
    }
}

TEST_CASE("basis images and the linear extension") {
    RootSystem a1 = build_root_system('A', 1);
    QHRing line(a1, ParabolicSet{});
    WeylElement e = a1.identity();
    WeylElement s = a1.simple_reflection(1);
    AffineWeylElement s0 = aff_s0(a1);

    auto img = peterson_basis_image(line, s0);
    REQUIRE(img.has_value());
    CHECK(img->first == CurveClass{{-1}});
    CHECK(img->second == s);

    auto unit = peterson_basis_image(line, aff_identity(a1));
    REQUIRE(unit.has_value());
    CHECK(unit->first == CurveClass{{0}});
    CHECK(unit->second == e);

    // Linear combinations pass through term by term, with the two keys of
    // translation part -alpha_check landing on different finite classes.
    GrClassVector c;
    c.add(s0, LinFrac::from_int(1, 3));
    c.add(aff(a1, e, {-1}), LinFrac::from_poly(pvar(1, 1)));
    QuantumClass expect;
    expect.add(CurveClass{{-1}}, s, pc(1, 3));
    expect.add(CurveClass{{-1}}, e, pvar(1, 1));
    CHECK(peterson_map(line, c) == expect);

    RootSystem a2 = build_root_system('A', 2);
    QHRing plane(a2, ParabolicSet{2});
    CHECK_FALSE(peterson_basis_image(plane, aff(a2, a2.identity(), {-1, -1}))
                    .has_value());
    GrClassVector killed;
    killed.add(aff(a2, a2.identity(), {-1, -1}), LinFrac::from_int(2, 5));
    CHECK(peterson_map(plane, killed).is_zero());

    auto deep = peterson_basis_image(plane, aff(a2, a2.identity(), {-2, -1}));
    REQUIRE(deep.has_value());
    CHECK(deep->first == CurveClass{{-2}});
    CHECK(deep->second == a2.identity());

    // Keys must be coset-minimal.
    AffineWeylElement bad = aff(a1, s, {0});
    CHECK_THROWS_AS(peterson_basis_image(line, bad), NotMinimalCosetRep);
    GrClassVector cbad;
    cbad.add(bad, LinFrac::from_int(1, 1));
    CHECK_THROWS_AS(peterson_map(line, cbad), NotMinimalCosetRep);

    // A coefficient that kept a denominator is an upstream bug, not data.
    GrClassVector leak;
    leak.add(s0, LinFrac::reciprocal(
                     1, 1, {LinForm::from_root(a1.simple_root(1))}));
    CHECK_THROWS_AS(peterson_map(line, leak), NotPolynomial);
}

TEST_CASE("section degrees and curve classes") {
    RootSystem a1 = build_root_system('A', 1);
    QHRing line(a1, ParabolicSet{});
    WeylElement e1 = a1.identity();
    WeylElement s1 = a1.simple_reflection(1);
    CoweightVec acheck{{1}};

    CHECK(section_degrees(line, acheck, e1) == std::vector<long long>{2});
    CHECK(section_degrees(line, acheck, s1) == std::vector<long long>{-2});
    CHECK(section_class(line, acheck, s1) == CurveClass{{-1}});
    CHECK(section_class(line, acheck, e1) == line.curve_class(acheck));

    RootSystem a2 = build_root_system('A', 2);
    QHRing plane(a2, ParabolicSet{2});
    CHECK(section_class(plane, CoweightVec{{1, 0}},
                        a2.simple_reflection(1)) == CurveClass{{-1}});

    // v outside the chosen coset representatives is rejected.
    CHECK_THROWS_AS(section_degrees(plane, CoweightVec{{1, 0}},
                                    a2.simple_reflection(2)),
                    NotMinimalCosetRep);
    CHECK_THROWS_AS(section_class(plane, CoweightVec{{1, 0}},
                                  a2.simple_reflection(2)),
                    NotMinimalCosetRep);

    RootSystem c2 = build_root_system('C', 2);
    std::vector<const RootSystem*> systems = {&a1, &a2, &c2};
    for (const RootSystem* rs : systems) {
        for (const ParabolicSet& p : all_parabolics(rs->rank())) {
            if (static_cast<int>(p.indices.size()) == rs->rank()) continue;
            QHRing ring(*rs, p);
            std::size_t outside = rs->positive_roots().size() -
                                  rs->parabolic_positive_roots(p).size();
            std::vector<CoweightVec> samples;
            samples.push_back(CoweightVec{std::vector<int>(rs->rank(), 0)});
            for (int i = 1; i <= rs->rank(); ++i)
                samples.push_back(rs->simple_coroot(i));
            samples.push_back(CoweightVec{std::vector<int>(rs->rank(), -2)});

            for (const WeylElement& v : ring.coset_reps()) {
                for (const CoweightVec& mu : samples) {
                    SectionData sd = section_data(ring, mu, v);
                    CHECK(sd.mu == mu);
                    CHECK(sd.v == v);
                    CHECK(sd.degrees == section_degrees(ring, mu, v));
                    CHECK(sd.curve_class == section_class(ring, mu, v));
                    CHECK(sd.degrees.size() == outside);
                    if (mu.is_zero()) {
                        for (long long d : sd.degrees) CHECK(d == 0);
                        CHECK(sd.curve_class.is_zero());
                    }

                    // Index-set oracle: the degrees are exactly -alpha(mu)
                    // over the roots alpha pulled by v^{-1} to the negative
                    // side of the parabolic chamber.
                    std::multiset<long long> got(sd.degrees.begin(),
                                                 sd.degrees.end());
                    std::multiset<long long> want;
                    for (const RootVec& pos : rs->positive_roots())
                        for (int sgn : {+1, -1}) {
                            RootVec alpha = sgn > 0 ? pos : -pos;
                            if (side_oracle(*rs, p, v.act_inverse(alpha)) < 0)
                                want.insert(-rs->pairing(alpha, mu));
                        }
                    CHECK(got == want);
                }
            }
        }
    }
}

TEST_CASE("dimension counts match the hand anchors") {
    RootSystem a1 = build_root_system('A', 1);
    QHRing line(a1, ParabolicSet{});
    WeylElement e = a1.identity();
    WeylElement s = a1.simple_reflection(1);
    AffineWeylElement s0 = aff_s0(a1);
    AffineWeylElement trans = aff(a1, e, {-1});

    DimensionCount rigid = dim_count(line, s0, s);
    CHECK(rigid.dimension == 0);
    CHECK(rigid.length_x == 1);
    CHECK(rigid.length_v == 1);
    CHECK(rigid.chern == -2);
    CHECK(rigid.summands == std::vector<long long>{0});

    DimensionCount fixed = dim_count(line, trans, e);
    CHECK(fixed.dimension == 0);
    CHECK(fixed.length_x == 2);
    CHECK(fixed.length_v == 0);
    CHECK(fixed.chern == -2);
    CHECK(fixed.summands == std::vector<long long>{0});

    DimensionCount moving = dim_count(line, s0, e);
    CHECK(moving.dimension == 3);
    CHECK(moving.length_x == 1);
    CHECK(moving.length_v == 0);
    CHECK(moving.chern == 2);
    CHECK(moving.summands == std::vector<long long>{3});

    CHECK_THROWS_AS(dim_count(line, aff(a1, s, {0}), e), NotMinimalCosetRep);

    RootSystem a2 = build_root_system('A', 2);
    QHRing plane(a2, ParabolicSet{2});
    CHECK_THROWS_AS(dim_count(plane, aff_s0(a2), a2.simple_reflection(2)),
                    NotMinimalCosetRep);
}

TEST_CASE("dimension sweep: non-negativity, classification, consistency") {
    const std::vector<std::pair<char, int>> types = {
        {'A', 1}, {'A', 2}, {'C', 2}, {'G', 2}};
    int rigid_seen = 0;
    int moving_seen = 0;
    for (auto [type, rank] : types) {
        RootSystem rs = build_root_system(type, rank);
        auto minus = enumerate_waf_minus(rs, 6);
        for (const ParabolicSet& p : all_parabolics(rank)) {
            if (static_cast<int>(p.indices.size()) == rank) continue;
            QHRing ring(rs, p);
            for (const AffineWeylElement& x : minus) {
                CoweightVec wl = x.w.act(x.lam);
                for (const WeylElement& v : ring.coset_reps()) {
                    DimensionCount dc = dim_count(ring, x, v);
                    CHECK(dc.dimension ==
                          dc.length_x + dc.length_v + dc.chern);
                    CHECK(dc.dimension >= 0);

                    long long sum = 0;
                    for (long long s : dc.summands) {
                        CHECK(s >= 0);
                        sum += s;
                    }
                    CHECK(sum == dc.dimension);

                    long long degsum = 0;
                    for (long long d : section_degrees(ring, wl, v))
                        degsum += d;
                    CHECK(degsum == dc.chern);

                    bool zero = dc.dimension == 0;
                    bool expected = min_coset_rep(rs, x.w, p) == v &&
                                    condition_c(rs, x, p);
                    CHECK(zero == expected);
                    if (zero) {
                        ++rigid_seen;
                        CHECK(section_class(ring, wl, v) ==
                              ring.curve_class(x.lam));
                    } else {
                        ++moving_seen;
                    }
                }
            }
        }
    }
    CHECK(rigid_seen > 0);
    CHECK(moving_seen > 0);
}

TEST_CASE("the affine relation crosses the map") {
    RootSystem a1 = build_root_system('A', 1);
    GrRing gr(a1);
    QHRing line(a1, ParabolicSet{});
    WeylElement e = a1.identity();
    WeylElement s = a1.simple_reflection(1);
    AffineWeylElement s0 = aff_s0(a1);

    // xi_{s0}^2 = xi_{t(-alpha_check)} + alpha xi_{s0 s1 s0} maps to
    // a1 q^{-2} sigma_s + q^{-1} sigma_e, which is exactly q^{-2} times the
    // quantum square of sigma_s.
    QuantumClass left = peterson_map(line, gr.structure_constants(s0, s0));
    QuantumClass expect;
    expect.add(CurveClass{{-2}}, s, pvar(1, 1));
    expect.add(CurveClass{{-1}}, e, pc(1, 1));
    CHECK(left == expect);

    QuantumClass right;
    right.add_shifted(line.quantum_product(s, s), CurveClass{{-2}}, pc(1, 1));
    CHECK(left == right);
}

TEST_CASE("exhaustive verifier passes at small rank") {
    RootSystem a1 = build_root_system('A', 1);
    GrRing gr1(a1);
    QHRing line(a1, ParabolicSet{});

    VerifyReport rep = verify_homomorphism(gr1, line, 3);
    CHECK(rep.group_type == 'A');
    CHECK(rep.rank == 1);
    CHECK(rep.parabolic == "");
    CHECK(rep.max_length == 3);
    CHECK(rep.pairs_checked == 16);
    CHECK(rep.passed());
    CHECK(rep.failures.empty());
    CHECK(rep.seconds_products >= 0.0);

    RootSystem c2 = build_root_system('C', 2);
    GrRing grc(c2);
    QHRing cline(c2, ParabolicSet{});
    VerifyReport unit = verify_homomorphism(grc, cline, 0);
    CHECK(unit.pairs_checked == 1);
    CHECK(unit.passed());

    RootSystem a2 = build_root_system('A', 2);
    GrRing gra(a2);
    QHRing plane(a2, ParabolicSet{2});
    std::size_t n = enumerate_waf_minus(a2, 4).size();
    VerifyReport headline = verify_homomorphism(gra, plane, 4);
    CHECK(headline.pairs_checked ==
          static_cast<long long>(n) * static_cast<long long>(n));
    CHECK(headline.passed());
    CHECK(headline.parabolic == "2");

    QHRing borel2(a2, ParabolicSet{});
    CHECK(verify_homomorphism(gra, borel2, 3).passed());

    // Scheduling must not affect the report.
    VerifyReport serial = verify_homomorphism(gr1, line, 4, 1);
    VerifyReport wide = verify_homomorphism(gr1, line, 4, 4);
    CHECK(serial.pairs_checked == wide.pairs_checked);
    CHECK(serial.passed());
    CHECK(wide.passed());

    CHECK_THROWS_AS(verify_homomorphism(gr1, plane, 2), InvalidInput);
    CHECK_THROWS_AS(verify_homomorphism(gr1, line, -1), InvalidInput);
}
