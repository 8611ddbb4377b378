// Acceptance suite: nine exhaustive desk-scale checks, one output line per
// criterion, exit status 0 only when every line is PASS.  Each criterion is
// independent, so a failure in one never hides the others.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "affqh/affweyl.hpp"
#include "affqh/errors.hpp"
#include "affqh/grring.hpp"
#include "affqh/peterson.hpp"
#include "affqh/qhring.hpp"
#include "affqh/rootdata.hpp"
#include "affqh/tableio.hpp"
#include "affqh/textio.hpp"

using namespace affqh;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& what) {
        if (ok) {
            ok = false;
            detail = what;
        }
    }
    void require(bool cond, const std::string& what) {
        if (!cond) fail(what);
    }
};

std::vector<ParabolicSet> parabolic_subsets(int rank) {
    std::vector<ParabolicSet> out;
    for (int mask = 0; mask < (1 << rank); ++mask) {
        std::vector<int> idx;
        for (int i = 1; i <= rank; ++i)
            if (mask & (1 << (i - 1))) idx.push_back(i);
        out.push_back(ParabolicSet{idx});
    }
    return out;
}

const std::vector<std::pair<char, int>> rank2_types{
    {'A', 1}, {'A', 2}, {'B', 2}, {'C', 2}, {'G', 2}};

std::string where(const RootSystem& rs, const ParabolicSet& p) {
    return std::string(1, rs.type()) + std::to_string(rs.rank()) + "/{" +
           p.label() + "}";
}

void check_verify(Outcome& o, char type, int rank, const ParabolicSet& p,
                  int max_length) {
    RootSystem rs(type, rank);
    GrRing gr(rs);
    QHRing qh(rs, p);
    VerifyReport r = verify_homomorphism(gr, qh, max_length);
    if (!r.passed())
        o.fail(where(rs, p) + " length " + std::to_string(max_length) + ": " +
               std::to_string(r.failures.size()) + " failure(s), first [" +
               aff_to_string(rs, r.failures[0].u) + "] x [" +
               aff_to_string(rs, r.failures[0].v) + "]: " +
               r.failures[0].what);
}

// A uniformly random reduced word, drawn by walking down random descents.
std::vector<int> random_reduced_word(const RootSystem& rs,
                                     const AffineWeylElement& x,
                                     std::mt19937& rng) {
    std::vector<int> word;
    AffineWeylElement cur = x;
    int len = length_im(rs, cur);
    while (len > 0) {
        std::vector<std::pair<int, AffineWeylElement>> descents;
        for (int i = 0; i <= rs.rank(); ++i) {
            AffineWeylElement y = aff_mul(rs, aff_simple(rs, i), cur);
            if (length_im(rs, y) < len) descents.push_back({i, std::move(y)});
        }
        std::uniform_int_distribution<std::size_t> pick(0, descents.size() - 1);
        auto& [i, y] = descents[pick(rng)];
        word.push_back(i);
        cur = std::move(y);
        --len;
    }
    return word;
}

// 1. Rank-1 homomorphism, exhaustive to length 5 (36 ordered pairs).
Outcome criterion1() {
    Outcome o;
    RootSystem rs('A', 1);
    GrRing gr(rs);
    QHRing qh(rs, ParabolicSet{});
    VerifyReport r = verify_homomorphism(gr, qh, 5);
    o.require(r.pairs_checked == 36, "expected 36 pairs, checked " +
                                         std::to_string(r.pairs_checked));
    if (!r.passed())
        o.fail(std::to_string(r.failures.size()) + " failure(s), first: " +
               r.failures[0].what);
    return o;
}

// 2. Rank-2 Borel homomorphism runs.
Outcome criterion2() {
    Outcome o;
    check_verify(o, 'A', 2, ParabolicSet{}, 4);
    check_verify(o, 'C', 2, ParabolicSet{}, 4);
    check_verify(o, 'G', 2, ParabolicSet{}, 3);
    return o;
}

// 3. Parabolic homomorphism runs.
Outcome criterion3() {
    Outcome o;
    for (int i : {1, 2}) {
        check_verify(o, 'A', 2, ParabolicSet{i}, 4);
        check_verify(o, 'C', 2, ParabolicSet{i}, 4);
    }
    return o;
}

// 4. The named rank-1 value on both sides of the map.
Outcome criterion4() {
    Outcome o;
    RootSystem rs('A', 1);
    GrRing gr(rs);
    QHRing qh(rs, ParabolicSet{});
    const WeylElement s = rs.simple_reflection(1);
    const Poly alpha = Poly::variable(1, 1);
    const Poly one = Poly::constant(1, 1);

    AffineWeylElement s0 = aff_s0(rs);
    AffineWeylElement trans = aff_from_parts(rs, rs.identity(),
                                             CoweightVec{{-1}});
    AffineWeylElement deep = aff_from_parts(rs, s, CoweightVec{{-2}});

    GrClassVector sq = gr.structure_constants(s0, s0);
    o.require(sq.entries.size() == 2, "xi_{s_0}^2 has " +
                                          std::to_string(sq.entries.size()) +
                                          " terms, expected 2");
    o.require(sq.entries.count(trans) == 1 &&
                  sq.entries.at(trans) == LinFrac::from_int(1, 1),
              "translation term is not unit");
    if (sq.entries.count(deep)) {
        const LinFrac& c = sq.entries.at(deep);
        o.require(c == LinFrac::from_poly(alpha) ||
                      c == LinFrac::from_poly(alpha * Int(-1)),
                  "deep term coefficient is not plus or minus alpha");
        o.require(c.specialize_zero() == 0,
                  "non-equivariant limit keeps more than the translation term");
    } else {
        o.fail("deep term xi_{(s, -2)} is missing");
    }

    QuantumClass relation = qh.quantum_product(s, s);
    QuantumClass expected;
    expected.add(CurveClass{{0}}, s, alpha);
    expected.add(CurveClass{{1}}, rs.identity(), one);
    o.require(relation == expected,
              "sigma_s * sigma_s is not alpha sigma_s + q sigma_e");

    QuantumClass transported;
    transported.add_shifted(relation, CurveClass{{-2}}, one);
    o.require(peterson_map(qh, sq) == transported,
              "transport of xi_{s_0}^2 disagrees with the quantum relation");
    return o;
}

// 5. Three independent length computations agree on W_af^- up to 8.
Outcome criterion5() {
    Outcome o;
    long long seen = 0;
    for (auto [type, rank] : rank2_types) {
        if (type == 'B') continue; // pinned set: A1, A2, C2, G2
        RootSystem rs(type, rank);
        for (const AffineWeylElement& x : enumerate_waf_minus(rs, 8)) {
            ++seen;
            long long chamber = length_minrep(rs, x);
            long long direct = length_im(rs, x);
            long long word = static_cast<long long>(reduced_word(rs, x).size());
            if (chamber != direct || direct != word) {
                o.fail("lengths disagree at " + aff_to_string(rs, x) + " (" +
                       std::to_string(chamber) + "/" + std::to_string(direct) +
                       "/" + std::to_string(word) + ")");
                return o;
            }
        }
    }
    o.require(seen > 0, "no elements enumerated");
    return o;
}

// 6. Dimension-count sweep and the membership equivalence.
Outcome criterion6() {
    Outcome o;
    for (auto [type, rank] : rank2_types) {
        RootSystem rs(type, rank);
        auto ball = enumerate_waf_ball(rs, 6);
        auto minus = enumerate_waf_minus(rs, 6);
        for (const ParabolicSet& p : parabolic_subsets(rank)) {
            for (const AffineWeylElement& x : ball)
                if (in_wp_af(rs, x, p) != condition_c(rs, x, p)) {
                    o.fail("membership tests disagree at " +
                           aff_to_string(rs, x) + " in " + where(rs, p));
                    return o;
                }

            QHRing qh(rs, p);
            for (const AffineWeylElement& x : minus)
                for (const WeylElement& v : qh.coset_reps()) {
                    DimensionCount dc = dim_count(qh, x, v);
                    long long sum = 0;
                    for (long long sVal : dc.summands) {
                        if (sVal < 0)
                            o.fail("negative summand at " +
                                   aff_to_string(rs, x) + " in " +
                                   where(rs, p));
                        sum += sVal;
                    }
                    if (dc.dimension < 0 || sum != dc.dimension)
                        o.fail("dimension count broken at " +
                               aff_to_string(rs, x) + " in " + where(rs, p));
                    bool expected =
                        min_coset_rep(rs, x.w, p) == v && condition_c(rs, x, p);
                    if ((dc.dimension == 0) != expected)
                        o.fail("zero dimension misclassified at " +
                               aff_to_string(rs, x) + ", v = " +
                               weyl_to_string(rs, v) + " in " + where(rs, p));
                    if (!o.ok) return o;
                }
        }
    }
    return o;
}

// 7. Grading, positivity, commutativity and associativity of both products.
Outcome criterion7() {
    Outcome o;
    for (auto [type, rank] : rank2_types) {
        RootSystem rs(type, rank);
        GrRing gr(rs);
        auto elems = enumerate_waf_minus(rs, 4);

        std::map<std::pair<AffineWeylElement, AffineWeylElement>, GrClassVector>
            memo;
        auto product = [&](const AffineWeylElement& u,
                           const AffineWeylElement& v) -> const GrClassVector& {
            auto it = memo.find({u, v});
            if (it == memo.end())
                it = memo.emplace(std::make_pair(u, v),
                                  gr.structure_constants(u, v))
                         .first;
            return it->second;
        };

        for (const AffineWeylElement& u : elems)
            for (const AffineWeylElement& v : elems) {
                const GrClassVector& c = product(u, v);
                long long base =
                    length_minrep(rs, u) + length_minrep(rs, v);
                for (const auto& [z, coeff] : c.entries) {
                    long long lz = length_minrep(rs, z);
                    Poly poly = coeff.to_poly();
                    if (lz < base || !poly.is_homogeneous() ||
                        poly.total_degree() != lz - base) {
                        o.fail("grading broken in xi[" +
                               aff_to_string(rs, u) + "] * xi[" +
                               aff_to_string(rs, v) + "] at " +
                               aff_to_string(rs, z));
                        return o;
                    }
                    if (coeff.specialize_zero() < 0) {
                        o.fail("negative non-equivariant constant in " +
                               where(rs, ParabolicSet{}));
                        return o;
                    }
                }
                if (!(product(u, v) == product(v, u))) {
                    o.fail("xi product not commutative at " +
                           aff_to_string(rs, u) + ", " + aff_to_string(rs, v));
                    return o;
                }
            }

        auto mult_right = [&](const GrClassVector& c,
                              const AffineWeylElement& w) {
            GrClassVector out;
            for (const auto& [z, coeff] : c.entries)
                for (const auto& [t, c2] : product(z, w).entries)
                    out.add(t, coeff * c2);
            return out;
        };
        auto mult_left = [&](const AffineWeylElement& u,
                             const GrClassVector& c) {
            GrClassVector out;
            for (const auto& [z, coeff] : c.entries)
                for (const auto& [t, c2] : product(u, z).entries)
                    out.add(t, coeff * c2);
            return out;
        };
        for (const AffineWeylElement& u : elems)
            for (const AffineWeylElement& v : elems)
                for (const AffineWeylElement& w : elems)
                    if (!(mult_right(product(u, v), w) ==
                          mult_left(u, product(v, w)))) {
                        o.fail("xi product not associative at (" +
                               aff_to_string(rs, u) + ", " +
                               aff_to_string(rs, v) + ", " +
                               aff_to_string(rs, w) + ")");
                        return o;
                    }

        for (const ParabolicSet& p : parabolic_subsets(rank)) {
            QHRing qh(rs, p);
            std::vector<WeylElement> reps;
            for (const WeylElement& wElem : qh.coset_reps())
                if (wElem.length() <= 4) reps.push_back(wElem);

            std::map<std::pair<WeylElement, WeylElement>, QuantumClass> qmemo;
            auto qprod = [&](const WeylElement& u,
                             const WeylElement& v) -> const QuantumClass& {
                auto it = qmemo.find({u, v});
                if (it == qmemo.end())
                    it = qmemo.emplace(std::make_pair(u, v),
                                       qh.quantum_product(u, v))
                             .first;
                return it->second;
            };

            for (const WeylElement& u : reps)
                for (const WeylElement& v : reps) {
                    const QuantumClass& c = qprod(u, v);
                    long long base = u.length() + v.length();
                    for (const auto& [key, poly] : c.entries) {
                        long long deg = base - key.second.length() -
                                        qh.c1_pairing(key.first);
                        if (deg < 0 || !poly.is_homogeneous() ||
                            poly.total_degree() != deg) {
                            o.fail("quantum grading broken in " +
                                   where(rs, p) + " at sigma[" +
                                   weyl_to_string(rs, u) + "] * sigma[" +
                                   weyl_to_string(rs, v) + "]");
                            return o;
                        }
                    }
                    if (!(qprod(u, v) == qprod(v, u))) {
                        o.fail("quantum product not commutative in " +
                               where(rs, p));
                        return o;
                    }
                }

            auto qmult = [&](const QuantumClass& c, const WeylElement& w) {
                QuantumClass out;
                for (const auto& [key, poly] : c.entries)
                    out.add_shifted(qprod(key.second, w), key.first, poly);
                return out;
            };
            for (const WeylElement& u : reps)
                for (const WeylElement& v : reps)
                    for (const WeylElement& w : reps)
                        if (!(qmult(qprod(u, v), w) == qmult(qprod(v, w), u))) {
                            o.fail("quantum product not associative in " +
                                   where(rs, p));
                            return o;
                        }
        }
    }
    return o;
}

// 8. Hand-checked oracle anchors.
Outcome criterion8() {
    Outcome o;
    {
        RootSystem rs('A', 1);
        QHRing qh(rs, ParabolicSet{});
        const WeylElement s = rs.simple_reflection(1);
        o.require(qh.localization(s, s) == Poly::variable(1, 1),
                  "rank-1 restriction sigma_s|_s is not alpha");
        o.require(qh.localization(s, rs.identity()) == Poly(1),
                  "rank-1 restriction sigma_s|_e is not zero");
    }
    {
        RootSystem rs('A', 2);
        QHRing qh(rs, ParabolicSet{});
        const WeylElement s1 = rs.simple_reflection(1);
        const WeylElement s2 = rs.simple_reflection(2);
        std::map<WeylElement, Poly> mixed{
            {weyl_mul(rs, s1, s2), Poly::constant(2, 1)},
            {weyl_mul(rs, s2, s1), Poly::constant(2, 1)}};
        o.require(qh.classical_product(s1, s2) == mixed,
                  "A2 classical product sigma_1 sigma_2 is wrong");
        std::map<WeylElement, Poly> square{
            {s1, Poly::variable(2, 1)},
            {weyl_mul(rs, s2, s1), Poly::constant(2, 1)}};
        o.require(qh.classical_product(s1, s1) == square,
                  "A2 classical square of sigma_1 is wrong");
    }
    {
        RootSystem rs('A', 2);
        QHRing qh(rs, ParabolicSet{2});
        const WeylElement s1 = rs.simple_reflection(1);
        const WeylElement s21 =
            weyl_mul(rs, rs.simple_reflection(2), s1);
        o.require(qh.c1_pairing(CurveClass{{1}}) == 3,
                  "projective plane first Chern number is not 3");
        QuantumClass flat =
            specialize_class(rs, qh.quantum_product(s1, s21));
        QuantumClass expected;
        expected.add(CurveClass{{1}}, rs.identity(), Poly::constant(2, 1));
        o.require(flat == expected,
                  "projective plane line product is not q sigma_e");
    }
    return o;
}

// 9. Round trips: localization pipeline, table files, word independence.
Outcome criterion9() {
    Outcome o;
    for (auto [type, rank] : rank2_types) {
        RootSystem rs(type, rank);
        GrRing gr(rs);
        for (const AffineWeylElement& x : enumerate_waf_minus(rs, 6)) {
            int bound = static_cast<int>(length_minrep(rs, x));
            GrClassVector round = gr.eta_to_xi(gr.eta_expand(x), bound);
            GrClassVector unit;
            unit.add(x, LinFrac::from_int(rank, 1));
            if (!(round == unit)) {
                o.fail("eta pipeline does not invert at " +
                       aff_to_string(rs, x) + " in " +
                       where(rs, ParabolicSet{}));
                return o;
            }
        }
    }

    {
        RootSystem rs('A', 1);
        GrRing gr(rs);
        XiTable t = compute_xi_table(gr, 2);
        std::string text = xi_table_to_json(rs, t);
        XiTable back = xi_table_from_json(rs, text);
        o.require(back.products == t.products &&
                      xi_table_to_json(rs, back) == text,
                  "xi table files are not byte-stable");
    }
    {
        RootSystem rs('A', 2);
        QHRing qh(rs, ParabolicSet{2});
        QhTable t = compute_qh_table(qh, 2);
        std::string text = qh_table_to_json(rs, t);
        QhTable back = qh_table_from_json(rs, text);
        o.require(back.products == t.products &&
                      qh_table_to_json(rs, back) == text,
                  "qh table files are not byte-stable");
    }

    std::mt19937 rng(97);
    for (char type : {'A', 'C'}) {
        RootSystem rs(type, 2);
        GrRing gr(rs);
        auto minus = enumerate_waf_minus(rs, 6);
        std::uniform_int_distribution<std::size_t> pick(1, minus.size() - 1);
        for (int trial = 0; trial < 10; ++trial) {
            const AffineWeylElement& x = minus[pick(rng)];
            std::vector<int> word = random_reduced_word(rs, x, rng);
            if (!(aff_from_word(rs, word) == x) ||
                !(eta_expand_from_word(rs, word) == gr.eta_expand(x))) {
                o.fail("expansion depends on the reduced word at " +
                       aff_to_string(rs, x));
                return o;
            }
        }
    }
    return o;
}

} // namespace

int main() {
    struct Row {
        int id;
        const char* title;
        Outcome (*run)();
    };
    const std::vector<Row> rows{
        {1, "homomorphism, A1 Borel, all 36 pairs to length 5", criterion1},
        {2, "homomorphism, rank-2 Borel (A2, C2 length 4; G2 length 3)",
         criterion2},
        {3, "homomorphism, A2 and C2 maximal parabolics, length 4",
         criterion3},
        {4, "named value: xi_{s_0}^2 against the rank-1 quantum relation",
         criterion4},
        {5, "length formulas agree on W_af^- to length 8 (A1, A2, C2, G2)",
         criterion5},
        {6, "dimension counts and membership tests, all rank <= 2 parabolics",
         criterion6},
        {7, "ring sanity: grading, positivity, commutativity, associativity",
         criterion7},
        {8, "oracle anchors: GKM restrictions and projective-plane products",
         criterion8},
        {9, "round trips: localization, table files, word independence",
         criterion9},
    };

    bool all_ok = true;
    for (const Row& row : rows) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = row.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        std::printf("%s  %d  %s (%.1fs)%s%s\n", o.ok ? "PASS" : "FAIL",
                    row.id, row.title, secs, o.ok ? "" : ": ",
                    o.ok ? "" : o.detail.c_str());
        std::fflush(stdout);
        all_ok = all_ok && o.ok;
    }
    return all_ok ? 0 : 1;
}
