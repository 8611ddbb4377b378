#include "affqh/affweyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "affqh/errors.hpp"

namespace affqh {

namespace {

void check_rank(const RootSystem& rs, const AffineWeylElement& x,
                const char* where) {
    if (x.w.rank() != rs.rank() || (int)x.lam.c.size() != rs.rank())
        throw RankMismatch(std::string(where) + ": rank mismatch");
}

} // namespace

AffineWeylElement aff_identity(const RootSystem& rs) {
    return {rs.identity(), CoweightVec{std::vector<int>(rs.rank(), 0)}};
}

AffineWeylElement aff_from_parts(const RootSystem& rs, WeylElement w,
                                 CoweightVec lam) {
    AffineWeylElement x{std::move(w), std::move(lam)};
    check_rank(rs, x, "aff_from_parts");
    return x;
}

AffineWeylElement aff_translation(const RootSystem& rs, CoweightVec lam) {
    return aff_from_parts(rs, rs.identity(), std::move(lam));
}

AffineWeylElement aff_s0(const RootSystem& rs) {
    return {rs.reflection(rs.highest_root_index()), -rs.highest_root_coroot()};
}

AffineWeylElement aff_simple(const RootSystem& rs, int i) {
    if (i == 0) return aff_s0(rs);
    return {rs.simple_reflection(i), CoweightVec{std::vector<int>(rs.rank(), 0)}};
}

AffineWeylElement aff_mul(const RootSystem& rs, const AffineWeylElement& x,
                          const AffineWeylElement& y) {
    check_rank(rs, x, "aff_mul");
    check_rank(rs, y, "aff_mul");
    return {weyl_mul(rs, x.w, y.w), y.w.act_inverse(x.lam) + y.lam};
}

AffineWeylElement aff_inverse(const RootSystem& rs, const AffineWeylElement& x) {
    check_rank(rs, x, "aff_inverse");
    // (w t_lam)^{-1} = t_{-lam} w^{-1} = w^{-1} t_{-w(lam)}
    return {x.w.inverse(), -x.w.act(x.lam)};
}

AffinePoint aff_act(const RootSystem& rs, const AffineWeylElement& x,
                    const AffinePoint& p) {
    check_rank(rs, x, "aff_act");
    if ((int)p.coords.size() != rs.rank())
        throw RankMismatch("aff_act: point rank mismatch");
    int n = rs.rank();
    std::vector<Rat> shifted(n);
    for (int i = 0; i < n; ++i) shifted[i] = p.coords[i] + x.lam.c[i];
    const auto& m = x.w.key();
    AffinePoint out;
    out.coords.assign(n, Rat(0));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (m[r * n + c] != 0) out.coords[r] += Rat(m[r * n + c]) * shifted[c];
    return out;
}

CoweightVec aff_act(const RootSystem& rs, const AffineWeylElement& x,
                    const CoweightVec& p) {
    check_rank(rs, x, "aff_act");
    return x.w.act(p + x.lam);
}

int length_im(const RootSystem& rs, const AffineWeylElement& x) {
    check_rank(rs, x, "length_im");
    // x = w t_lam = t_mu w with mu = w(lam); count wall crossings:
    //   alpha > 0 with w^{-1} alpha > 0 contribute |alpha(mu)|,
    //   alpha > 0 with w^{-1} alpha < 0 contribute |alpha(mu) - 1|.
    CoweightVec mu = x.w.act(x.lam);
    long long total = 0;
    for (const RootVec& a : rs.positive_roots()) {
        long long v = rs.pairing(a, mu);
        RootVec pre = x.w.act_inverse(a);
        bool pre_positive = rs.root_sign(pre).value_or(0) > 0;
        total += pre_positive ? std::abs(v) : std::abs(v - 1);
    }
    return (int)total;
}

bool is_coset_min(const RootSystem& rs, const AffineWeylElement& x) {
    check_rank(rs, x, "is_coset_min");
    int base = length_im(rs, x);
    for (int i = 1; i <= rs.rank(); ++i) {
        AffineWeylElement y = aff_mul(rs, x, aff_simple(rs, i));
        if (length_im(rs, y) < base) return false;
    }
    return true;
}

AffineWeylElement aff_coset_min(const RootSystem& rs, AffineWeylElement x) {
    check_rank(rs, x, "aff_coset_min");
    int len = length_im(rs, x);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 1; i <= rs.rank(); ++i) {
            AffineWeylElement y = aff_mul(rs, x, aff_simple(rs, i));
            int ly = length_im(rs, y);
            if (ly < len) {
                x = std::move(y);
                len = ly;
                changed = true;
            }
        }
    }
    return x;
}

int length_minrep(const RootSystem& rs, const AffineWeylElement& x) {
    if (!is_coset_min(rs, x))
        throw NotMinimalCosetRep(
            "length_minrep: element is not minimal in its coset");
    // Wall count between the base alcove and its translate, evaluated in the
    // limit where the reference point tends to 0 from inside the dominant
    // chamber: a positive root alpha with alpha(w(lam)) >= 1 contributes
    // alpha(w(lam)) - 1, and its negative with alpha(w(lam)) <= 0 contributes
    // -alpha(w(lam)).
    CoweightVec mu = x.w.act(x.lam);
    long long total = 0;
    for (const RootVec& a : rs.positive_roots()) {
        long long v = rs.pairing(a, mu);
        if (v >= 1) total += v - 1;
        if (v <= 0) total += -v;
    }
    return (int)total;
}

std::vector<int> reduced_word(const RootSystem& rs, const AffineWeylElement& x) {
    check_rank(rs, x, "reduced_word");
    std::vector<int> word;
    AffineWeylElement cur = x;
    int len = length_im(rs, cur);
    while (len > 0) {
        bool found = false;
        for (int i = 0; i <= rs.rank(); ++i) {
            AffineWeylElement y = aff_mul(rs, aff_simple(rs, i), cur);
            int ly = length_im(rs, y);
            if (ly < len) {
                word.push_back(i);
                cur = std::move(y);
                len = ly;
                found = true;
                break;
            }
        }
        if (!found)
            throw Error("reduced_word: no descent found on a non-identity element");
    }
    return word;
}

AffineWeylElement aff_from_word(const RootSystem& rs,
                                const std::vector<int>& word) {
    AffineWeylElement x = aff_identity(rs);
    for (int i : word) {
        if (i < 0 || i > rs.rank())
            throw InvalidInput("aff_from_word: letter out of range");
        x = aff_mul(rs, x, aff_simple(rs, i));
    }
    return x;
}

int max_affine_length_cap(int rank) {
    if (rank <= 2) return 12;
    if (rank == 3) return 8;
    return 6;
}

std::vector<AffineWeylElement> enumerate_waf_ball(const RootSystem& rs,
                                                  int max_len) {
    if (max_len < 0) throw InvalidInput("enumerate_waf_ball: negative radius");
    if (max_len > max_affine_length_cap(rs.rank()))
        throw EnumerationCapExceeded(
            "affine ball radius " + std::to_string(max_len) +
            " exceeds the cap " + std::to_string(max_affine_length_cap(rs.rank())) +
            " for rank " + std::to_string(rs.rank()));

    std::set<std::pair<std::vector<std::int64_t>, std::vector<int>>> seen;
    std::vector<AffineWeylElement> out{aff_identity(rs)};
    seen.insert(out[0].key());
    std::vector<AffineWeylElement> frontier = out;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<AffineWeylElement> next;
        for (const AffineWeylElement& x : frontier) {
            for (int i = 0; i <= rs.rank(); ++i) {
                AffineWeylElement y = aff_mul(rs, x, aff_simple(rs, i));
                if (length_im(rs, y) != len) continue;
                if (!seen.insert(y.key()).second) continue;
                next.push_back(y);
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::vector<std::pair<int, AffineWeylElement>> tagged;
    tagged.reserve(out.size());
    for (AffineWeylElement& x : out) {
        int len = length_im(rs, x);
        tagged.emplace_back(len, std::move(x));
    }
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first < b.first;
                  return a.second < b.second;
              });
    out.clear();
    for (auto& [len, x] : tagged) out.push_back(std::move(x));
    return out;
}

std::vector<AffineWeylElement> enumerate_waf_minus(const RootSystem& rs,
                                                   int max_len) {
    std::vector<AffineWeylElement> out;
    for (const AffineWeylElement& x : enumerate_waf_ball(rs, max_len))
        if (is_coset_min(rs, x)) out.push_back(x);
    return out;
}

} // namespace affqh
