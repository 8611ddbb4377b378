#pragma once

// Affine Weyl group W_af = W x Q_coroot.  Elements are pairs (w, lam)
// standing for w t_lam; equality is componentwise, so it never depends on a
// choice of word.  Three length computations exist on purpose: the direct
// inversion-wall count (length_im), the minimal-representative wall count
// (length_minrep, defined only on W_af^-), and breadth-first word search in
// the tests.  They are compared against each other as a convention check.

#include <cstdint>
#include <utility>
#include <vector>

#include "affqh/numeric.hpp"
#include "affqh/rootdata.hpp"

namespace affqh {

// A point of the (dual) Cartan algebra in simple-coroot coordinates.
struct AffinePoint {
    std::vector<Rat> coords;

    bool operator==(const AffinePoint& o) const { return coords == o.coords; }
};

struct AffineWeylElement {
    WeylElement w;
    CoweightVec lam;

    bool operator==(const AffineWeylElement& o) const {
        return w == o.w && lam == o.lam;
    }
    bool operator!=(const AffineWeylElement& o) const { return !(*this == o); }
    bool operator<(const AffineWeylElement& o) const {
        if (!(lam == o.lam)) return lam < o.lam;
        return w.key() < o.w.key();
    }

    bool is_identity() const { return w.is_identity() && lam.is_zero(); }

    // Canonical dictionary key: coweight action matrix plus translation part.
    std::pair<std::vector<std::int64_t>, std::vector<int>> key() const {
        return {w.key(), lam.c};
    }
};

AffineWeylElement aff_identity(const RootSystem& rs);
AffineWeylElement aff_from_parts(const RootSystem& rs, WeylElement w,
                                 CoweightVec lam);
AffineWeylElement aff_translation(const RootSystem& rs, CoweightVec lam);

// s_0 = t_{theta_coroot} s_theta = (s_theta, -theta_coroot), the reflection
// through the wall where the highest root evaluates to 1.
AffineWeylElement aff_s0(const RootSystem& rs);
// i = 0 gives s_0; i = 1..r the finite simple reflections.
AffineWeylElement aff_simple(const RootSystem& rs, int i);

// (w1 t_{l1})(w2 t_{l2}) = (w1 w2) t_{w2^{-1}(l1) + l2}
AffineWeylElement aff_mul(const RootSystem& rs, const AffineWeylElement& x,
                          const AffineWeylElement& y);
AffineWeylElement aff_inverse(const RootSystem& rs, const AffineWeylElement& x);

// w t_lam acts by p -> w(p + lam).
AffinePoint aff_act(const RootSystem& rs, const AffineWeylElement& x,
                    const AffinePoint& p);
CoweightVec aff_act(const RootSystem& rs, const AffineWeylElement& x,
                    const CoweightVec& p);

// Inversion count of w t_lam, via the wall-crossing formula for t_mu w with
// mu = w(lam).
int length_im(const RootSystem& rs, const AffineWeylElement& x);

// Wall count between the fundamental alcove and its translate, valid only
// for minimal coset representatives; throws NotMinimalCosetRep otherwise.
int length_minrep(const RootSystem& rs, const AffineWeylElement& x);

// True iff x is the minimal-length element of x W (finite Weyl on the right).
bool is_coset_min(const RootSystem& rs, const AffineWeylElement& x);

// The minimal-length element of x W, reached by stripping right descents.
AffineWeylElement aff_coset_min(const RootSystem& rs, AffineWeylElement x);

// Lexicographically least reduced word over {0..r}.
std::vector<int> reduced_word(const RootSystem& rs, const AffineWeylElement& x);
AffineWeylElement aff_from_word(const RootSystem& rs,
                                const std::vector<int>& word);

// Largest ball radius the enumerators accept at this rank.
int max_affine_length_cap(int rank);

// All of W_af with length <= max_len, sorted by (length, canonical key).
std::vector<AffineWeylElement> enumerate_waf_ball(const RootSystem& rs,
                                                  int max_len);
// The minimal coset representatives W_af^- with length <= max_len.
std::vector<AffineWeylElement> enumerate_waf_minus(const RootSystem& rs,
                                                   int max_len);

} // namespace affqh
