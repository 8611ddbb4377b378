#pragma once

// The torus-equivariant Pontryagin ring of the affine Grassmannian.  Schubert
// classes xi_x (x in W_af^-) are expanded over the localization basis
// {eta_mu : mu in the coroot lattice} by summing Euler-class reciprocals over
// the 2^N fixed points of the Bott-Samelson resolution attached to a reduced
// word; the convolution product is pointwise addition of translations; the
// change of basis back to the xi classes is a triangular elimination whose
// pivots are pure Euler reciprocals.

#include <map>
#include <shared_mutex>
#include <vector>

#include "affqh/affweyl.hpp"
#include "affqh/exactalg.hpp"
#include "affqh/rootdata.hpp"

namespace affqh {

struct BSDHFixedPoint {
    std::vector<char> choice; // one 0/1 per letter of the word
    CoweightVec mu_gamma;     // image of the base point
    LinFrac euler;            // +-1 / product of the tangent weights
};

// Sparse vector over the localization basis.
struct EtaVector {
    std::map<CoweightVec, LinFrac> entries;

    void add(const CoweightVec& mu, const LinFrac& c);
    bool operator==(const EtaVector& o) const { return entries == o.entries; }
};

// Sparse vector over the Schubert basis; keys are minimal representatives.
struct GrClassVector {
    std::map<AffineWeylElement, LinFrac> entries;

    void add(const AffineWeylElement& x, const LinFrac& c);
    bool operator==(const GrClassVector& o) const { return entries == o.entries; }
};

// Fixed points of the Bott-Samelson space over a reduced word, with their
// images and tangent Euler classes evaluated at level zero.  The k-th
// tangent weight is the finite part of (eps_1..eps_{k-1}) applied to the
// wall weight of letter k (minus the highest root for letter 0, the simple
// root alpha_i for letter i >= 1), negated when eps_k is the reflection.
std::vector<BSDHFixedPoint> bsdh_fixed_points(const RootSystem& rs,
                                              const std::vector<int>& word);

// Expansion driven directly by a word (no cache); used for the
// word-independence checks.
EtaVector eta_expand_from_word(const RootSystem& rs,
                               const std::vector<int>& word);

class GrRing {
public:
    explicit GrRing(const RootSystem& rs) : rs_(rs) {}

    GrRing(const GrRing&) = delete;
    GrRing& operator=(const GrRing&) = delete;

    const RootSystem& root_system() const { return rs_; }

    // Sign conventions pinned by the rank-1 polynomiality and positivity
    // checks; recorded in table files so cached data cannot be mixed across
    // incompatible builds.
    static const char* convention_tag() { return "bsdh:b0=-theta,level0,diag=fullword"; }

    // Localization expansion of xi_x; memoized per element.
    EtaVector eta_expand(const AffineWeylElement& x) const;

    // Convolution: eta_m1 * eta_m2 = eta_{m1+m2}, extended bilinearly.
    EtaVector pontryagin_eta(const EtaVector& u, const EtaVector& v) const;

    // Expand v over the Schubert classes.  Pivoting always picks the support
    // point whose translation coset has the longest minimal representative
    // (ties: lexicographically least point).  search_bound caps the pivot
    // length; exceeding it raises ResidualNonzero.
    GrClassVector eta_to_xi(EtaVector v, int search_bound) const;

    // xi_u * xi_v expanded over xi classes, with every coefficient checked
    // to be a polynomial.
    GrClassVector structure_constants(const AffineWeylElement& u,
                                      const AffineWeylElement& v) const;

    // Minimal representative of the translation coset t_mu W.
    AffineWeylElement translation_min_rep(const CoweightVec& mu) const;

private:
    const RootSystem& rs_;
    mutable std::shared_mutex cache_mu_;
    mutable std::map<std::pair<std::vector<std::int64_t>, std::vector<int>>,
                     EtaVector>
        cache_;
};

} // namespace affqh
