#pragma once

// Equivariant quantum cohomology of a flag variety G/P.  Schubert classes
// are indexed by minimal coset representatives, quantum parameters by the
// simple coroots outside the parabolic set, and coefficients live in the
// integer polynomial ring of exactalg.  The classical ring is recovered by
// fixed-point localization; products are computed by the divisor recursion
// built on the equivariant quantum Chevalley rule.
//
// Localization convention, frozen after testing both placements: the
// subword sum over the lexicographically least reduced word of u, with the
// factors taken from the positive root sequence of that word, is used
// directly as the restriction sigma_v|_{y_u}.  This placement passes every
// pinned check (sigma_e = 1 everywhere, diagonal restrictions equal to
// products of positive roots, supports bounded below in Bruhat order, GKM
// edge congruences, rank-1 and rank-2 product anchors), so no twist by the
// longest element is applied anywhere.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "affqh/errors.hpp"
#include "affqh/exactalg.hpp"
#include "affqh/rootdata.hpp"

namespace affqh {

// Curve class: coefficients on the simple coroots outside the parabolic
// set, in increasing index order.  Negative entries are permitted (they
// appear once quantum parameters are inverted); products of basis classes
// only ever produce nonnegative ones.
struct CurveClass {
    std::vector<long long> coords;

    bool is_zero() const;
    bool operator==(const CurveClass& o) const { return coords == o.coords; }
    bool operator!=(const CurveClass& o) const { return !(*this == o); }
    bool operator<(const CurveClass& o) const { return coords < o.coords; }
    CurveClass operator+(const CurveClass& o) const;
};

// Finite sum of terms q^d sigma_w with polynomial coefficients.
struct QuantumClass {
    std::map<std::pair<CurveClass, WeylElement>, Poly> entries;

    bool is_zero() const { return entries.empty(); }
    bool operator==(const QuantumClass& o) const { return entries == o.entries; }
    bool operator!=(const QuantumClass& o) const { return !(*this == o); }

    // Accumulate one term, dropping it if the total vanishes.
    void add(const CurveClass& d, const WeylElement& w, const Poly& p);
    // this += c * q^shift * o, term by term.
    void add_scaled(const QuantumClass& o, const Poly& c);
    void add_shifted(const QuantumClass& o, const CurveClass& shift, const Poly& c);
    // Exact division of every coefficient; nullopt if any fails.
    std::optional<QuantumClass> divexact_scalar(const Int& c) const;
    // Terms with q-degree zero, as a coefficient map.
    std::map<WeylElement, Poly> classical_part() const;
};

// Restrictions of one class to the fixed points y_u, u in W^P.  Every
// representative gets an entry; zero restrictions are stored explicitly.
struct LocalizationVector {
    std::map<WeylElement, Poly> entries;
};

class QHRing {
public:
    QHRing(const RootSystem& rs, ParabolicSet p);

    QHRing(const QHRing&) = delete;
    QHRing& operator=(const QHRing&) = delete;

    // Stable fingerprint of the conventions baked into this module.
    static std::string convention_tag();

    const RootSystem& root_system() const { return rs_; }
    const ParabolicSet& parabolic() const { return p_; }
    // W^P sorted by (length, canonical order).
    const std::vector<WeylElement>& coset_reps() const { return wp_; }
    // Simple indices outside the parabolic set, ascending.  They label both
    // the quantum parameters and the divisor classes sigma_{s_i}.
    const std::vector<int>& free_indices() const { return free_idx_; }
    bool in_wp(const WeylElement& w) const;

    CurveClass zero_curve() const;
    // Image of a coweight under dropping the parabolic coordinates.
    CurveClass curve_class(const CoweightVec& mu) const;
    // Sum of alpha(lift of beta) over positive roots alpha outside the
    // parabolic subsystem; independent of the choice of lift.
    long long c1_pairing(const CurveClass& beta) const;

    QuantumClass basis_class(const WeylElement& w) const;

    // sigma_v restricted to y_u, by the subword sum (memoized).
    Poly localization(const WeylElement& v, const WeylElement& u) const;
    LocalizationVector localize(const WeylElement& v) const;
    // Description of the first violated GKM edge congruence, or nullopt
    // when the vector satisfies all of them.
    std::optional<std::string> gkm_violation(const LocalizationVector& f) const;

    // Product in the classical equivariant ring: multiply restriction
    // vectors pointwise, then peel off basis classes in increasing length.
    std::map<WeylElement, Poly> classical_product(const WeylElement& u,
                                                  const WeylElement& v) const;

    // Quantum multiplication by the divisor class sigma_{s_i}, i outside
    // the parabolic set, extended linearly over the entries of c.
    QuantumClass chevalley(int i, const QuantumClass& c) const;

    // sigma_u * sigma_v via the layered divisor recursion.
    QuantumClass quantum_product(const WeylElement& u, const WeylElement& v) const;

private:
    struct Family {
        int layers_done = -1;
        std::map<std::vector<std::int64_t>, QuantumClass> cls;
    };

    const RootSystem& rs_;
    ParabolicSet p_;
    std::vector<int> free_idx_;
    std::vector<std::size_t> outside_;      // positive-root indices off R_P
    std::vector<long long> n_alpha_;        // c1 pairing of each outside coroot
    std::vector<CurveClass> q_shift_;       // projected coroot per outside root
    std::vector<long long> c1_simple_;      // c1 row for each free simple index
    std::vector<WeylElement> wp_;
    std::map<std::vector<std::int64_t>, std::size_t> wp_pos_;
    int max_wp_length_ = 0;

    mutable std::once_flag sign_checked_;
    mutable std::shared_mutex loc_mutex_;
    mutable std::map<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>,
                     Poly> loc_memo_;
    mutable std::shared_mutex prod_mutex_;
    mutable std::map<std::vector<std::int64_t>, Family> family_memo_;

    void require_wp(const WeylElement& w, const char* where) const;
    void ensure_sign_check() const;

    Poly localization_impl(const WeylElement& v, const WeylElement& u) const;
    std::map<WeylElement, Poly> classical_impl(const WeylElement& u,
                                               const WeylElement& v) const;
    QuantumClass chevalley_impl(int i, const QuantumClass& c) const;
    void fill_layers(Family& fam, const WeylElement& v, int upto) const;
};

} // namespace affqh
