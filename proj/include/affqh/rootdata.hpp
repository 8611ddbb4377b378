#pragma once

// Root systems of simple Lie types A..G in Bourbaki numbering.  Roots are
// stored as integer vectors in simple-root coordinates and coweights in
// simple-coroot coordinates; the only bilinear data is the Cartan matrix,
// through which all pairings are computed.  Fundamental (co)weights are
// never materialized: <omega_i, mu> is the i-th simple-coroot coordinate
// of mu.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "affqh/errors.hpp"

namespace affqh {

struct RootVec {
    std::vector<int> c; // coordinates on the simple roots

    bool operator==(const RootVec& o) const { return c == o.c; }
    bool operator<(const RootVec& o) const { return c < o.c; }
    bool is_zero() const;
    RootVec operator-() const;
    RootVec operator+(const RootVec& o) const;
    RootVec operator-(const RootVec& o) const;
};

struct CoweightVec {
    std::vector<int> c; // coordinates on the simple coroots

    bool operator==(const CoweightVec& o) const { return c == o.c; }
    bool operator<(const CoweightVec& o) const { return c < o.c; }
    bool is_zero() const;
    CoweightVec operator-() const;
    CoweightVec operator+(const CoweightVec& o) const;
    CoweightVec operator-(const CoweightVec& o) const;
};

// Subset of simple-root indices (1-based), kept sorted and unique.
struct ParabolicSet {
    std::vector<int> indices;

    ParabolicSet() = default;
    ParabolicSet(std::initializer_list<int> idx);
    explicit ParabolicSet(std::vector<int> idx);

    bool contains(int i) const;
    bool empty() const { return indices.empty(); }
    bool operator==(const ParabolicSet& o) const { return indices == o.indices; }
    std::string label() const; // "" for Borel, "1,3" otherwise
};

class RootSystem;

// Finite Weyl group element, represented by its integer action matrix on
// simple-coroot coordinates (a faithful representation).  The contragredient
// action on root coordinates and the two inverse actions are carried along so
// that every operation stays in integer matrix arithmetic.
class WeylElement {
public:
    // Empty placeholder (rank 0); real elements come from RootSystem.
    WeylElement() = default;

    int rank() const { return rank_; }
    int length() const { return length_; }
    bool is_identity() const;

    CoweightVec act(const CoweightVec& mu) const;
    RootVec act(const RootVec& x) const;
    CoweightVec act_inverse(const CoweightVec& mu) const;
    RootVec act_inverse(const RootVec& x) const;

    // Inversion keeps the cached length; products need root data to recount
    // inversions, hence the free function weyl_mul(rs, a, b).
    WeylElement inverse() const;

    bool operator==(const WeylElement& o) const { return co_ == o.co_; }
    bool operator!=(const WeylElement& o) const { return !(*this == o); }
    // Canonical ordering: by length first so sorted listings read naturally,
    // then by the action matrix.
    bool operator<(const WeylElement& o) const {
        if (length_ != o.length_) return length_ < o.length_;
        return co_ < o.co_;
    }

    // Flattened coweight action matrix; stable dictionary key.
    const std::vector<std::int64_t>& key() const { return co_; }

    friend class RootSystem;
    friend WeylElement weyl_mul(const RootSystem& rs, const WeylElement& a,
                                const WeylElement& b);

private:
    int rank_ = 0;
    int length_ = 0;
    std::vector<std::int64_t> co_;      // action on coweight coordinates
    std::vector<std::int64_t> co_inv_;  // inverse action on coweights
    std::vector<std::int64_t> rt_;      // action on root coordinates
    std::vector<std::int64_t> rt_inv_;  // inverse action on roots
};

class RootSystem {
public:
    RootSystem(char type, int rank);

    char type() const { return type_; }
    int rank() const { return rank_; }
    // cartan(i, j) = <alpha_i, alpha_j_coroot>, 1-based indices.
    int cartan(int i, int j) const { return cartan_[i - 1][j - 1]; }

    const std::vector<RootVec>& positive_roots() const { return pos_roots_; }
    const std::vector<CoweightVec>& positive_coroots() const { return pos_coroots_; }
    const RootVec& highest_root() const { return pos_roots_[highest_idx_]; }
    const CoweightVec& highest_root_coroot() const { return pos_coroots_[highest_idx_]; }
    std::size_t highest_root_index() const { return highest_idx_; }

    RootVec simple_root(int i) const;
    CoweightVec simple_coroot(int i) const;

    // <x, mu> via the Cartan matrix.
    long long pairing(const RootVec& x, const CoweightVec& mu) const;

    // +1 / -1 for roots, nullopt for non-roots.
    std::optional<int> root_sign(const RootVec& x) const;
    bool is_positive_root(const RootVec& x) const;
    // Index into positive_roots(); x may be given up to sign.
    std::optional<std::size_t> positive_root_index(const RootVec& x) const;
    // Coroot of an arbitrary root (given up to sign; sign carries over).
    CoweightVec coroot_of(const RootVec& x) const;

    WeylElement identity() const;
    WeylElement simple_reflection(int i) const;
    const WeylElement& reflection(std::size_t positive_root_index) const;

    // Order of the full Weyl group (exact).
    unsigned long long weyl_order() const;

    void validate_parabolic(const ParabolicSet& p) const;
    // Positive roots lying in the parabolic subsystem R_P.
    std::vector<std::size_t> parabolic_positive_roots(const ParabolicSet& p) const;

private:
    char type_;
    int rank_;
    std::vector<std::vector<int>> cartan_;
    std::vector<RootVec> pos_roots_;        // sorted by (height, lex)
    std::vector<CoweightVec> pos_coroots_;  // aligned with pos_roots_
    std::size_t highest_idx_ = 0;
    std::map<std::vector<int>, std::size_t> pos_index_;
    std::vector<WeylElement> simple_refl_;
    // Reflections are built on demand; the slots are pre-sized so returned
    // references stay valid, and the mutex makes the fill safe to race.
    mutable std::vector<WeylElement> refl_cache_;
    mutable std::mutex refl_mutex_;

    int compute_length(const std::vector<std::int64_t>& rt) const;

    friend WeylElement weyl_mul(const RootSystem& rs, const WeylElement& a,
                                const WeylElement& b);
};

RootSystem build_root_system(char type, int rank);

// Group product a.b with the cached length recounted from the root action.
WeylElement weyl_mul(const RootSystem& rs, const WeylElement& a,
                     const WeylElement& b);

// Finite Weyl group enumerations for one parabolic choice.
struct WeylData {
    std::vector<WeylElement> group;    // all of W, sorted by (length, key)
    std::vector<WeylElement> subgroup; // W_P
    std::vector<WeylElement> minimal;  // W^P, minimal coset representatives
};

WeylData enumerate_weyl(const RootSystem& rs, const ParabolicSet& p);

// Minimal representative of w W_P.
WeylElement min_coset_rep(const RootSystem& rs, const WeylElement& w,
                          const ParabolicSet& p);

// Lexicographically least reduced word (1-based simple indices).
std::vector<int> reduced_word_finite(const RootSystem& rs, const WeylElement& w);

WeylElement weyl_from_word(const RootSystem& rs, const std::vector<int>& word);

// <omega_i, mu> — the i-th simple-coroot coordinate of mu.
long long omega_pairing(int i, const CoweightVec& mu);

// omega_i - v(omega_i) as an element of the root lattice, computed by
// telescoping over a reduced word of v.
RootVec omega_minus_v_omega(const RootSystem& rs, int i, const WeylElement& v);

} // namespace affqh
