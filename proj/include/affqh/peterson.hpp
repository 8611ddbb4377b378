#pragma once

// Combinatorial bridge between the affine Schubert basis and the quantum
// Schubert basis.  The membership tests pick out the affine elements whose
// classes survive the comparison map; the section data and dimension counts
// classify when the relevant section moduli are zero-dimensional; and
// verify_homomorphism multiplies out every small pair on both sides of the
// map and compares the results exactly.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affqh/affweyl.hpp"
#include "affqh/grring.hpp"
#include "affqh/qhring.hpp"
#include "affqh/rootdata.hpp"

namespace affqh {

// x = w t_lam is adapted to the parabolic iff for every positive root beta
// of the parabolic subsystem: beta(lam) = -1 when w(beta) < 0, and
// beta(lam) = 0 when w(beta) > 0.
bool in_wp_af(const RootSystem& rs, const AffineWeylElement& x,
              const ParabolicSet& p);

// The same membership phrased on the other side of w: for every alpha in
// -w(R_P^+), alpha(w(lam)) = 1 when alpha > 0 and alpha(w(lam)) = 0 when
// alpha < 0.  Substituting alpha = -w(beta) turns one test into the other;
// both are implemented directly so they can be swept against each other.
bool condition_c(const RootSystem& rs, const AffineWeylElement& x,
                 const ParabolicSet& p);

// Image of the basis class xi_x under the comparison map: a quantum
// monomial (q-degree, coset representative), or nullopt when the class
// maps to zero.  Throws NotMinimalCosetRep unless x is coset-minimal.
std::optional<std::pair<CurveClass, WeylElement>>
peterson_basis_image(const QHRing& qh, const AffineWeylElement& x);

// Linear extension of xi_{w t_lam} -> q^{lam} sigma_{min rep of w} over the
// keys passing in_wp_af; all other keys map to zero.  Coefficients must
// already be polynomial (a surviving denominator is a hard error), and the
// resulting q-degrees may be negative.
QuantumClass peterson_map(const QHRing& qh, const GrClassVector& c);

// Splitting degrees and curve class of the invariant section through the
// v-fixed point of the bundle attached to the coweight mu.
struct SectionData {
    CoweightVec mu;
    WeylElement v;
    std::vector<long long> degrees;
    CurveClass curve_class;
};

// The multiset {-alpha(mu) : alpha in -v(R^+ \ R_P^+)}, listed in the
// enumeration order of the underlying positive roots.  v must be a minimal
// coset representative.
std::vector<long long> section_degrees(const QHRing& qh, const CoweightVec& mu,
                                       const WeylElement& v);

// Curve class of the section: v^{-1}(mu) projected to the free coroot
// coordinates.
CurveClass section_class(const QHRing& qh, const CoweightVec& mu,
                         const WeylElement& v);

SectionData section_data(const QHRing& qh, const CoweightVec& mu,
                         const WeylElement& v);

// Expected dimension of the section moduli attached to (x, v): the minimal
// representative length of x, plus the length of v, plus the first Chern
// number of the vertical tangent bundle along the section through v.  The
// same number decomposes into one summand per root alpha on the positive
// side of the shifted wall alpha(w(lam) - a) > 0 (a a small regular
// dominant shift); each summand is non-negative and the classification
// tests key off exactly which ones vanish.
struct DimensionCount {
    long long dimension = 0;
    long long length_x = 0;
    long long length_v = 0;
    long long chern = 0;
    std::vector<long long> summands;
};

DimensionCount dim_count(const QHRing& qh, const AffineWeylElement& x,
                         const WeylElement& v);

struct VerifyFailure {
    AffineWeylElement u;
    AffineWeylElement v;
    std::string what;
};

struct VerifyReport {
    char group_type = 0;
    int rank = 0;
    std::string parabolic;
    int max_length = 0;
    long long pairs_checked = 0;
    std::vector<VerifyFailure> failures;
    double seconds_products = 0.0;
    double seconds_membership = 0.0;
    double seconds_dimension = 0.0;

    bool passed() const { return failures.empty(); }
};

// Exhaustive comparison over the ball of radius max_length.  Three phases:
//
//   products:    for every ordered pair (u, v) of minimal representatives,
//                map the xi product through the comparison map and match it
//                against the quantum product of the two images (zero when
//                either image vanishes), as exact polynomial-coefficient
//                classes.  Runs in parallel; threads = 0 picks the hardware
//                concurrency.
//   membership:  in_wp_af and condition_c must agree on the whole ball,
//                minimal or not.
//   dimension:   dim_count is non-negative summand by summand, vanishes
//                exactly when v represents the coset of w and condition_c
//                holds, and at a vanishing count the section curve class
//                equals the projected translation part; the Chern term must
//                also match the summed section degrees.
//
// Mismatches become report entries in a deterministic order, never
// exceptions; infrastructure failures (non-polynomial coefficients, a stuck
// recursion) are rethrown annotated with the pair being processed.
VerifyReport verify_homomorphism(const GrRing& gr, const QHRing& qh,
                                 int max_length, int threads = 0);

// Where the products of phase one come from.  The ring-bound overload above
// fills these with live computations; a caller holding precomputed tables can
// substitute lookups instead and still run the identical comparison.  Both
// callables must tolerate concurrent calls.
struct VerifySources {
    std::function<GrClassVector(const AffineWeylElement&,
                                const AffineWeylElement&)> xi_product;
    std::function<QuantumClass(const WeylElement&, const WeylElement&)>
        qh_product;
};

VerifyReport verify_homomorphism(const QHRing& qh, int max_length, int threads,
                                 const VerifySources& sources);

} // namespace affqh
