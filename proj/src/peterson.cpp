#include "affqh/peterson.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <set>
#include <thread>

#include "affqh/errors.hpp"
#include "affqh/textio.hpp"

namespace affqh {

namespace {

std::vector<std::size_t> outside_root_indices(const RootSystem& rs,
                                              const ParabolicSet& p) {
    auto inside = rs.parabolic_positive_roots(p);
    std::set<std::size_t> skip(inside.begin(), inside.end());
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < rs.positive_roots().size(); ++k)
        if (!skip.count(k)) out.push_back(k);
    return out;
}

// Which side of the parabolic chamber walls a root sits on: +1 for the
// positive roots outside R_P, -1 for their negatives, 0 inside R_P.  This
// is the exact sign of the root evaluated at any dominant point whose zero
// set cuts out the parabolic, so no real arithmetic is needed.
int chamber_side(const RootSystem& rs, const ParabolicSet& p,
                 const RootVec& g) {
    bool inside = true;
    for (int i = 1; i <= rs.rank(); ++i)
        if (g.c[i - 1] != 0 && !p.contains(i)) {
            inside = false;
            break;
        }
    if (inside) return 0;
    return *rs.root_sign(g);
}

std::string affine_label(const RootSystem& rs, const AffineWeylElement& x) {
    return word_to_string(reduced_word(rs, x));
}

std::string term_label(const RootSystem& rs,
                       const std::pair<CurveClass, WeylElement>& key) {
    return "q^(" + curve_to_string(key.first) + ") sigma[" +
           weyl_to_string(rs, key.second) + "]";
}

// Human-readable pointer at the first place two classes differ; used only
// for report entries, so equality has already failed when this runs.
std::string describe_mismatch(const RootSystem& rs, const QuantumClass& left,
                              const QuantumClass& right) {
    for (const auto& [key, pl] : left.entries) {
        auto it = right.entries.find(key);
        if (it == right.entries.end())
            return "mapped product has " + term_label(rs, key) + " = " +
                   poly_to_string(pl) + " but the product of the images lacks it";
        if (!(it->second == pl))
            return "coefficient of " + term_label(rs, key) + " differs: " +
                   poly_to_string(pl) + " vs " + poly_to_string(it->second);
    }
    for (const auto& [key, pr] : right.entries)
        if (!left.entries.count(key))
            return "product of the images has " + term_label(rs, key) + " = " +
                   poly_to_string(pr) + " but the mapped product lacks it";
    return "classes differ";
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

} // namespace

bool in_wp_af(const RootSystem& rs, const AffineWeylElement& x,
              const ParabolicSet& p) {
    rs.validate_parabolic(p);
    for (std::size_t idx : rs.parabolic_positive_roots(p)) {
        const RootVec& beta = rs.positive_roots()[idx];
        long long val = rs.pairing(beta, x.lam);
        if (*rs.root_sign(x.w.act(beta)) < 0) {
            if (val != -1) return false;
        } else {
            if (val != 0) return false;
        }
    }
    return true;
}

bool condition_c(const RootSystem& rs, const AffineWeylElement& x,
                 const ParabolicSet& p) {
    rs.validate_parabolic(p);
    CoweightVec wl = x.w.act(x.lam);
    for (std::size_t idx : rs.parabolic_positive_roots(p)) {
        RootVec alpha = -x.w.act(rs.positive_roots()[idx]);
        long long val = rs.pairing(alpha, wl);
        if (*rs.root_sign(alpha) > 0) {
            if (val != 1) return false;
        } else {
            if (val != 0) return false;
        }
    }
    return true;
}

std::optional<std::pair<CurveClass, WeylElement>>
peterson_basis_image(const QHRing& qh, const AffineWeylElement& x) {
    const RootSystem& rs = qh.root_system();
    if (!is_coset_min(rs, x))
        throw NotMinimalCosetRep(
            "basis images are defined on minimal coset representatives only");
    if (!in_wp_af(rs, x, qh.parabolic())) return std::nullopt;
    return std::make_pair(qh.curve_class(x.lam),
                          min_coset_rep(rs, x.w, qh.parabolic()));
}

QuantumClass peterson_map(const QHRing& qh, const GrClassVector& c) {
    QuantumClass out;
    for (const auto& [x, coeff] : c.entries) {
        auto image = peterson_basis_image(qh, x);
        if (!image) continue;
        out.add(image->first, image->second, coeff.to_poly());
    }
    return out;
}

std::vector<long long> section_degrees(const QHRing& qh, const CoweightVec& mu,
                                       const WeylElement& v) {
    const RootSystem& rs = qh.root_system();
    if (!qh.in_wp(v))
        throw NotMinimalCosetRep(
            "section data is attached to minimal coset representatives");
    std::vector<long long> out;
    for (std::size_t k : outside_root_indices(rs, qh.parabolic()))
        out.push_back(rs.pairing(v.act(rs.positive_roots()[k]), mu));
    return out;
}

CurveClass section_class(const QHRing& qh, const CoweightVec& mu,
                         const WeylElement& v) {
    if (!qh.in_wp(v))
        throw NotMinimalCosetRep(
            "section data is attached to minimal coset representatives");
    return qh.curve_class(v.act_inverse(mu));
}

SectionData section_data(const QHRing& qh, const CoweightVec& mu,
                         const WeylElement& v) {
    return SectionData{mu, v, section_degrees(qh, mu, v),
                       section_class(qh, mu, v)};
}

DimensionCount dim_count(const QHRing& qh, const AffineWeylElement& x,
                         const WeylElement& v) {
    const RootSystem& rs = qh.root_system();
    if (!qh.in_wp(v))
        throw NotMinimalCosetRep(
            "dimension counts are attached to minimal coset representatives");
    const ParabolicSet& p = qh.parabolic();

    DimensionCount out;
    out.length_x = length_minrep(rs, x);
    out.length_v = v.length();

    CoweightVec wl = x.w.act(x.lam);

    // One pass over all roots, positives first in enumeration order, then
    // their negatives.  A root contributes to the Chern term when v pulls
    // it to the negative side of the parabolic chamber, and contributes a
    // summand when it is positive on w(lam) - a, where the small dominant
    // shift a turns the wall test and the floor into integer comparisons:
    // for alpha > 0 the floor of alpha(w(lam) - a) is alpha(w(lam)) - 1,
    // for alpha < 0 it is alpha(w(lam)) unchanged.
    for (int sign : {+1, -1}) {
        for (std::size_t k = 0; k < rs.positive_roots().size(); ++k) {
            RootVec alpha = sign > 0 ? rs.positive_roots()[k]
                                     : -rs.positive_roots()[k];
            long long m = rs.pairing(alpha, wl);
            int side = chamber_side(rs, p, v.act_inverse(alpha));
            if (side < 0) out.chern -= m;

            long long wall_floor;
            if (sign > 0) {
                if (m < 1) continue;
                wall_floor = m - 1;
            } else {
                if (m < 0) continue;
                wall_floor = m;
            }
            // The summand tilt: roots on the positive chamber side count
            // double and carry a +1, roots inside the parabolic count once,
            // roots on the negative side drop out.  Every summand is
            // non-negative and they add up to the dimension.
            long long tilt = side > 0 ? -1 : (side < 0 ? 1 : 0);
            long long bonus = side > 0 ? 1 : 0;
            out.summands.push_back((1 - tilt) * wall_floor + bonus);
        }
    }

    out.dimension = out.length_x + out.length_v + out.chern;
    return out;
}

VerifyReport verify_homomorphism(const GrRing& gr, const QHRing& qh,
                                 int max_length, int threads) {
    if (&gr.root_system() != &qh.root_system())
        throw InvalidInput("the two rings must share one root system");
    VerifySources sources;
    sources.xi_product = [&gr](const AffineWeylElement& u,
                               const AffineWeylElement& v) {
        return gr.structure_constants(u, v);
    };
    sources.qh_product = [&qh](const WeylElement& u, const WeylElement& v) {
        return qh.quantum_product(u, v);
    };
    return verify_homomorphism(qh, max_length, threads, sources);
}

VerifyReport verify_homomorphism(const QHRing& qh, int max_length, int threads,
                                 const VerifySources& sources) {
    const RootSystem& rs = qh.root_system();
    if (max_length < 0)
        throw InvalidInput("max_length must be non-negative");

    VerifyReport report;
    report.group_type = rs.type();
    report.rank = rs.rank();
    report.parabolic = qh.parabolic().label();
    report.max_length = max_length;

    const auto elems = enumerate_waf_minus(rs, max_length);
    const std::size_t n = elems.size();
    report.pairs_checked = static_cast<long long>(n) * static_cast<long long>(n);

    std::vector<std::optional<std::pair<CurveClass, WeylElement>>> image(n);
    for (std::size_t i = 0; i < n; ++i)
        image[i] = peterson_basis_image(qh, elems[i]);

    // Phase 1: ordered pair sweep, parallel over a shared cursor.  Each
    // worker keeps its own failure list tagged by pair index so the merged
    // report is independent of scheduling.
    auto start = std::chrono::steady_clock::now();
    const std::size_t total = n * n;
    std::size_t want = threads > 0
                           ? static_cast<std::size_t>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
    want = std::min(want, std::max<std::size_t>(total, 1));

    std::atomic<std::size_t> cursor{0};
    std::vector<std::vector<std::pair<std::size_t, VerifyFailure>>> found(want);
    std::vector<std::pair<std::size_t, std::exception_ptr>> hard(want);
    for (auto& h : hard) h = {total, nullptr};

    auto worker = [&](std::size_t slot) {
        for (;;) {
            std::size_t k = cursor.fetch_add(1);
            if (k >= total) return;
            const AffineWeylElement& u = elems[k / n];
            const AffineWeylElement& v = elems[k % n];
            try {
                QuantumClass left = peterson_map(qh, sources.xi_product(u, v));
                QuantumClass right;
                if (image[k / n] && image[k % n])
                    right.add_shifted(
                        sources.qh_product(image[k / n]->second,
                                           image[k % n]->second),
                        image[k / n]->first + image[k % n]->first,
                        Poly::constant(rs.rank(), 1));
                if (!(left == right))
                    found[slot].push_back(
                        {k, {u, v, describe_mismatch(rs, left, right)}});
            } catch (...) {
                if (k < hard[slot].first)
                    hard[slot] = {k, std::current_exception()};
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    for (std::size_t s = 0; s < want; ++s)
        pool.emplace_back(worker, s);
    for (auto& t : pool) t.join();

    // Rethrow the infrastructure failure with the smallest pair index,
    // annotated, preserving the concrete type the callers dispatch on.
    std::size_t bad = total;
    std::exception_ptr bad_ep;
    for (const auto& [k, ep] : hard)
        if (ep && k < bad) {
            bad = k;
            bad_ep = ep;
        }
    if (bad_ep) {
        std::string where = " (while multiplying xi[" +
                            affine_label(rs, elems[bad / n]) + "] by xi[" +
                            affine_label(rs, elems[bad % n]) + "])";
        try {
            std::rethrow_exception(bad_ep);
        } catch (const ResidualNonzero& e) {
            throw ResidualNonzero(e.reason, e.what() + where);
        } catch (const NotPolynomial& e) {
            throw NotPolynomial(e.what() + where);
        } catch (const RecursionStuck& e) {
            throw RecursionStuck(e.what() + where);
        }
        // Anything else propagates as-is from the rethrow above.
    }

    std::vector<std::pair<std::size_t, VerifyFailure>> merged;
    for (auto& part : found)
        merged.insert(merged.end(), part.begin(), part.end());
    std::sort(merged.begin(), merged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, f] : merged) report.failures.push_back(std::move(f));
    report.seconds_products = seconds_since(start);

    // Phase 2: the two membership tests must agree on the whole ball, not
    // just on the minimal representatives.
    start = std::chrono::steady_clock::now();
    const AffineWeylElement id = aff_identity(rs);
    for (const AffineWeylElement& x : enumerate_waf_ball(rs, max_length)) {
        bool direct = in_wp_af(rs, x, qh.parabolic());
        bool chamber = condition_c(rs, x, qh.parabolic());
        if (direct != chamber)
            report.failures.push_back(
                {x, id,
                 std::string("membership tests disagree: direct=") +
                     (direct ? "true" : "false") + " chamber=" +
                     (chamber ? "true" : "false")});
    }
    report.seconds_membership = seconds_since(start);

    // Phase 3: dimension counts over minimal representatives against every
    // coset representative.
    start = std::chrono::steady_clock::now();
    const CoweightVec zero{std::vector<int>(rs.rank(), 0)};
    for (const AffineWeylElement& x : elems) {
        CoweightVec wl = x.w.act(x.lam);
        for (const WeylElement& v : qh.coset_reps()) {
            const AffineWeylElement vaff = aff_from_parts(rs, v, zero);
            DimensionCount dc = dim_count(qh, x, v);

            long long sum = 0;
            bool nonneg = true;
            for (long long s : dc.summands) {
                sum += s;
                if (s < 0) nonneg = false;
            }
            if (!nonneg || dc.dimension < 0)
                report.failures.push_back(
                    {x, vaff, "a dimension count went negative"});
            if (sum != dc.dimension)
                report.failures.push_back(
                    {x, vaff, "summand decomposition does not add up"});

            long long degsum = 0;
            for (long long d : section_degrees(qh, wl, v)) degsum += d;
            if (degsum != dc.chern)
                report.failures.push_back(
                    {x, vaff,
                     "Chern term disagrees with the summed section degrees"});

            bool zero_dim = dc.dimension == 0;
            bool expected = min_coset_rep(rs, x.w, qh.parabolic()) == v &&
                            condition_c(rs, x, qh.parabolic());
            if (zero_dim != expected)
                report.failures.push_back(
                    {x, vaff,
                     std::string("zero-dimensionality misclassified: count ") +
                         (zero_dim ? "vanishes" : "does not vanish") +
                         " but the coset test says " +
                         (expected ? "it should" : "it should not")});
            if (zero_dim && !(section_class(qh, wl, v) == qh.curve_class(x.lam)))
                report.failures.push_back(
                    {x, vaff,
                     "curve class of the rigid section is not the projected "
                     "translation part"});
        }
    }
    report.seconds_dimension = seconds_since(start);

    return report;
}

} // namespace affqh
