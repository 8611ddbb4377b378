#include "affqh/grring.hpp"

#include <algorithm>
#include <mutex>

#include "affqh/errors.hpp"

namespace affqh {

void EtaVector::add(const CoweightVec& mu, const LinFrac& c) {
    if (c.is_zero()) return;
    auto it = entries.find(mu);
    if (it == entries.end()) {
        entries.emplace(mu, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) entries.erase(it);
}

void GrClassVector::add(const AffineWeylElement& x, const LinFrac& c) {
    if (c.is_zero()) return;
    auto it = entries.find(x);
    if (it == entries.end()) {
        entries.emplace(x, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) entries.erase(it);
}

std::vector<BSDHFixedPoint> bsdh_fixed_points(const RootSystem& rs,
                                              const std::vector<int>& word) {
    AffineWeylElement full = aff_from_word(rs, word);
    if (length_im(rs, full) != (int)word.size())
        throw NonReducedWord("bsdh_fixed_points: word is not reduced");

    int n = rs.rank();
    std::vector<RootVec> wall(word.size());
    for (std::size_t k = 0; k < word.size(); ++k)
        wall[k] = word[k] == 0 ? -rs.highest_root() : rs.simple_root(word[k]);

    std::vector<BSDHFixedPoint> out;
    out.reserve(std::size_t(1) << word.size());

    // Depth-first over the 2^N choice vectors, carrying the affine prefix
    // product and the tangent weights collected so far.
    std::vector<char> choice;
    std::vector<LinForm> weights;
    auto rec = [&](auto&& self, std::size_t k, const AffineWeylElement& prefix)
        -> void {
        if (k == word.size()) {
            CoweightVec mu =
                aff_act(rs, prefix, CoweightVec{std::vector<int>(n, 0)});
            out.push_back(BSDHFixedPoint{
                choice, std::move(mu), LinFrac::reciprocal(n, 1, weights)});
            return;
        }
        RootVec weight = prefix.w.act(wall[k]);

        choice.push_back(0);
        weights.push_back(LinForm::from_root(weight));
        self(self, k + 1, prefix);
        weights.pop_back();
        choice.pop_back();

        choice.push_back(1);
        weights.push_back(LinForm::from_root(-weight));
        self(self, k + 1, aff_mul(rs, prefix, aff_simple(rs, word[k])));
        weights.pop_back();
        choice.pop_back();
    };
    rec(rec, 0, aff_identity(rs));
    return out;
}

EtaVector eta_expand_from_word(const RootSystem& rs,
                               const std::vector<int>& word) {
    EtaVector v;
    for (const BSDHFixedPoint& p : bsdh_fixed_points(rs, word))
        v.add(p.mu_gamma, p.euler);
    return v;
}

EtaVector GrRing::eta_expand(const AffineWeylElement& x) const {
    if (!is_coset_min(rs_, x))
        throw NotMinimalCosetRep("eta_expand: element not in W_af^-");
    auto key = x.key();
    {
        std::shared_lock lock(cache_mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    EtaVector v = eta_expand_from_word(rs_, reduced_word(rs_, x));
    std::unique_lock lock(cache_mu_);
    return cache_.emplace(std::move(key), std::move(v)).first->second;
}

EtaVector GrRing::pontryagin_eta(const EtaVector& u, const EtaVector& v) const {
    EtaVector out;
    for (const auto& [m1, c1] : u.entries)
        for (const auto& [m2, c2] : v.entries)
            out.add(m1 + m2, c1 * c2);
    return out;
}

AffineWeylElement GrRing::translation_min_rep(const CoweightVec& mu) const {
    return aff_coset_min(rs_, aff_translation(rs_, mu));
}

GrClassVector GrRing::eta_to_xi(EtaVector v, int search_bound) const {
    GrClassVector out;
    // Pivot lengths never grow during elimination (subtracted expansions
    // only touch strictly shorter cosets except at the pivot itself), so a
    // step counter bounded by support grown per level is purely defensive.
    long long steps = 0;
    while (!v.entries.empty()) {
        if (++steps > 100000)
            throw ResidualNonzero(ResidualNonzero::Reason::ConventionBug,
                                  "eta_to_xi: elimination failed to make progress");
        const CoweightVec* best_mu = nullptr;
        AffineWeylElement best_z;
        int best_len = -1;
        for (const auto& [mu, c] : v.entries) {
            AffineWeylElement z = translation_min_rep(mu);
            int len = length_im(rs_, z);
            // map order is ascending lex on mu, so the first point seen at
            // the winning length is the lexicographically least one
            if (len > best_len) {
                best_len = len;
                best_mu = &mu;
                best_z = std::move(z);
            }
        }
        if (best_len > search_bound)
            throw ResidualNonzero(
                ResidualNonzero::Reason::InsufficientBound,
                "eta_to_xi: pivot length " + std::to_string(best_len) +
                    " exceeds the search bound " + std::to_string(search_bound));

        EtaVector expansion = eta_expand(best_z);
        auto diag = expansion.entries.find(*best_mu);
        if (diag == expansion.entries.end())
            throw ResidualNonzero(ResidualNonzero::Reason::ConventionBug,
                                  "eta_to_xi: pivot expansion misses its center");
        LinFrac coeff(rs_.rank());
        try {
            coeff = v.entries.at(*best_mu).div_by(diag->second);
        } catch (const DivisionByNonLinearProduct&) {
            throw ResidualNonzero(ResidualNonzero::Reason::ConventionBug,
                                  "eta_to_xi: pivot diagonal is not a unit");
        }
        for (const auto& [mu, c] : expansion.entries) v.add(mu, -(coeff * c));
        out.add(best_z, coeff);
    }
    return out;
}

GrClassVector GrRing::structure_constants(const AffineWeylElement& u,
                                          const AffineWeylElement& v) const {
    EtaVector prod = pontryagin_eta(eta_expand(u), eta_expand(v));
    int bound = length_im(rs_, u) + length_im(rs_, v) +
                2 * (int)rs_.positive_roots().size();
    GrClassVector out = eta_to_xi(std::move(prod), bound);
    for (const auto& [z, c] : out.entries)
        (void)c.to_poly(); // NotPolynomial here means inconsistent conventions
    return out;
}

} // namespace affqh
