#include "affqh/qhring.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace affqh {

namespace {

std::string word_label(const RootSystem& rs, const WeylElement& w) {
    if (w.is_identity()) return "e";
    std::ostringstream os;
    bool first = true;
    for (int i : reduced_word_finite(rs, w)) {
        if (!first) os << "*";
        os << "s" << i;
        first = false;
    }
    return os.str();
}

// Reduced row-echelon workspace used to pick an invertible subset of the
// associativity equations for one length layer.
struct RationalEchelon {
    std::vector<std::vector<Rat>> rows; // pivot entries normalized to 1
    std::vector<std::size_t> pivots;

    bool try_add(std::vector<Rat> v) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Rat& c = v[pivots[i]];
            if (c == 0) continue;
            Rat f = c;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[i][j];
        }
        std::size_t piv = v.size();
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) { piv = j; break; }
        if (piv == v.size()) return false;
        Rat d = v[piv];
        for (std::size_t j = 0; j < v.size(); ++j) v[j] /= d;
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        return true;
    }
};

std::optional<std::vector<std::vector<Rat>>> invert_rational(
    std::vector<std::vector<Rat>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m[p][col] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[col]);
        std::swap(inv[p], inv[col]);
        Rat d = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace

bool CurveClass::is_zero() const {
    for (long long c : coords)
        if (c != 0) return false;
    return true;
}

CurveClass CurveClass::operator+(const CurveClass& o) const {
    if (coords.size() != o.coords.size())
        throw RankMismatch("curve class arity mismatch");
    CurveClass out = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) out.coords[i] += o.coords[i];
    return out;
}

void QuantumClass::add(const CurveClass& d, const WeylElement& w, const Poly& p) {
    if (p.is_zero()) return;
    auto key = std::make_pair(d, w);
    auto it = entries.find(key);
    if (it == entries.end()) {
        entries.emplace(std::move(key), p);
        return;
    }
    it->second = it->second + p;
    if (it->second.is_zero()) entries.erase(it);
}

void QuantumClass::add_scaled(const QuantumClass& o, const Poly& c) {
    if (c.is_zero()) return;
    for (const auto& [key, p] : o.entries) add(key.first, key.second, p * c);
}

void QuantumClass::add_shifted(const QuantumClass& o, const CurveClass& shift,
                               const Poly& c) {
    if (c.is_zero()) return;
    for (const auto& [key, p] : o.entries)
        add(key.first + shift, key.second, p * c);
}

std::optional<QuantumClass> QuantumClass::divexact_scalar(const Int& c) const {
    QuantumClass out;
    for (const auto& [key, p] : entries) {
        auto q = p.divexact_scalar(c);
        if (!q) return std::nullopt;
        out.entries.emplace(key, *q);
    }
    return out;
}

std::map<WeylElement, Poly> QuantumClass::classical_part() const {
    std::map<WeylElement, Poly> out;
    for (const auto& [key, p] : entries)
        if (key.first.is_zero()) out.emplace(key.second, p);
    return out;
}

QHRing::QHRing(const RootSystem& rs, ParabolicSet p) : rs_(rs), p_(std::move(p)) {
    rs_.validate_parabolic(p_);
    for (int i = 1; i <= rs_.rank(); ++i)
        if (!p_.contains(i)) free_idx_.push_back(i);

    std::set<std::size_t> inside;
    for (std::size_t k : rs_.parabolic_positive_roots(p_)) inside.insert(k);
    for (std::size_t k = 0; k < rs_.positive_roots().size(); ++k)
        if (!inside.count(k)) outside_.push_back(k);

    c1_simple_.resize(free_idx_.size(), 0);
    for (std::size_t t = 0; t < free_idx_.size(); ++t)
        for (std::size_t k : outside_)
            c1_simple_[t] += rs_.pairing(rs_.positive_roots()[k],
                                         rs_.simple_coroot(free_idx_[t]));

    for (std::size_t k : outside_) {
        const CoweightVec& av = rs_.positive_coroots()[k];
        q_shift_.push_back(curve_class(av));
        long long n = 0;
        for (std::size_t s : outside_) n += rs_.pairing(rs_.positive_roots()[s], av);
        n_alpha_.push_back(n);
    }

    WeylData wd = enumerate_weyl(rs_, p_);
    wp_ = std::move(wd.minimal);
    for (std::size_t i = 0; i < wp_.size(); ++i) wp_pos_.emplace(wp_[i].key(), i);
    max_wp_length_ = wp_.empty() ? 0 : wp_.back().length();
}

std::string QHRing::convention_tag() {
    return "billey:untwisted,chev:eq=+,qlen:coset-projected,solve:layer-batch";
}

bool QHRing::in_wp(const WeylElement& w) const {
    if (w.rank() != rs_.rank()) throw RankMismatch("coset test: rank mismatch");
    for (int j : p_.indices) {
        auto s = rs_.root_sign(w.act(rs_.simple_root(j)));
        if (!s || *s < 0) return false;
    }
    return true;
}

void QHRing::require_wp(const WeylElement& w, const char* where) const {
    if (!in_wp(w))
        throw NotMinimalCosetRep(std::string(where) +
                                 ": element is not a minimal coset representative");
}

CurveClass QHRing::zero_curve() const {
    return CurveClass{std::vector<long long>(free_idx_.size(), 0)};
}

CurveClass QHRing::curve_class(const CoweightVec& mu) const {
    if ((int)mu.c.size() != rs_.rank())
        throw RankMismatch("curve class projection: rank mismatch");
    CurveClass out = zero_curve();
    for (std::size_t t = 0; t < free_idx_.size(); ++t)
        out.coords[t] = mu.c[free_idx_[t] - 1];
    return out;
}

long long QHRing::c1_pairing(const CurveClass& beta) const {
    if (beta.coords.size() != free_idx_.size())
        throw RankMismatch("c1 pairing: curve class arity mismatch");
    long long n = 0;
    for (std::size_t t = 0; t < free_idx_.size(); ++t)
        n += beta.coords[t] * c1_simple_[t];
    return n;
}

QuantumClass QHRing::basis_class(const WeylElement& w) const {
    require_wp(w, "basis class");
    QuantumClass out;
    out.add(zero_curve(), w, Poly::constant(rs_.rank(), 1));
    return out;
}

Poly QHRing::localization(const WeylElement& v, const WeylElement& u) const {
    require_wp(v, "localization");
    require_wp(u, "localization");
    auto key = std::make_pair(v.key(), u.key());
    {
        std::shared_lock lock(loc_mutex_);
        auto it = loc_memo_.find(key);
        if (it != loc_memo_.end()) return it->second;
    }
    Poly val = localization_impl(v, u);
    std::unique_lock lock(loc_mutex_);
    return loc_memo_.emplace(std::move(key), std::move(val)).first->second;
}

// Subword sum: fix the least reduced word of u, walk its positions with the
// running prefix, and over every subword that is a reduced word of v multiply
// the roots the prefix moves the letters to.  All such roots are positive.
Poly QHRing::localization_impl(const WeylElement& v, const WeylElement& u) const {
    const int rank = rs_.rank();
    if (v.is_identity()) return Poly::constant(rank, 1);
    if (v.length() > u.length()) return Poly(rank);

    std::vector<int> word = reduced_word_finite(rs_, u);
    std::vector<Poly> beta;
    beta.reserve(word.size());
    WeylElement pre = rs_.identity();
    for (int letter : word) {
        RootVec moved = pre.act(rs_.simple_root(letter));
        beta.push_back(LinForm::from_root(moved).to_poly(rank));
        pre = weyl_mul(rs_, pre, rs_.simple_reflection(letter));
    }

    Poly total(rank);
    std::function<void(std::size_t, const WeylElement&, const Poly&)> walk =
        [&](std::size_t k, const WeylElement& cur, const Poly& prod) {
            if (cur.length() == v.length()) {
                if (cur == v) total = total + prod;
                return;
            }
            if (v.length() - cur.length() > (int)(word.size() - k)) return;
            walk(k + 1, cur, prod);
            WeylElement nxt = weyl_mul(rs_, cur, rs_.simple_reflection(word[k]));
            if (nxt.length() == cur.length() + 1) walk(k + 1, nxt, prod * beta[k]);
        };
    walk(0, rs_.identity(), Poly::constant(rank, 1));
    return total;
}

LocalizationVector QHRing::localize(const WeylElement& v) const {
    LocalizationVector out;
    for (const WeylElement& u : wp_) out.entries.emplace(u, localization(v, u));
    return out;
}

std::optional<std::string> QHRing::gkm_violation(const LocalizationVector& f) const {
    for (const WeylElement& u : wp_) {
        auto fu = f.entries.find(u);
        if (fu == f.entries.end())
            return "missing fixed point " + word_label(rs_, u);
        for (std::size_t t = 0; t < outside_.size(); ++t) {
            std::size_t k = outside_[t];
            WeylElement u2 =
                min_coset_rep(rs_, weyl_mul(rs_, u, rs_.reflection(k)), p_);
            auto fu2 = f.entries.find(u2);
            if (fu2 == f.entries.end())
                return "missing fixed point " + word_label(rs_, u2);
            Poly diff = fu->second - fu2->second;
            if (diff.is_zero()) continue;
            // The curve joining the two fixed points has weight u(alpha).
            LinForm w = LinForm::from_root(u.act(rs_.positive_roots()[k]))
                            .sign_canonical()
                            .first;
            if (!exact_div_linear(diff, w))
                return "edge u=" + word_label(rs_, u) + ", image of root " +
                       std::to_string(k) + ": difference not divisible by the "
                       "connecting weight";
        }
    }
    return std::nullopt;
}

std::map<WeylElement, Poly> QHRing::classical_impl(const WeylElement& u,
                                                   const WeylElement& v) const {
    std::vector<Poly> f;
    f.reserve(wp_.size());
    for (const WeylElement& x : wp_) f.push_back(localization(u, x) * localization(v, x));

    std::map<WeylElement, Poly> out;
    for (std::size_t ix = 0; ix < wp_.size(); ++ix) {
        if (f[ix].is_zero()) continue;
        const WeylElement& x = wp_[ix];
        // Euler class at the bottom fixed point of sigma_x: the product of
        // the positive roots sent negative by x^{-1}.
        std::vector<LinForm> factors;
        for (const RootVec& a : rs_.positive_roots())
            if (*rs_.root_sign(x.act_inverse(a)) < 0)
                factors.push_back(LinForm::from_root(a));
        if ((int)factors.size() != x.length())
            throw Error("inversion count disagrees with length");
        Poly c = f[ix];
        for (const LinForm& lf : factors) {
            auto q = exact_div_linear(c, lf);
            if (!q)
                throw ResidualNonzero(ResidualNonzero::Reason::ConventionBug,
                                      "classical expansion: residual at " +
                                          word_label(rs_, x) +
                                          " is not divisible by its Euler class");
            c = *q;
        }
        out.emplace(x, c);
        for (std::size_t iy = ix; iy < wp_.size(); ++iy) {
            Poly s = c * localization(x, wp_[iy]);
            if (!s.is_zero()) f[iy] = f[iy] - s;
        }
    }
    for (std::size_t ix = 0; ix < wp_.size(); ++ix)
        if (!f[ix].is_zero())
            throw ResidualNonzero(ResidualNonzero::Reason::ConventionBug,
                                  "classical expansion left a residual at " +
                                      word_label(rs_, wp_[ix]));
    return out;
}

std::map<WeylElement, Poly> QHRing::classical_product(const WeylElement& u,
                                                      const WeylElement& v) const {
    require_wp(u, "classical product");
    require_wp(v, "classical product");
    ensure_sign_check();
    return classical_impl(u, v);
}

QuantumClass QHRing::chevalley_impl(int i, const QuantumClass& c) const {
    const int rank = rs_.rank();
    QuantumClass out;
    for (const auto& [key, p] : c.entries) {
        const CurveClass& d = key.first;
        const WeylElement& w = key.second;
        RootVec ev = omega_minus_v_omega(rs_, i, w);
        LinForm evf{ev.c};
        if (!evf.is_zero()) out.add(d, w, p * evf.to_poly(rank));
        for (std::size_t t = 0; t < outside_.size(); ++t) {
            std::size_t k = outside_[t];
            long long m = omega_pairing(i, rs_.positive_coroots()[k]);
            if (m == 0) continue;
            WeylElement ws = weyl_mul(rs_, w, rs_.reflection(k));
            if (ws.length() == w.length() + 1 && in_wp(ws))
                out.add(d, ws, p * Int(m));
            WeylElement pw = min_coset_rep(rs_, ws, p_);
            if (pw.length() == w.length() + 1 - n_alpha_[t]) {
                // A quantum term always drops at least one level; anything
                // else would break the grading and the layer recursion.
                if (n_alpha_[t] < 2)
                    throw Error("quantum term with curve degree below 2");
                out.add(d + q_shift_[t], pw, p * Int(m));
            }
        }
    }
    return out;
}

QuantumClass QHRing::chevalley(int i, const QuantumClass& c) const {
    if (i < 1 || i > rs_.rank()) throw InvalidInput("divisor index out of range");
    if (p_.contains(i))
        throw InvalidInput("divisor index lies in the parabolic set");
    for (const auto& [key, p] : c.entries) {
        (void)p;
        require_wp(key.second, "chevalley");
    }
    ensure_sign_check();
    return chevalley_impl(i, c);
}

// The equivariant term's sign is not taken on faith: the coefficient of
// sigma_{s_i} in sigma_{s_i} * sigma_{s_i} is computed independently by GKM
// localization and must match omega_i - s_i(omega_i).
void QHRing::ensure_sign_check() const {
    std::call_once(sign_checked_, [this] {
        if (free_idx_.empty()) return;
        int i = free_idx_[0];
        WeylElement si = rs_.simple_reflection(i);
        auto cls = classical_impl(si, si);
        RootVec ev = omega_minus_v_omega(rs_, i, si);
        Poly expect = LinForm{ev.c}.to_poly(rs_.rank());
        auto it = cls.find(si);
        Poly got = (it == cls.end()) ? Poly(rs_.rank()) : it->second;
        if (got != expect)
            throw Error("equivariant divisor term disagrees with the GKM product");
    });
}

void QHRing::fill_layers(Family& fam, const WeylElement& v, int upto) const {
    const int rank = rs_.rank();
    if (fam.layers_done < 0) {
        QuantumClass base;
        base.add(zero_curve(), v, Poly::constant(rank, 1));
        fam.cls.emplace(rs_.identity().key(), std::move(base));
        fam.layers_done = 0;
    }
    for (int L = fam.layers_done + 1; L <= upto; ++L) {
        std::vector<std::size_t> cols;
        std::map<std::vector<std::int64_t>, std::size_t> col_of;
        for (std::size_t ix = 0; ix < wp_.size(); ++ix)
            if (wp_[ix].length() == L) {
                col_of.emplace(wp_[ix].key(), cols.size());
                cols.push_back(ix);
            }
        if (cols.empty()) {
            fam.layers_done = L;
            continue;
        }

        if (L == 1) {
            // The length-one representatives are exactly the free simple
            // reflections; multiply the unit product by each divisor.
            const QuantumClass& base = fam.cls.at(rs_.identity().key());
            for (std::size_t ix : cols) {
                int i = 0;
                for (int cand : free_idx_)
                    if (wp_[ix] == rs_.simple_reflection(cand)) i = cand;
                if (i == 0) throw Error("length-one representative is not simple");
                fam.cls.emplace(wp_[ix].key(), chevalley_impl(i, base));
            }
            fam.layers_done = L;
            continue;
        }

        // Associativity equations: one per (divisor, previous-layer element).
        std::vector<std::vector<Int>> arows;
        std::vector<QuantumClass> rhs;
        for (const WeylElement& up : wp_) {
            if (up.length() != L - 1) continue;
            const QuantumClass& Xup = fam.cls.at(up.key());
            for (int i : free_idx_) {
                QuantumClass b = chevalley_impl(i, Xup);
                std::vector<Int> arow(cols.size(), Int(0));
                RootVec ev = omega_minus_v_omega(rs_, i, up);
                LinForm evf{ev.c};
                if (!evf.is_zero()) b.add_scaled(Xup, -evf.to_poly(rank));
                for (std::size_t t = 0; t < outside_.size(); ++t) {
                    std::size_t k = outside_[t];
                    long long m = omega_pairing(i, rs_.positive_coroots()[k]);
                    if (m == 0) continue;
                    WeylElement ws = weyl_mul(rs_, up, rs_.reflection(k));
                    if (ws.length() == L && in_wp(ws))
                        arow[col_of.at(ws.key())] += Int(m);
                    WeylElement pw = min_coset_rep(rs_, ws, p_);
                    if (pw.length() == L - n_alpha_[t])
                        b.add_shifted(fam.cls.at(pw.key()), q_shift_[t],
                                      Poly::constant(rank, -Int(m)));
                }
                arows.push_back(std::move(arow));
                rhs.push_back(std::move(b));
            }
        }

        RationalEchelon ech;
        std::vector<std::size_t> picked;
        for (std::size_t r = 0; r < arows.size() && picked.size() < cols.size(); ++r) {
            std::vector<Rat> rowq(cols.size());
            for (std::size_t j = 0; j < cols.size(); ++j) rowq[j] = Rat(arows[r][j]);
            if (ech.try_add(std::move(rowq))) picked.push_back(r);
        }
        if (picked.size() < cols.size())
            throw RecursionStuck("divisor classes cannot separate the length-" +
                                 std::to_string(L) + " layer of this coset space");

        std::vector<std::vector<Rat>> m(cols.size(), std::vector<Rat>(cols.size()));
        for (std::size_t a = 0; a < picked.size(); ++a)
            for (std::size_t j = 0; j < cols.size(); ++j)
                m[a][j] = Rat(arows[picked[a]][j]);
        auto inv = invert_rational(std::move(m));
        if (!inv) throw RecursionStuck("selected equations are singular");

        for (std::size_t j = 0; j < cols.size(); ++j) {
            Int den(1);
            for (std::size_t a = 0; a < cols.size(); ++a) {
                const Rat& r = (*inv)[j][a];
                if (r != 0) den = boost::multiprecision::lcm(den, denominator(r));
            }
            QuantumClass acc;
            for (std::size_t a = 0; a < cols.size(); ++a) {
                const Rat& r = (*inv)[j][a];
                if (r == 0) continue;
                Int c = numerator(r) * (den / denominator(r));
                acc.add_scaled(rhs[picked[a]], Poly::constant(rank, c));
            }
            auto q = acc.divexact_scalar(den);
            if (!q) throw NotPolynomial("layer solve produced a non-integral class");
            fam.cls.emplace(wp_[cols[j]].key(), std::move(*q));
        }
        fam.layers_done = L;
    }
}

QuantumClass QHRing::quantum_product(const WeylElement& u, const WeylElement& v) const {
    require_wp(u, "quantum product");
    require_wp(v, "quantum product");
    ensure_sign_check();
    {
        std::shared_lock lock(prod_mutex_);
        auto it = family_memo_.find(v.key());
        if (it != family_memo_.end() && it->second.layers_done >= u.length())
            return it->second.cls.at(u.key());
    }
    std::unique_lock lock(prod_mutex_);
    Family& fam = family_memo_[v.key()];
    fill_layers(fam, v, u.length());
    return fam.cls.at(u.key());
}

} // namespace affqh
