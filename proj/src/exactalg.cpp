#include "affqh/exactalg.hpp"

#include <algorithm>
#include <numeric>

namespace affqh {

Poly Poly::constant(int nvars, Int c) {
    Poly p(nvars);
    if (c != 0) p.terms_[Monomial(nvars, 0)] = std::move(c);
    return p;
}

Poly Poly::variable(int nvars, int i) {
    if (i < 1 || i > nvars) throw InvalidInput("Poly::variable: index out of range");
    Poly p(nvars);
    Monomial m(nvars, 0);
    m[i - 1] = 1;
    p.terms_[m] = 1;
    return p;
}

void Poly::add_term(const Monomial& m, const Int& c) {
    if ((int)m.size() != nvars_) throw RankMismatch("Poly::add_term: arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly p(nvars_);
    for (const auto& [m, c] : terms_) p.terms_[m] = -c;
    return p;
}

Poly Poly::operator+(const Poly& o) const {
    if (nvars_ != o.nvars_) throw RankMismatch("Poly::+: arity mismatch");
    Poly p = *this;
    for (const auto& [m, c] : o.terms_) p.add_term(m, c);
    return p;
}

Poly Poly::operator-(const Poly& o) const {
    if (nvars_ != o.nvars_) throw RankMismatch("Poly::-: arity mismatch");
    Poly p = *this;
    for (const auto& [m, c] : o.terms_) p.add_term(m, -c);
    return p;
}

Poly Poly::operator*(const Poly& o) const {
    if (nvars_ != o.nvars_) throw RankMismatch("Poly::*: arity mismatch");
    Poly p(nvars_);
    Monomial m(nvars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
            p.add_term(m, ca * cb);
        }
    return p;
}

Poly Poly::operator*(const Int& c) const {
    Poly p(nvars_);
    if (c == 0) return p;
    for (const auto& [m, v] : terms_) p.terms_[m] = v * c;
    return p;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_)
        d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
    return d;
}

bool Poly::is_homogeneous() const {
    int d = -2;
    for (const auto& [m, c] : terms_) {
        int dm = std::accumulate(m.begin(), m.end(), 0);
        if (d == -2) d = dm;
        else if (d != dm) return false;
    }
    return true;
}

Int Poly::constant_term() const {
    auto it = terms_.find(Monomial(nvars_, 0));
    return it == terms_.end() ? Int(0) : it->second;
}

Int Poly::leading_coeff() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->second;
}

std::optional<Poly> Poly::divexact_scalar(const Int& c) const {
    if (c == 0) throw InvalidInput("divexact_scalar: zero divisor");
    Poly p(nvars_);
    for (const auto& [m, v] : terms_) {
        if (v % c != 0) return std::nullopt;
        p.terms_[m] = v / c;
    }
    return p;
}

Int Poly::eval(const std::vector<Int>& point) const {
    if ((int)point.size() != nvars_) throw RankMismatch("Poly::eval: arity mismatch");
    Int total = 0;
    for (const auto& [m, c] : terms_) {
        Int t = c;
        for (int i = 0; i < nvars_; ++i)
            for (int e = 0; e < m[i]; ++e) t *= point[i];
        total += t;
    }
    return total;
}

bool LinForm::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

LinForm LinForm::operator-() const {
    LinForm f = *this;
    for (int& x : f.c) x = -x;
    return f;
}

std::pair<LinForm, int> LinForm::sign_canonical() const {
    for (int x : c) {
        if (x > 0) return {*this, 1};
        if (x < 0) return {-*this, -1};
    }
    throw InvalidInput("sign_canonical: zero form");
}

Poly LinForm::to_poly(int nvars) const {
    if ((int)c.size() != nvars) throw RankMismatch("LinForm::to_poly: arity mismatch");
    Poly p(nvars);
    Monomial m(nvars, 0);
    for (int i = 0; i < nvars; ++i) {
        if (c[i] == 0) continue;
        m[i] = 1;
        p.add_term(m, c[i]);
        m[i] = 0;
    }
    return p;
}

std::optional<Poly> exact_div_linear(const Poly& p, const LinForm& f) {
    int n = p.nvars();
    if ((int)f.c.size() != n) throw RankMismatch("exact_div_linear: arity mismatch");
    if (f.is_zero()) throw InvalidInput("exact_div_linear: zero form");
    if (p.is_zero()) return Poly(n);

    auto [cf, sign] = f.sign_canonical();
    int piv = 0;
    while (cf.c[piv] == 0) ++piv;
    Int lead = cf.c[piv];

    // Write p = sum_d a_piv^d coeff[d] and f = lead*a_piv + g, then run the
    // one-variable division top-down.  Each quotient coefficient must divide
    // exactly; since roots are primitive forms, a failed integer division
    // already proves non-divisibility over the rationals.
    int dmax = 0;
    for (const auto& [m, c] : p.terms()) dmax = std::max(dmax, m[piv]);
    std::vector<Poly> coeff(dmax + 1, Poly(n));
    for (const auto& [m, c] : p.terms()) {
        Monomial stripped = m;
        int d = stripped[piv];
        stripped[piv] = 0;
        coeff[d].add_term(stripped, c);
    }
    if (dmax == 0) return std::nullopt;

    LinForm g = cf;
    g.c[piv] = 0;
    Poly gp = g.to_poly(n);

    std::vector<Poly> q(dmax, Poly(n));
    Poly r = coeff[dmax];
    for (int d = dmax; d >= 1; --d) {
        auto qd = r.divexact_scalar(lead);
        if (!qd) return std::nullopt;
        q[d - 1] = *qd;
        r = coeff[d - 1] - q[d - 1] * gp;
    }
    if (!r.is_zero()) return std::nullopt;

    Poly out(n);
    for (int d = 0; d < dmax; ++d) {
        for (const auto& [m, c] : q[d].terms()) {
            Monomial lifted = m;
            lifted[piv] = d;
            out.add_term(lifted, sign == 1 ? c : -c);
        }
    }
    return out;
}

LinFrac LinFrac::from_poly(Poly p) {
    LinFrac x(p.nvars());
    x.num_ = std::move(p);
    return x;
}

LinFrac LinFrac::from_int(int nvars, Int c) {
    return from_poly(Poly::constant(nvars, std::move(c)));
}

LinFrac LinFrac::reciprocal(int nvars, int sign,
                            const std::vector<LinForm>& forms) {
    if (sign != 1 && sign != -1) throw InvalidInput("reciprocal: sign must be +-1");
    LinFrac x(nvars);
    x.num_ = Poly::constant(nvars, sign);
    for (const LinForm& f : forms) x.push_den(f, 1);
    x.normalize();
    return x;
}

Poly LinFrac::den_poly() const {
    Poly p = Poly::constant(nvars(), 1);
    for (const auto& [f, mult] : den_)
        for (int k = 0; k < mult; ++k) p = p * f.to_poly(nvars());
    return p;
}

void LinFrac::push_den(const LinForm& f, int mult) {
    if (mult == 0) return;
    auto [cf, sign] = f.sign_canonical();
    den_[cf] += mult;
    if (sign == -1 && mult % 2 != 0) num_ = -num_;
}

void LinFrac::normalize() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
        bool erased = false;
        while (it->second > 0) {
            auto q = exact_div_linear(num_, it->first);
            if (!q) break;
            num_ = std::move(*q);
            if (--it->second == 0) {
                it = den_.erase(it);
                erased = true;
                break;
            }
        }
        if (!erased) ++it;
        if (num_.is_zero()) { // only via an exhausted cancellation of 0
            den_.clear();
            return;
        }
    }
}

LinFrac LinFrac::operator-() const {
    LinFrac x = *this;
    x.num_ = -x.num_;
    return x;
}

LinFrac LinFrac::operator+(const LinFrac& o) const {
    if (nvars() != o.nvars()) throw RankMismatch("LinFrac::+: arity mismatch");
    // Common denominator: form-wise maximum multiplicity.
    LinFrac x(nvars());
    std::map<LinForm, int> lcm = den_;
    for (const auto& [f, m] : o.den_) {
        auto it = lcm.find(f);
        if (it == lcm.end()) lcm[f] = m;
        else it->second = std::max(it->second, m);
    }
    auto complement = [&](const std::map<LinForm, int>& d) {
        Poly p = Poly::constant(nvars(), 1);
        for (const auto& [f, m] : lcm) {
            auto it = d.find(f);
            int have = it == d.end() ? 0 : it->second;
            for (int k = have; k < m; ++k) p = p * f.to_poly(nvars());
        }
        return p;
    };
    x.num_ = num_ * complement(den_) + o.num_ * complement(o.den_);
    x.den_ = std::move(lcm);
    x.normalize();
    return x;
}

LinFrac LinFrac::operator-(const LinFrac& o) const { return *this + (-o); }

LinFrac LinFrac::operator*(const LinFrac& o) const {
    if (nvars() != o.nvars()) throw RankMismatch("LinFrac::*: arity mismatch");
    LinFrac x(nvars());
    x.num_ = num_ * o.num_;
    x.den_ = den_;
    for (const auto& [f, m] : o.den_) x.den_[f] += m;
    x.normalize();
    return x;
}

LinFrac LinFrac::operator*(const Poly& p) const {
    LinFrac x = *this;
    x.num_ = x.num_ * p;
    x.normalize();
    return x;
}

LinFrac LinFrac::operator*(const Int& c) const {
    LinFrac x = *this;
    x.num_ = x.num_ * c;
    if (x.num_.is_zero()) x.den_.clear();
    return x;
}

LinFrac LinFrac::div_by(const LinFrac& y) const {
    if (nvars() != y.nvars()) throw RankMismatch("LinFrac::div_by: arity mismatch");
    if (y.is_zero()) throw InvalidInput("div_by: zero divisor");
    // Recognize the divisor numerator as +-constant or +-(one linear form).
    const Poly& yn = y.num();
    std::vector<LinForm> nf;
    int sign = 1;
    if (yn.total_degree() == 0) {
        Int c = yn.constant_term();
        if (c == 1) sign = 1;
        else if (c == -1) sign = -1;
        else throw DivisionByNonLinearProduct(
            "div_by: constant divisor numerator is not a unit");
    } else if (yn.total_degree() == 1 && yn.is_homogeneous()) {
        LinForm f{std::vector<int>(nvars(), 0)};
        for (const auto& [m, c] : yn.terms()) {
            for (int i = 0; i < nvars(); ++i)
                if (m[i] == 1) f.c[i] = (int)c;
        }
        auto [cf, s] = f.sign_canonical();
        nf.push_back(cf);
        sign = s;
    } else {
        throw DivisionByNonLinearProduct(
            "div_by: divisor numerator is neither a unit nor a linear form");
    }
    std::vector<LinForm> df;
    for (const auto& [f, m] : y.den())
        for (int k = 0; k < m; ++k) df.push_back(f);
    return div_by_factored(sign, nf, df);
}

LinFrac LinFrac::div_by_factored(int sign, const std::vector<LinForm>& num_forms,
                                 const std::vector<LinForm>& den_forms) const {
    if (sign != 1 && sign != -1) throw InvalidInput("div_by_factored: bad sign");
    LinFrac x = *this;
    if (sign == -1) x.num_ = -x.num_;
    for (const LinForm& f : den_forms) x.num_ = x.num_ * f.to_poly(nvars());
    for (const LinForm& f : num_forms) x.push_den(f, 1);
    x.normalize();
    return x;
}

Poly LinFrac::to_poly() const {
    if (!den_.empty())
        throw NotPolynomial("to_poly: denominator factors remain");
    return num_;
}

Int LinFrac::specialize_zero() const { return to_poly().constant_term(); }

Int specialize_zero(const Poly& p) { return p.constant_term(); }

} // namespace affqh
