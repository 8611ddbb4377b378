#pragma once

// Exact commutative algebra in the equivariant parameters a_1..a_r, which
// are identified with the simple roots.  Two layers: integer-coefficient
// polynomials, and fractions whose denominators are multisets of linear
// forms.  Every denominator the localization pipeline produces is a product
// of roots, so this closed representation never needs polynomial GCDs.

#include <map>
#include <optional>
#include <vector>

#include "affqh/errors.hpp"
#include "affqh/numeric.hpp"
#include "affqh/rootdata.hpp"

namespace affqh {

// Exponent vector, one entry per equivariant parameter.
using Monomial = std::vector<int>;

class Poly {
public:
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, Int c);
    static Poly variable(int nvars, int i); // a_i, 1-based

    int nvars() const { return nvars_; }
    // Sorted ascending-lex; canonical print order is the reverse.
    const std::map<Monomial, Int>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const Poly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Int& c) const;

    void add_term(const Monomial& m, const Int& c); // accumulate, drop zeros

    int total_degree() const; // -1 for the zero polynomial
    bool is_homogeneous() const;
    Int constant_term() const;
    Int leading_coeff() const; // coefficient of the descending-lex leading term

    // Exact division by an integer scalar; nullopt when any coefficient
    // fails to divide.
    std::optional<Poly> divexact_scalar(const Int& c) const;

    // Evaluation at an integer point (test oracle use).
    Int eval(const std::vector<Int>& point) const;

private:
    int nvars_;
    std::map<Monomial, Int> terms_;
};

// Integer linear form in a_1..a_r; in practice always a root written in
// simple-root coordinates.
struct LinForm {
    std::vector<int> c;

    static LinForm from_root(const RootVec& a) { return LinForm{a.c}; }

    bool is_zero() const;
    bool operator==(const LinForm& o) const { return c == o.c; }
    bool operator<(const LinForm& o) const { return c < o.c; }
    LinForm operator-() const;

    // (canonical form, sign): first non-zero coordinate made positive.
    std::pair<LinForm, int> sign_canonical() const;
    Poly to_poly(int nvars) const;
};

// Quotient of p by the linear form f, or nullopt when f does not divide p.
// Synthetic division along the first coordinate where f is non-zero; forms
// are primitive (roots always are), so rational divisibility coincides with
// integer divisibility and the integer checks are exhaustive.
std::optional<Poly> exact_div_linear(const Poly& p, const LinForm& f);

// num / prod(den forms ^ multiplicity).  Denominator forms are stored
// sign-canonically with flips folded into the numerator, and normalize
// cancels every denominator factor that exactly divides the numerator, so
// equal fractions have equal representations.
class LinFrac {
public:
    explicit LinFrac(int nvars) : num_(nvars) {}

    static LinFrac from_poly(Poly p);
    static LinFrac from_int(int nvars, Int c);
    // sign / prod(forms): the shape of every Euler class.
    static LinFrac reciprocal(int nvars, int sign,
                              const std::vector<LinForm>& forms);

    int nvars() const { return num_.nvars(); }
    const Poly& num() const { return num_; }
    const std::map<LinForm, int>& den() const { return den_; }
    Poly den_poly() const; // expanded denominator product

    bool is_zero() const { return num_.is_zero(); }
    bool operator==(const LinFrac& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const LinFrac& o) const { return !(*this == o); }

    LinFrac operator-() const;
    LinFrac operator+(const LinFrac& o) const;
    LinFrac operator-(const LinFrac& o) const;
    LinFrac operator*(const LinFrac& o) const;
    LinFrac operator*(const Poly& p) const;
    LinFrac operator*(const Int& c) const;

    // Division, restricted to the shapes the pipeline actually divides by.
    // The expanded-divisor overload accepts a numerator that is a non-zero
    // constant or a single linear form (up to sign); anything else throws
    // DivisionByNonLinearProduct.  Callers holding a factored divisor
    // sign*prod(num_forms)/prod(den_forms) use the second overload, which
    // has no shape restriction.
    LinFrac div_by(const LinFrac& y) const;
    LinFrac div_by_factored(int sign, const std::vector<LinForm>& num_forms,
                            const std::vector<LinForm>& den_forms) const;

    bool is_polynomial() const { return den_.empty(); }
    Poly to_poly() const; // throws NotPolynomial when den is non-empty

    // Constant term in the non-equivariant limit a_i -> 0.
    Int specialize_zero() const;

private:
    Poly num_;
    std::map<LinForm, int> den_; // form -> multiplicity, forms sign-canonical

    void push_den(const LinForm& f, int mult); // canonicalizes, folds sign
    void normalize();
};

Int specialize_zero(const Poly& p);

} // namespace affqh
