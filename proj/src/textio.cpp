#include "affqh/textio.hpp"

#include <cctype>

#include "affqh/errors.hpp"

namespace affqh {

namespace {

std::string strip_spaces(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (c != ' ' && c != '\t') out += c;
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

long long parse_int_token(const std::string& s) {
    if (s.empty()) throw ParseError("empty integer");
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) throw ParseError("bare minus sign");
    long long val = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("bad integer '" + s + "'");
        val = val * 10 + (s[i] - '0');
    }
    return s[0] == '-' ? -val : val;
}

// Cursor over a space-stripped string; all parsers below work on it.
struct Scanner {
    const std::string& s;
    std::size_t i = 0;

    bool done() const { return i >= s.size(); }
    char peek() const { return done() ? '\0' : s[i]; }
    void expect(char c, const char* what) {
        if (peek() != c)
            throw ParseError(std::string("expected '") + c + "' in " + what);
        ++i;
    }
    std::string digits(const char* what) {
        std::size_t start = i;
        while (!done() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start)
            throw ParseError(std::string("expected digits in ") + what);
        return s.substr(start, i - start);
    }
};

void append_term(std::string& out, bool negative, const std::string& body) {
    if (out.empty()) out = (negative ? "-" : "") + body;
    else out += (negative ? " - " : " + ") + body;
}

std::string term_body(const Monomial& mono, const Int& magnitude) {
    std::string vars;
    for (std::size_t k = 0; k < mono.size(); ++k) {
        if (mono[k] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += "a" + std::to_string(k + 1);
        if (mono[k] > 1) vars += "^" + std::to_string(mono[k]);
    }
    if (vars.empty()) return magnitude.str();
    if (magnitude == 1) return vars;
    return magnitude.str() + "*" + vars;
}

// One signless term at the cursor: optional integer coefficient, optional
// '*' and a product of a<i>[^e] factors.
std::pair<Monomial, Int> parse_term(Scanner& sc, int nvars) {
    Monomial mono(nvars, 0);
    Int coeff = 1;
    bool saw_anything = false;

    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
        coeff = Int(sc.digits("coefficient"));
        saw_anything = true;
        if (sc.peek() == '*') {
            ++sc.i;
            if (sc.peek() != 'a')
                throw ParseError("expected a variable after '*'");
        }
    }
    while (sc.peek() == 'a') {
        ++sc.i;
        long long idx = parse_int_token(sc.digits("variable index"));
        if (idx < 1 || idx > nvars)
            throw ParseError("variable index out of range");
        long long exp = 1;
        if (sc.peek() == '^') {
            ++sc.i;
            exp = parse_int_token(sc.digits("exponent"));
        }
        mono[idx - 1] += static_cast<int>(exp);
        saw_anything = true;
        if (sc.peek() == '*' && sc.i + 1 < sc.s.size() && sc.s[sc.i + 1] == 'a')
            ++sc.i;
        else
            break;
    }
    if (!saw_anything) throw ParseError("expected a term");
    return {mono, coeff};
}

Poly parse_poly(Scanner& sc, int nvars) {
    Poly out(nvars);
    int sign = 1;
    if (sc.peek() == '-') {
        sign = -1;
        ++sc.i;
    }
    for (;;) {
        auto [mono, coeff] = parse_term(sc, nvars);
        out.add_term(mono, coeff * Int(sign));
        if (sc.peek() != '+' && sc.peek() != '-') break;
        sign = sc.peek() == '-' ? -1 : 1;
        ++sc.i;
    }
    return out;
}

} // namespace

std::string poly_to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    // Map order is ascending lexicographic on exponent vectors; canonical
    // form lists the monomials descending, so walk it backwards.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        bool negative = it->second < 0;
        Int mag = negative ? Int(-it->second) : it->second;
        append_term(out, negative, term_body(it->first, mag));
    }
    return out;
}

Poly poly_from_string(const std::string& s, int nvars) {
    std::string t = strip_spaces(s);
    if (t.empty()) throw ParseError("empty polynomial text");
    if (t == "0") return Poly(nvars);
    Scanner sc{t};
    Poly out = parse_poly(sc, nvars);
    if (!sc.done()) throw ParseError("trailing characters in polynomial text");
    return out;
}

std::string linform_to_string(const LinForm& f) {
    return poly_to_string(f.to_poly(static_cast<int>(f.c.size())));
}

LinForm linform_from_string(const std::string& s, int nvars) {
    Poly p = poly_from_string(s, nvars);
    LinForm out{std::vector<int>(nvars, 0)};
    if (p.is_zero()) throw ParseError("a linear form cannot be zero");
    for (const auto& [mono, coeff] : p.terms()) {
        int where = -1;
        for (int k = 0; k < nvars; ++k) {
            if (mono[k] == 0) continue;
            if (mono[k] != 1 || where >= 0)
                throw ParseError("not a linear form: '" + s + "'");
            where = k;
        }
        if (where < 0) throw ParseError("not a linear form: '" + s + "'");
        out.c[where] = coeff.convert_to<int>();
    }
    return out;
}

std::string linfrac_to_string(const LinFrac& f) {
    if (f.is_polynomial()) return poly_to_string(f.num());
    std::string out = "(" + poly_to_string(f.num()) + ")/(";
    bool first = true;
    for (const auto& [form, mult] : f.den()) {
        if (!first) out += "*";
        first = false;
        out += "(" + linform_to_string(form) + ")";
        if (mult > 1) out += "^" + std::to_string(mult);
    }
    return out + ")";
}

LinFrac linfrac_from_string(const std::string& s, int nvars) {
    std::string t = strip_spaces(s);
    if (t.empty() || t[0] != '(')
        return LinFrac::from_poly(poly_from_string(t, nvars));
    std::size_t close = t.find(')');
    if (close == std::string::npos)
        throw ParseError("unterminated numerator in fraction text");
    Poly num = poly_from_string(t.substr(1, close - 1), nvars);
    if (t.compare(close, 3, ")/(") != 0)
        throw ParseError("expected ')/(' in fraction text");

    std::vector<LinForm> dens;
    std::size_t i = close + 3;
    for (;;) {
        if (i >= t.size() || t[i] != '(')
            throw ParseError("expected a parenthesized form in denominator");
        std::size_t end = t.find(')', i);
        if (end == std::string::npos)
            throw ParseError("unterminated form in denominator");
        LinForm form = linform_from_string(t.substr(i + 1, end - i - 1), nvars);
        i = end + 1;
        long long mult = 1;
        if (i < t.size() && t[i] == '^') {
            Scanner sc{t};
            sc.i = i + 1;
            mult = parse_int_token(sc.digits("denominator multiplicity"));
            i = sc.i;
        }
        if (mult < 1) throw ParseError("denominator multiplicity must be positive");
        for (long long k = 0; k < mult; ++k) dens.push_back(form);
        if (i < t.size() && t[i] == '*') {
            ++i;
            continue;
        }
        break;
    }
    if (i + 1 != t.size() || t[i] != ')')
        throw ParseError("trailing characters in fraction text");
    return LinFrac::from_poly(num).div_by_factored(1, dens, {});
}

std::string word_to_string(const std::vector<int>& word) {
    if (word.empty()) return "e";
    std::string out;
    for (int letter : word) {
        if (!out.empty()) out += "*";
        out += "s" + std::to_string(letter);
    }
    return out;
}

std::vector<int> word_from_string(const std::string& s) {
    std::string t = strip_spaces(s);
    if (t.empty()) throw ParseError("empty word text");
    if (t == "e") return {};
    std::vector<int> out;
    for (const std::string& tok : split(t, '*')) {
        if (tok.size() < 2 || tok[0] != 's')
            throw ParseError("bad reflection token '" + tok + "'");
        long long letter = parse_int_token(tok.substr(1));
        if (letter < 0) throw ParseError("negative reflection index");
        out.push_back(static_cast<int>(letter));
    }
    return out;
}

std::string weyl_to_string(const RootSystem& rs, const WeylElement& w) {
    return word_to_string(reduced_word_finite(rs, w));
}

WeylElement weyl_from_string(const RootSystem& rs, const std::string& s) {
    WeylElement w = rs.identity();
    for (int letter : word_from_string(s)) {
        if (letter < 1 || letter > rs.rank())
            throw ParseError("reflection index out of range in '" + s + "'");
        w = weyl_mul(rs, w, rs.simple_reflection(letter));
    }
    return w;
}

std::string aff_to_string(const RootSystem& rs, const AffineWeylElement& x) {
    return "w=" + weyl_to_string(rs, x.w) + ";lam=" + coweight_to_string(x.lam);
}

AffineWeylElement aff_from_string(const RootSystem& rs, const std::string& s) {
    std::string t = strip_spaces(s);
    auto parts = split(t, ';');
    if (parts.size() != 2 || parts[0].rfind("w=", 0) != 0 ||
        parts[1].rfind("lam=", 0) != 0)
        throw ParseError("element text must look like 'w=s1*s2;lam=-1,0'");
    WeylElement w = weyl_from_string(rs, parts[0].substr(2));
    CoweightVec lam = coweight_from_string(parts[1].substr(4), rs.rank());
    return aff_from_parts(rs, w, lam);
}

std::string coweight_to_string(const CoweightVec& mu) {
    std::string out;
    for (std::size_t i = 0; i < mu.c.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(mu.c[i]);
    }
    return out;
}

CoweightVec coweight_from_string(const std::string& s, int rank) {
    auto parts = split(strip_spaces(s), ',');
    if (static_cast<int>(parts.size()) != rank)
        throw ParseError("expected " + std::to_string(rank) +
                         " coordinates in '" + s + "'");
    std::vector<int> c;
    for (const std::string& tok : parts)
        c.push_back(static_cast<int>(parse_int_token(tok)));
    return CoweightVec{std::move(c)};
}

std::string curve_to_string(const CurveClass& d) {
    std::string out;
    for (std::size_t i = 0; i < d.coords.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(d.coords[i]);
    }
    return out;
}

CurveClass curve_from_string(const std::string& s, std::size_t nfree) {
    std::string t = strip_spaces(s);
    if (nfree == 0) {
        if (!t.empty()) throw ParseError("expected no curve coordinates");
        return CurveClass{{}};
    }
    auto parts = split(t, ',');
    if (parts.size() != nfree)
        throw ParseError("expected " + std::to_string(nfree) +
                         " curve coordinates in '" + s + "'");
    std::vector<long long> coords;
    for (const std::string& tok : parts) coords.push_back(parse_int_token(tok));
    return CurveClass{std::move(coords)};
}

} // namespace affqh
