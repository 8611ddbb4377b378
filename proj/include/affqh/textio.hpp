#pragma once

// Canonical text forms for every value that crosses a process boundary:
// polynomials and fractions, Weyl and affine Weyl elements, coweights and
// curve classes.  Serialization is deterministic and parsing is exact, so
// anything written to a table file reads back as the same value.

#include <string>
#include <vector>

#include "affqh/affweyl.hpp"
#include "affqh/exactalg.hpp"
#include "affqh/qhring.hpp"
#include "affqh/rootdata.hpp"

namespace affqh {

// Sum of c*a1^e1*a2^e2 monomials with descending exponent vectors, unit
// coefficients dropped, " + " / " - " separators: "a1^2 - a2^2", "-3*a1*a2",
// "0".  The parser also accepts the same grammar with spaces removed.
std::string poly_to_string(const Poly& p);
Poly poly_from_string(const std::string& s, int nvars);

std::string linform_to_string(const LinForm& f);
LinForm linform_from_string(const std::string& s, int nvars);

// A polynomial fraction prints as its numerator when the denominator is
// empty, otherwise "(num)/((f1)^k1*(f2)^k2)" with the forms sign-canonical.
std::string linfrac_to_string(const LinFrac& f);
LinFrac linfrac_from_string(const std::string& s, int nvars);

// "e" or "s1*s2", the lexicographically least reduced word.
std::string weyl_to_string(const RootSystem& rs, const WeylElement& w);
WeylElement weyl_from_string(const RootSystem& rs, const std::string& s);

// Any word over the alphabet {s0, s1, ...} in the same product syntax; used
// for affine reduced words, where letter 0 is the extra wall reflection.
std::string word_to_string(const std::vector<int>& word);
std::vector<int> word_from_string(const std::string& s);

// "w=s1*s2;lam=-1,0": the finite part as a word, the translation part in
// simple-coroot coordinates.
std::string aff_to_string(const RootSystem& rs, const AffineWeylElement& x);
AffineWeylElement aff_from_string(const RootSystem& rs, const std::string& s);

// Bare comma-separated integer coordinates: "-1,0".
std::string coweight_to_string(const CoweightVec& mu);
CoweightVec coweight_from_string(const std::string& s, int rank);

std::string curve_to_string(const CurveClass& d);
CurveClass curve_from_string(const std::string& s, std::size_t nfree);

} // namespace affqh
