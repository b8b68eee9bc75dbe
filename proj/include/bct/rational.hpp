#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace bct {

using Int = boost::multiprecision::mpz_int;

// Exact rational scalar. Always kept canonical (lowest terms, positive
// denominator); the two-argument constructor canonicalizes, string
// construction does not, so parsing goes through parse_rational below.
using Rational = boost::multiprecision::mpq_rational;

// Accepts "p", "-p", "p/q"; q must be nonzero. Result is canonical.
inline Rational parse_rational(const std::string& tok) {
    auto slash = tok.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Int(tok), Int(1));
        }
        Int num(tok.substr(0, slash));
        Int den(tok.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator in rational '" + tok + "'");
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational '" + tok + "'");
    }
}

// "p" when the denominator is 1, otherwise "p/q".
inline std::string rational_str(const Rational& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace bct
