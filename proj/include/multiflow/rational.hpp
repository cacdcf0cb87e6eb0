#pragma once

#include <gmpxx.h>

#include <string>

namespace multiflow {

using Rational = mpq_class;

// Accepts "p", "p/q", "-p/q"; the result is canonicalized.
Rational parse_rational(const std::string& text);

// Lowest terms, "p" for integers and "p/q" otherwise.
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);
Rational floor_of(const Rational& q);
Rational ceil_of(const Rational& q);
Rational min_of(const Rational& a, const Rational& b);
Rational max_of(const Rational& a, const Rational& b);

}  // namespace multiflow
