#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ftkc {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "3", "-2", "1.25", "3/4", "1e-3" exactly. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Exact value of the shortest decimal that round-trips to `value`, so that a
// JSON literal such as 0.1 becomes 1/10 rather than its binary expansion.
Rational rational_from_double(double value);

// Terminating decimals print as decimals ("1.5"), everything else as "p/q".
std::string to_string(const Rational& value);

bool is_integral(const Rational& value);

// Least common multiple of all denominators (1 for an empty span).
Integer common_denominator(std::span<const Rational> values);

std::optional<Rational> exact_sqrt(const Rational& value);

}  // namespace ftkc
