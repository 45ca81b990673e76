#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace cvxdiff {

/// Exact rational, always in lowest terms with a positive denominator.
using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

class FormatError : public std::runtime_error
{
  public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p", "-p" or "p/q". The fraction must already be in lowest terms
/// with q > 0; anything else is a FormatError.
Rat parse_rat(std::string_view text);

/// "p" when the denominator is one, "p/q" otherwise.
std::string format_rat(const Rat& value);

BigInt ceil_rat(const Rat& value);
BigInt floor_rat(const Rat& value);

inline bool is_integer(const Rat& value)
{
    return boost::multiprecision::denominator(value) == 1;
}

} // namespace cvxdiff
