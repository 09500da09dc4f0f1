#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

namespace icbound {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

/// "3" or "5/2"; exact, no floating point anywhere.
inline std::string rat_to_string(const Rat& r) {
    std::string s = rat_num(r).str();
    if (!is_integer(r)) s += "/" + rat_den(r).str();
    return s;
}

Rat rat_from_string(const std::string& s);

/// Least common multiple of the denominators (1 for an empty list).
Int common_denominator(const std::vector<Rat>& values);

}  // namespace icbound
