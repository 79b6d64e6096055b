#ifndef PADLIFT_PARSE_HPP
#define PADLIFT_PARSE_HPP

#include <string>

#include "padlift/padic.hpp"

namespace padlift {

/// Parse an integer-coefficient polynomial in z. Grammar: integers, z,
/// +, -, *, ^ (nonnegative integer exponent), parentheses, whitespace.
IntPolynomial parse_polynomial(const std::string& text);

} // namespace padlift

#endif
