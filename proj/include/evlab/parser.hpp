#pragma once

#include <string_view>

#include "evlab/formula.hpp"

namespace evlab {

/// Parse a formula in the ASCII surface syntax. The whole input must be
/// consumed (trailing whitespace aside). Throws ParseError with the byte
/// offset of the first offending character and the token spellings that
/// would have been accepted there.
FormulaPtr parse_formula(std::string_view text);

}  // namespace evlab
