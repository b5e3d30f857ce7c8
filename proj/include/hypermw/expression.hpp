#pragma once

// Text syntax for scalars, units, MW coefficients and presentation elements.
//
//   element := ['-'] term (('+' | '-') term)*
//   term    := factor (('*' | '·')? factor)*
//   factor  := INT | '[' scalar ']' | '<' scalar '>' | 'eta' ['^' INT]
//            | 'eps' ['^' INT] | unit
//   unit    := '(' affine form ')' ['^' INT] | 'u(' scalar [';' i^n ('*' i^n)*] ')' ['^' INT]
//
// An affine form in parentheses is a generator, never a grouping. Forms must
// match a hyperplane of the arrangement up to a scalar, or be constant;
// indices in u(...) are 1-based.

#include <cstddef>
#include <string>
#include <string_view>

#include "hypermw/arrangement.hpp"
#include "hypermw/os_model.hpp"
#include "hypermw/presentation.hpp"

namespace hypermw {

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

PresElement parse_element(std::string_view text, const Arrangement& a);
/// Coefficient-only expression; generators are rejected.
MWElement parse_mw(std::string_view text, const Field& f);
/// Product of unit factors, multiplied as functions.
Unit parse_unit(std::string_view text, const Arrangement& a);
/// "Y1^Y3" (1-based, increasing) or "1".
IndexSet parse_monomial(std::string_view text, const Arrangement& a);

std::string format_unit(const Unit& u, const Arrangement& a);
std::string format_element(const PresElement& x, const Arrangement& a);
/// Terms ordered by basis monomial, e.g. "[-1]·(x1)".
std::string format_nf(const NormalForm& x, const Arrangement& a);
/// "(x1)(x1 + x2)", or "1" for the empty word.
std::string format_basis_word(const IndexSet& s, const Arrangement& a);
std::string format_monomial(const IndexSet& s);

} // namespace hypermw
