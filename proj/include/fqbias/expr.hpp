#pragma once

#include <optional>
#include <string>

#include "fqbias/poly.hpp"

namespace fqbias {

// poly  := ['-'] term (('+' | '-') term)*
// term  := coeff? ('*'? 't' ('^' int)?)?
// coeff := int | 'a' ('^' int)?
// 'a' denotes the multiplicative generator (field default unless overridden).
Poly parse_poly_expr(const std::string& text, const FieldPtr& field,
                     std::optional<Fq> generator = std::nullopt);

// Inverse of parse_poly_expr for the same generator.
std::string format_poly(const Poly& f, std::optional<Fq> generator = std::nullopt);

// True if the expression mentions the generator symbol 'a'.
bool mentions_generator(const std::string& text);

}  // namespace fqbias
