#pragma once

#include <string>
#include <string_view>

#include "regpat/pattern.hpp"

namespace regpat {

/// Pattern text: whitespace-separated items. A quoted symbol ('0', '#') is a
/// terminal, an identifier [A-Za-z_][A-Za-z0-9_]* is a variable.
/// Throws ParseError with line/column; a terminal outside `alphabet` is also a
/// ParseError.
Pattern parse_pattern(std::string_view text, const Alphabet& alphabet);

/// Single line, items separated by one space.
std::string format_pattern(const Pattern& p);

/// Constraint file: one `ident : regex` per line, blank lines ignored.
/// Regex errors are reported at their file line/column.
ConstraintMap parse_constraints(std::string_view text, const Alphabet& alphabet);

/// Constrained variables of `cp` in first-occurrence order, one line each,
/// using their source text. Throws Error for a constraint without source text.
std::string format_constraints(const ConstrainedPattern& cp);

/// True when `name` is a valid variable identifier.
bool is_identifier(std::string_view name);

}  // namespace regpat
