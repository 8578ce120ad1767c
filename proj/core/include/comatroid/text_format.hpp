#pragma once

#include <string>
#include <string_view>

#include "comatroid/matroid.hpp"

namespace comatroid {

// Matrix form:
//
//   q=2 rows=3
//   100 a
//   010 b
//   110
//
// One column per line, digit i being row i, with an optional label after
// whitespace. Point-set form:
//
//   pg q=3 rank=3 green=0,4,7
//
// Blank lines and text after '#' are ignored. Errors throw ParseError.

MatrixPresentation parse_presentation(std::string_view text);

/// Accepts either form. Unlabelled matrix columns are named by position.
LabeledMatroid parse_matroid(std::string_view text);

std::string format_presentation(const MatrixPresentation& pres);

/// Matrix form when the green points span the ambient space, point-set form
/// otherwise, so that parse_matroid(format_matroid(m)).matroid == m.
std::string format_matroid(const EmbeddedMatroid& m);
std::string format_point_set(const EmbeddedMatroid& m);

}  // namespace comatroid
