#pragma once

#include <string>

#include "comatroid/matroid.hpp"

namespace comatroid {

/// Largest matroid rank canonical_form() accepts.
inline constexpr int kCanonicalRankCap = 6;

/// A string that identifies the isomorphism class of M among simple matroids
/// over the same field. The ambient space does not enter the key: M and
/// reembed(M) receive the same key.
///
/// The smaller of M and M^c (inside PG(r(M)-1, q)) is brought to a canonical
/// position by trying every ordered basis allowed by invariant colors, and
/// every diagonal rescaling over GF(3); the lexicographically least image wins.
/// Throws ResourceLimitError when r(M) > kCanonicalRankCap.
std::string canonical_form(const EmbeddedMatroid& m);

bool isomorphic(const EmbeddedMatroid& a, const EmbeddedMatroid& b);

}  // namespace comatroid
