#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "comatroid/matroid.hpp"

namespace comatroid {

using Edge = std::pair<int, int>;

/// [I_{k-1} | 1]: a k-circuit of rank k-1. Throws DomainError for k < 3.
MatrixPresentation circuit(int k, Field q);

/// U_{r,n} for the simple GF(q)-representable cases: n <= r+1, or r = 2 and
/// n <= q+1. Throws DomainError otherwise.
MatrixPresentation uniform(int r, int n, Field q);

/// All points of PG(rank-1, q), in index order.
MatrixPresentation projective_geometry(int rank, Field q);

/// PG(rank-1, q) minus the hyperplane x_0 = 0.
MatrixPresentation affine_geometry(int rank, Field q);

/// Vertex-edge incidence matrix over GF(2), signed incidence over GF(3).
/// Vertices are 0..max index. Throws DomainError on loops or parallel edges.
MatrixPresentation graph_cycle_matroid(const std::vector<Edge>& edges, Field q);

/// Glues b onto a along column p1 of a and column p2 of b. The basepoint keeps
/// a's label and position; b's remaining columns follow a's. Throws
/// DomainError when the fields differ.
MatrixPresentation parallel_connection(const MatrixPresentation& a, int p1, const MatrixPresentation& b, int p2);

/// parallel_connection() with the basepoint deleted. Throws DomainError when a
/// basepoint is a coloop.
MatrixPresentation two_sum(const MatrixPresentation& a, int p1, const MatrixPresentation& b, int p2);

/// A k-circuit over GF(3) with a copy of U_{2,4} 2-summed across each circuit
/// element whose 0-based position is listed.
MatrixPresentation circuit_with_u24(int k, const std::vector<int>& positions);

/// The ternary ladder construction with exactly four connected hyperplanes:
/// 5n+8 elements, rank 2n+3. Throws DomainError for n < 1 and
/// ResourceLimitError for n > 4. Only n <= 2 fits the embedding rank cap.
MatrixPresentation four_hyperplane_family(int n);

/// The six 5-vertex graphs whose cycle matroids are the small-side rank-4
/// minimal binary non-comatroids, by name.
const std::vector<std::pair<std::string, std::vector<Edge>>>& minimal_binary_graphs();

/// The edges selected by the bits of mask, pairs ordered (0,1),(0,2),...,
/// (0,v-1),(1,2),... on v vertices.
std::vector<Edge> graph_from_mask(unsigned mask, int vertices = 5);

/// Named matroids. Fixed names are listed by catalog_names(); in addition
/// "PG(k,q)", "AG(k,q)", "U<r>,<n>", "C<k>" and "family(<n>)" are accepted.
/// A suffix "@2" or "@3" selects the field where a name is ambiguous.
/// Throws CatalogError for unknown names.
MatrixPresentation named(std::string_view name);
std::vector<std::string> catalog_names();

}  // namespace comatroid
