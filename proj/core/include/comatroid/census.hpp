#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "comatroid/matroid.hpp"
#include "comatroid/parallel.hpp"

namespace comatroid {

/// One isomorphism class (or, without deduplication, one coloring).
struct CensusClass {
  std::string key;  ///< canonical key; empty when the report is not deduplicated
  EmbeddedMatroid representative;
  std::size_t size = 0;
  int rank = 0;
  std::size_t count = 0;  ///< colorings represented by this entry
  std::string label;
};

struct CensusReport {
  int q = 2;
  int rank = 0;
  std::string filter;
  std::size_t scanned = 0;
  std::vector<CensusClass> classes;
  double seconds = 0.0;  ///< wall time; not part of the formatted report
};

/// Isomorphism classes of colorings G of PG(r-1,q) with r(G) = r that are
/// minimal non-comatroids. Supported: (2,3), (2,4), (3,3) exhaustively and
/// (3,4) over the circuit-with-U24 family members of rank 4 and their
/// complements. Classes are labelled by matching named constructions.
/// Throws DomainError for other (q, r).
CensusReport minimal_non_comatroids(int r, Field q, unsigned jobs = 0);

/// Filters by name, for the CLI: "all", "both-connected-spanning",
/// "vertical-deficit", "large-disconnected", "non-comatroid",
/// "minimal-non-comatroid". Throws DomainError for an unknown name.
std::function<bool(const EmbeddedMatroid&)> named_filter(const std::string& name);
std::vector<std::string> filter_names();

struct ColoringOptions {
  bool dedup = true;
  /// Exhaustive when unset (at most 15 points); otherwise this many random
  /// colorings drawn with the given seed.
  std::optional<std::uint64_t> seed;
  std::size_t samples = 10000;
  unsigned jobs = 0;
};

/// Applies the filter to every (or every sampled) green subset of the space.
/// Throws ResourceLimitError for exhaustive mode above 15 points.
CensusReport enumerate_colorings(const SpacePtr& space, const std::function<bool(const EmbeddedMatroid&)>& filter,
                                 const ColoringOptions& options, const std::string& filter_name = "custom");

struct ScanRecord {
  PointSet extra;  ///< S, as points of the seed's PG(4,2)
  std::size_t i = 0;
  std::optional<std::size_t> j;  ///< computed only when i < 26
};

struct ExtensionScan {
  EmbeddedMatroid seed;  ///< the seed inside PG(4,2)
  int max_extra = 0;
  std::size_t scanned = 0;
  std::size_t j_computed = 0;
  std::size_t min_i = 0;
  /// Smallest i + j over subsets with i < 26 (0 if there were none).
  std::size_t min_sum = 0;
  std::vector<ScanRecord> survivors;  ///< records with i < 26 and i + j < 32
};

/// The hyperplane-counting extension search: for every S of at most max_extra
/// points outside the seed, i = connected hyperplanes of M = seed + S and,
/// when i < 26, j = connected hyperplanes of M^c. Subsets are visited by size
/// and then by point bitmask; results do not depend on the number of jobs.
/// Throws DomainError unless the seed is binary of rank 5 and max_extra is at
/// most the number of points outside it.
ExtensionScan hyperplane_scan(const EmbeddedMatroid& seed, int max_extra, unsigned jobs = 0);

/// Connected hyperplanes of a green set of PG(4,2) given as a 31-bit mask of
/// point indices (the fast kernel behind hyperplane_scan).
std::size_t binary_rank5_connected_hyperplanes(std::uint32_t green);

/// Isomorphism classes of green sets of PG(4,2) of rank 5 with at most
/// max_size points that are minimal non-comatroids, found by growing
/// classes one point at a time.
CensusReport rank5_binary_minimal(std::size_t max_size, unsigned jobs = 0);

std::string format_report(const CensusReport& report, bool tsv);
std::string format_scan(const ExtensionScan& scan, const std::string& seed_name, bool tsv);

}  // namespace comatroid
