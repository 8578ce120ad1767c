#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "comatroid/canonical.hpp"
#include "comatroid/matroid.hpp"

namespace comatroid {

/// Largest matroid rank the recursive and flat-criterion deciders accept. The
/// forbidden-flat decider stops at kCanonicalRankCap.
inline constexpr int kDecideRankCap = 7;

enum class Method { Recursive, FlatCriterion, ForbiddenFlats };

std::string_view method_name(Method m);

/// Thread-safe table from canonical keys to comatroid verdicts.
class DecisionMemo {
 public:
  std::optional<bool> lookup(const std::string& key) const;
  void store(const std::string& key, bool value);
  std::size_t size() const;

  /// Lines of the form "<key> <0|1>". Missing files are ignored by load().
  void load(const std::string& path);
  void save(const std::string& path) const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, bool> table_;
};

struct DecideOptions {
  bool certificate = false;
  /// Consulted by the recursive decider when no certificate is requested.
  DecisionMemo* memo = nullptr;
};

struct Verdict {
  bool is_comatroid = false;
  Method method = Method::Recursive;
  /// Line-oriented text accepted by replay_certificate(); empty unless requested.
  std::string certificate;
};

/// Forbidden flats and forbidden induced minors for one field.
class ForbiddenCatalog {
 public:
  struct Entry {
    std::string name;
    EmbeddedMatroid matroid;
    std::string key;
    int rank = 0;
    std::size_t size = 0;
  };

  /// The catalog for q, built once. Construction checks that every fixed
  /// forbidden flat is a non-comatroid whose proper flats are comatroids and
  /// throws CatalogError otherwise.
  static const ForbiddenCatalog& get(Field q);

  Field field() const { return field_; }

  /// Smallest rank of a forbidden flat.
  int min_rank() const { return min_rank_; }
  const std::vector<Entry>& fixed_entries() const { return fixed_; }

  /// Name of the forbidden family member or fixed entry that the connected set
  /// x of `space` is isomorphic to, if any.
  std::optional<std::string> match(const SpacePtr& space, const PointSet& x) const;

  /// The forbidden induced minors of rank at most 5.
  const std::vector<Entry>& induced_minor_list() const { return induced_; }
  int induced_min_rank() const { return induced_min_rank_; }

 private:
  explicit ForbiddenCatalog(Field q);

  Field field_;
  int min_rank_ = 0;
  int induced_min_rank_ = 0;
  std::vector<Entry> fixed_;
  // Circuit-with-U24 family keys by (rank, size); ternary only.
  std::map<std::pair<int, std::size_t>, std::pair<std::string, std::string>> family_;
  std::vector<Entry> induced_;
};

/// Throws ResourceLimitError when r(M) > kDecideRankCap.
Verdict decide_recursive(const EmbeddedMatroid& m, const DecideOptions& options = {});
Verdict decide_flat_criterion(const EmbeddedMatroid& m, const DecideOptions& options = {});
Verdict decide_forbidden_flats(const EmbeddedMatroid& m, const ForbiddenCatalog& catalog,
                               const DecideOptions& options = {});
Verdict decide(const EmbeddedMatroid& m, Method method, const DecideOptions& options = {});

/// Fast membership test (recursive decider, no certificate).
bool is_comatroid(const EmbeddedMatroid& m);

/// Every projective flat F of the span of M with r(F & E) = r(F - E) > 0 and
/// both sides connected, as ambient point sets. Empty iff M is a comatroid.
std::vector<PointSet> violating_flats(const EmbeddedMatroid& m);

/// M is not a comatroid but all of its proper flats are, which happens
/// exactly when the only violating flat is the span of M.
bool is_minimal_non_comatroid(const EmbeddedMatroid& m);

/// True iff a sequence of flat restrictions and simplified contractions turns
/// M into a member of catalog.induced_minor_list(). Throws ResourceLimitError
/// when r(M) > 5.
bool has_forbidden_induced_minor(const EmbeddedMatroid& m, const ForbiddenCatalog& catalog);

struct ReplayResult {
  bool valid = false;
  bool verdict = false;
  std::string error;
};

/// Re-checks a certificate against M without trusting the decider that wrote
/// it. Decomposition traces are re-executed step by step; violating and
/// witness flats are re-verified; exhaustive "true" claims are re-derived with
/// a different method.
ReplayResult replay_certificate(const EmbeddedMatroid& m, std::string_view certificate);

}  // namespace comatroid
