#include "comatroid/canonical.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "comatroid/error.hpp"

namespace comatroid {

namespace {

// Per-point invariant: for every other point y of X, how many of the q-1
// remaining points of the line xy lie in X.
std::vector<int> point_colors(const PointSpace& space, const PointSet& x, const std::vector<PointIndex>& elems) {
  const int width = space.q() - 1;
  std::vector<std::array<int, 3>> histograms(elems.size(), std::array<int, 3>{});
  for (std::size_t a = 0; a < elems.size(); ++a) {
    for (std::size_t b = 0; b < elems.size(); ++b) {
      if (a == b) continue;
      const auto partners = space.line_partners(elems[a], elems[b]);
      int hits = 0;
      for (int t = 0; t < width; ++t) hits += x.test(partners[static_cast<std::size_t>(t)]) ? 1 : 0;
      ++histograms[a][static_cast<std::size_t>(hits)];
    }
  }
  std::vector<std::array<int, 3>> distinct = histograms;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> colors(elems.size());
  for (std::size_t a = 0; a < elems.size(); ++a) {
    colors[a] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), histograms[a]) - distinct.begin());
  }
  return colors;
}

class Canonizer {
 public:
  Canonizer(const PointSpace& space, const PointSet& x)
      : space_(space), x_(x), elems_(to_indices(x)), colors_(point_colors(space, x, elems_)) {}

  std::vector<PointIndex> run() {
    LinearBasis basis(space_.field());
    descend(basis);
    return best_;
  }

 private:
  void descend(const LinearBasis& basis) {
    if (basis.size() == space_.rank()) {
      evaluate(basis);
      return;
    }
    // Candidates are the independent points minimizing (color, |X in new span|).
    std::vector<std::pair<std::pair<int, std::size_t>, std::size_t>> candidates;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      const Vec& v = space_.vector(elems_[i]);
      if (basis.contains(v)) continue;
      LinearBasis next = basis;
      next.insert(v);
      const std::size_t inside = (space_.span_points(next) & x_).count();
      candidates.push_back({{colors_[i], inside}, i});
    }
    const auto least = std::min_element(candidates.begin(), candidates.end())->first;
    for (const auto& [score, i] : candidates) {
      if (score != least) continue;
      LinearBasis next = basis;
      next.insert(space_.vector(elems_[i]));
      descend(next);
    }
  }

  void evaluate(const LinearBasis& basis) {
    const Field f = space_.field();
    const int j = basis.size();
    std::vector<Vec> coords;
    coords.reserve(elems_.size());
    for (PointIndex p : elems_) coords.push_back(basis.reduce(space_.vector(p)).combo);
    const int scalings = f == Field::GF3 ? (1 << (j > 0 ? j - 1 : 0)) : 1;
    std::vector<PointIndex> image;
    image.reserve(elems_.size());
    for (int s = 0; s < scalings; ++s) {
      // Bit i-1 of s doubles the image of basis vector i (i >= 1).
      const std::uint32_t flip = static_cast<std::uint32_t>(s) << 1;
      image.clear();
      for (const Vec& c : coords) {
        const Vec scaled{(c.pos & ~flip) | (c.neg & flip), (c.neg & ~flip) | (c.pos & flip)};
        image.push_back(space_.index_of(normalize(f, scaled)));
      }
      std::sort(image.begin(), image.end());
      if (best_.empty() || image < best_) best_ = image;
    }
  }

  const PointSpace& space_;
  const PointSet& x_;
  std::vector<PointIndex> elems_;
  std::vector<int> colors_;
  std::vector<PointIndex> best_;
};

std::string hex_of(const std::vector<PointIndex>& points, std::size_t universe) {
  std::vector<std::uint8_t> nibbles((universe + 3) / 4, 0);
  for (PointIndex p : points) nibbles[p / 4] = static_cast<std::uint8_t>(nibbles[p / 4] | (1U << (p % 4)));
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (auto n : nibbles) out.push_back(kDigits[n]);
  return out;
}

}  // namespace

std::string canonical_form(const EmbeddedMatroid& m) {
  const Frame frame = Frame::spanning(m.space, m.green);
  const int k = frame.rank();
  if (k > kCanonicalRankCap) {
    throw ResourceLimitError("canonical forms are capped at rank " + std::to_string(kCanonicalRankCap));
  }
  const PointSpace& local = frame.local();
  const PointSet green = frame.to_local(m.green);
  const PointSet red = ~green;
  const bool use_green = green.count() <= red.count();
  const PointSet& side = use_green ? green : red;

  // The chosen side is canonized inside its own span.
  const Frame inner = Frame::spanning(frame.local_ptr(), side);
  const PointSet x = inner.to_local(side);
  Canonizer canon(inner.local(), x);
  const std::vector<PointIndex> best = x.none() ? std::vector<PointIndex>{} : canon.run();

  std::ostringstream key;
  key << 'q' << local.q() << ":r" << k << ':' << (use_green ? 'G' : 'R') << ':' << inner.rank() << ':'
      << hex_of(best, inner.local().size());
  return key.str();
}

bool isomorphic(const EmbeddedMatroid& a, const EmbeddedMatroid& b) {
  if (a.field() != b.field() || a.size() != b.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace comatroid
