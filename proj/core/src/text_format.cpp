#include "comatroid/text_format.hpp"

#include <charconv>
#include <sstream>

#include <boost/algorithm/string.hpp>

#include "comatroid/error.hpp"

namespace comatroid {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> meaningful_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    ++number;
    std::string line(text.substr(start, end - start));
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    boost::algorithm::trim(line);
    if (!line.empty()) out.push_back({number, std::move(line)});
    start = end + 1;
  }
  return out;
}

int parse_int(const Line& line, std::string_view token, std::string_view what) {
  int value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line.number, "expected an integer for " + std::string(what) + ", got '" + std::string(token) + "'");
  }
  return value;
}

// Splits "key=value" tokens of a header line into a map-like list.
std::vector<std::pair<std::string, std::string>> header_fields(const Line& line,
                                                               const std::vector<std::string>& tokens) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError(line.number, "expected key=value, got '" + tok + "'");
    out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return out;
}

Field parse_field(const Line& line, std::string_view token) {
  const int q = parse_int(line, token, "q");
  if (q != 2 && q != 3) throw ParseError(line.number, "unsupported field order " + std::to_string(q));
  return static_cast<Field>(q);
}

std::vector<std::string> tokens_of(const std::string& text) {
  std::vector<std::string> out;
  boost::algorithm::split(out, text, boost::algorithm::is_space(), boost::algorithm::token_compress_on);
  return out;
}

LabeledMatroid parse_point_set(const Line& line) {
  auto tokens = tokens_of(line.text);
  tokens.erase(tokens.begin());
  int q = -1;
  int rank = -1;
  std::string green_text;
  bool has_green = false;
  for (const auto& [key, value] : header_fields(line, tokens)) {
    if (key == "q") {
      q = order(parse_field(line, value));
    } else if (key == "rank") {
      rank = parse_int(line, value, "rank");
    } else if (key == "green") {
      green_text = value;
      has_green = true;
    } else {
      throw ParseError(line.number, "unknown field '" + key + "'");
    }
  }
  if (q < 0 || rank < 0 || !has_green) throw ParseError(line.number, "point-set form needs q=, rank= and green=");
  if (rank > PointSpace::kMaxRank) {
    throw ResourceLimitError("projective rank " + std::to_string(rank) + " exceeds the cap of " +
                             std::to_string(PointSpace::kMaxRank));
  }
  SpacePtr space = PointSpace::get(static_cast<Field>(q), rank);
  LabeledMatroid out{EmbeddedMatroid{space, space->empty_set()}, {}, {}};
  if (!green_text.empty()) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, green_text, boost::algorithm::is_any_of(","));
    for (const auto& part : parts) {
      const int p = parse_int(line, part, "point index");
      if (p < 0 || static_cast<std::size_t>(p) >= space->size()) {
        throw ParseError(line.number, "point index " + part + " out of range");
      }
      if (out.matroid.green.test(static_cast<std::size_t>(p))) {
        throw ParseError(line.number, "point index " + part + " repeated");
      }
      out.matroid.green.set(static_cast<std::size_t>(p));
    }
  }
  for_each_point(out.matroid.green, [&](PointIndex p) {
    out.points.push_back(p);
    out.labels.push_back(std::to_string(p));
  });
  return out;
}

}  // namespace

MatrixPresentation parse_presentation(std::string_view text) {
  const auto lines = meaningful_lines(text);
  if (lines.empty()) throw ParseError(1, "empty input");
  const Line& header = lines.front();
  auto tokens = tokens_of(header.text);
  MatrixPresentation pres;
  int rows = -1;
  bool has_q = false;
  for (const auto& [key, value] : header_fields(header, tokens)) {
    if (key == "q") {
      pres.field = parse_field(header, value);
      has_q = true;
    } else if (key == "rows") {
      rows = parse_int(header, value, "rows");
    } else {
      throw ParseError(header.number, "unknown field '" + key + "'");
    }
  }
  if (!has_q || rows < 0) throw ParseError(header.number, "header must be 'q=<2|3> rows=<r>'");
  if (rows > kMaxCoordinates) throw ParseError(header.number, "too many rows");
  pres.rows = rows;
  bool any_label = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto parts = tokens_of(line.text);
    if (parts.size() > 2) throw ParseError(line.number, "expected a digit string and an optional label");
    const std::string& digits = parts[0];
    if (static_cast<int>(digits.size()) != rows) {
      throw ParseError(line.number, "column has " + std::to_string(digits.size()) + " entries, expected " +
                                        std::to_string(rows));
    }
    Vec v;
    for (int r = 0; r < rows; ++r) {
      const char c = digits[static_cast<std::size_t>(r)];
      const int d = c - '0';
      if (d < 0 || d >= order(pres.field)) throw ParseError(line.number, std::string("invalid digit '") + c + "'");
      v = with_coord(v, r, d);
    }
    pres.columns.push_back(v);
    pres.labels.push_back(parts.size() == 2 ? parts[1] : std::to_string(pres.columns.size() - 1));
    any_label = any_label || parts.size() == 2;
  }
  if (!any_label) pres.labels.clear();
  return pres;
}

LabeledMatroid parse_matroid(std::string_view text) {
  const auto lines = meaningful_lines(text);
  if (!lines.empty() && boost::algorithm::starts_with(lines.front().text, "pg ")) {
    if (lines.size() > 1) throw ParseError(lines[1].number, "unexpected content after the point-set line");
    return parse_point_set(lines.front());
  }
  return embed_labeled(parse_presentation(text));
}

std::string format_presentation(const MatrixPresentation& pres) {
  std::ostringstream out;
  out << "q=" << order(pres.field) << " rows=" << pres.rows << '\n';
  for (std::size_t c = 0; c < pres.columns.size(); ++c) {
    out << to_digits(pres.columns[c], pres.rows);
    if (!pres.labels.empty()) out << ' ' << pres.labels[c];
    out << '\n';
  }
  return out.str();
}

std::string format_point_set(const EmbeddedMatroid& m) {
  std::ostringstream out;
  out << "pg q=" << m.space->q() << " rank=" << m.ambient_rank() << " green=";
  bool first = true;
  for_each_point(m.green, [&](PointIndex p) {
    if (!first) out << ',';
    out << p;
    first = false;
  });
  out << '\n';
  return out.str();
}

std::string format_matroid(const EmbeddedMatroid& m) {
  if (matroid_rank(m) != m.ambient_rank()) return format_point_set(m);
  return format_presentation(to_presentation(m));
}

}  // namespace comatroid
