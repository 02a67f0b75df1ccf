#pragma once

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kdyck/bounded.hpp"
#include "kdyck/exact.hpp"
#include "kdyck/series.hpp"
#include "kdyck/shape.hpp"

namespace kdyck {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnavailableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FetchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SequenceSource { Snapshot, Fetched };

struct OeisSequence {
  std::string id;  // "A" followed by six digits
  std::vector<ExactInt> terms;
  SequenceSource source = SequenceSource::Snapshot;
};

inline bool valid_oeis_id(const std::string& id) {
  if (id.size() != 7 || id[0] != 'A') return false;
  for (std::size_t i = 1; i < id.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
  return true;
}

// Result of shift-tolerant comparison.  `shift` is the signed alignment
// offset (positive: the generated sequence carries extra initial terms the
// target lacks); `dropped_prefix` counts aligned initial pairs skipped on
// both sides beyond pure shifting.
struct MatchReport {
  bool matched = false;
  long shift = 0;
  long dropped_prefix = 0;
  long overlap_length = 0;
};

// Matched iff some alignment with both per-side prefix drops <= max_shift
// makes every overlapping term equal, with overlap >= min_overlap.  Reports
// the first success scanning by total drop, so the smallest shift wins.
inline MatchReport match_sequence(const std::vector<ExactInt>& generated,
                                  const OeisSequence& target, long max_shift,
                                  long min_overlap = 8) {
  if (generated.empty())
    throw std::invalid_argument("match_sequence: empty generated sequence");
  for (long total = 0; total <= 2 * max_shift; ++total) {
    for (long drop_gen = 0; drop_gen <= std::min(total, max_shift);
         ++drop_gen) {
      const long drop_tgt = total - drop_gen;
      if (drop_tgt > max_shift) continue;
      const long overlap =
          std::min(static_cast<long>(generated.size()) - drop_gen,
                   static_cast<long>(target.terms.size()) - drop_tgt);
      if (overlap < min_overlap) continue;
      bool ok = true;
      for (long j = 0; j < overlap; ++j) {
        if (generated[static_cast<std::size_t>(drop_gen + j)] !=
            target.terms[static_cast<std::size_t>(drop_tgt + j)]) {
          ok = false;
          break;
        }
      }
      if (ok)
        return MatchReport{true, drop_gen - drop_tgt,
                           std::min(drop_gen, drop_tgt), overlap};
    }
  }
  return MatchReport{};
}

// ---------------------------------------------------------------------------
// Snapshot / b-file parsing
// ---------------------------------------------------------------------------

namespace detail {

inline ExactInt parse_term(const std::string& token, std::size_t line_no) {
  try {
    return ExactInt(token);
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed integer '" + token + "' on line " +
                     std::to_string(line_no));
  }
}

}  // namespace detail

// OEIS "stripped" format: lines of `Annnnnn ,c0,c1,...,`.  Comment lines
// beginning with '#' and blank lines are skipped.
inline std::vector<OeisSequence> parse_snapshot(const std::string& payload) {
  std::vector<OeisSequence> out;
  std::istringstream in(payload);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string id, rest;
    ls >> id >> rest;
    if (!valid_oeis_id(id) || rest.empty())
      throw ParseError("malformed stripped line " + std::to_string(line_no));
    OeisSequence seq{id, {}, SequenceSource::Snapshot};
    std::string token;
    std::istringstream ts(rest);
    while (std::getline(ts, token, ','))
      if (!token.empty()) seq.terms.push_back(detail::parse_term(token, line_no));
    if (seq.terms.empty())
      throw ParseError("empty sequence on line " + std::to_string(line_no));
    out.push_back(std::move(seq));
  }
  return out;
}

// b-file format: lines of `n a(n)`, '#' comments allowed.
inline OeisSequence parse_bfile(const std::string& payload,
                                const std::string& id) {
  OeisSequence seq{id, {}, SequenceSource::Snapshot};
  std::istringstream in(payload);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string index, value;
    ls >> index >> value;
    if (value.empty())
      throw ParseError("malformed b-file line " + std::to_string(line_no));
    detail::parse_term(index, line_no);  // index must be an integer too
    seq.terms.push_back(detail::parse_term(value, line_no));
  }
  return seq;
}

inline std::map<std::string, OeisSequence> load_snapshot_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UnavailableError("cannot open snapshot " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  std::map<std::string, OeisSequence> out;
  for (auto& seq : parse_snapshot(buf.str())) out.emplace(seq.id, seq);
  return out;
}

// ---------------------------------------------------------------------------
// Fetching
// ---------------------------------------------------------------------------

inline std::filesystem::path oeis_cache_dir() {
  if (const char* env = std::getenv("KDYCK_OEIS_CACHE")) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
    return std::filesystem::path(xdg) / "kdyck-oeis";
  if (const char* home = std::getenv("HOME"))
    return std::filesystem::path(home) / ".cache" / "kdyck-oeis";
  return std::filesystem::temp_directory_path() / "kdyck-oeis";
}

struct FetchOptions {
  bool offline = false;
  std::string base_url = "https://oeis.org";
  std::filesystem::path cache_dir = oeis_cache_dir();
};

// Declared here, defined in oeis_fetch.hpp (pulls in the HTTP client).
OeisSequence fetch(const std::string& id, const FetchOptions& options);

// ---------------------------------------------------------------------------
// Reference table regeneration
// ---------------------------------------------------------------------------

struct TableCell {
  std::string row_label;
  std::string col_label;
  std::string entry;  // A-number, literal pattern, or "-"
  std::vector<ExactInt> generated;
  std::optional<MatchReport> report;  // absent for dashes and unavailable cells
  bool unavailable = false;
};

namespace detail {

// Row-major cell entries of the reference tables.
inline const std::vector<std::vector<const char*>>& table_entries(int table) {
  static const std::vector<std::vector<const char*>> t1 = {
      {"A000108", "A000108", "A000245", "A002057", "A000340", "A003517",
       "A000588", "A003518"},
      {"A000108", "A000108", "A000245", "A002057", "A000340", "A003517",
       "A000588", "A003518"},
      {"A000245", "A000245", "A026012", "A026016", "A026013", "A026017",
       "A026014", "A026018"},
      {"A002057", "A002057", "A026016", "A026029", "A026026", "A026030",
       "A026027", "A026031"},
      {"A000340", "A000340", "A026013", "A026026", "-", "-", "-", "-"},
      {"A003517", "A003517", "A026017", "A026030", "-", "-", "-", "-"},
      {"A000588", "A000588", "A026014", "A026027", "-", "-", "-", "-"},
      {"A003518", "A003518", "A026018", "A026031", "-", "-", "-", "-"}};
  static const std::vector<std::vector<const char*>> t2 = {
      {"A001764", "A006013", "A001764", "A006629", "A102893", "A006630"},
      {"A001764", "A006013", "A001764", "A006629", "A102893", "A006630"},
      {"A001764", "A006013", "A001764", "A006629", "A102893", "A006630"},
      {"A334680", "-", "A334680", "-", "-", "-"},
      {"A336945", "A030983", "A336945", "-", "-", "-"},
      {"A334976", "A334977", "A334976", "-", "-", "-"}};
  static const std::vector<std::vector<const char*>> t3 = {
      {"A002293", "A069271", "A006632", "A002293", "A196678", "A006633"},
      {"A002293", "A069271", "A006632", "A002293", "A196678", "A006633"},
      {"A002293", "A069271", "A006632", "A002293", "A196678", "A006633"},
      {"A002293", "A069271", "A006632", "A002293", "A196678", "A006633"},
      {"A334682", "-", "-", "A334682", "-", "-"},
      {"-", "A334608", "-", "-", "-", "-"}};
  // rows M=0..12, columns k=2,3,4
  static const std::vector<std::vector<const char*>> t4 = {
      {"1", "1", "1"},
      {"{1}", "1", "1"},
      {"{2^n}", "{1}", "1"},
      {"A001519", "{2^n}", "{1}"},
      {"A124302", "{3^n}", "{2^n}"},
      {"A080937", "A001835", "{3^n}"},
      {"A024175", "A081704", "{4^n}"},
      {"A080938", "A083881", "A004253"},
      {"A033191", "-", "-"},
      {"A211216", "-", "A261399"},
      {"-", "-", "A143648"},
      {"-", "-", "-"},
      {"-", "-", "-"}};
  switch (table) {
    case 1:
      return t1;
    case 2:
      return t2;
    case 3:
      return t3;
    case 4:
      return t4;
    default:
      throw std::invalid_argument("table id must be 1..4");
  }
}

// Literal cells: `1` is the sequence 1,0,0,...; `{1}` all ones; `{c^n}`
// powers of c.
inline std::optional<std::vector<ExactInt>> literal_terms(
    const std::string& entry, std::size_t count) {
  std::vector<ExactInt> out(count);
  if (entry == "1") {
    out[0] = 1;
    return out;
  }
  if (entry.size() >= 3 && entry.front() == '{' && entry.back() == '}') {
    if (entry == "{1}") {
      for (auto& v : out) v = 1;
      return out;
    }
    const auto caret = entry.find("^n}");
    if (caret != std::string::npos) {
      const long base = std::stol(entry.substr(1, caret - 1));
      ExactInt p = 1;
      for (auto& v : out) {
        v = p;
        p *= base;
      }
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Regenerates one reference table: shape series for tables 1-3, bounded
// series at shape (0,0) for table 4.  Dash cells carry no assertion; cited
// sequences missing from the snapshot become per-cell unavailable markers.
inline std::vector<TableCell> regenerate_table(
    int table, std::size_t terms,
    const std::map<std::string, OeisSequence>& snapshot, long max_shift = 5,
    long min_overlap = 8, unsigned jobs = 1) {
  if (terms == 0) throw std::invalid_argument("regenerate_table: terms == 0");
  const auto& entries = detail::table_entries(table);
  const long k_of_table[] = {0, 2, 3, 4};

  struct CellSpec {
    std::string row_label, col_label, entry;
    long k;
    Shape shape;   // tables 1-3
    long ceiling;  // table 4
  };
  std::vector<CellSpec> specs;
  for (std::size_t r = 0; r < entries.size(); ++r)
    for (std::size_t c = 0; c < entries[r].size(); ++c) {
      CellSpec spec;
      spec.entry = entries[r][c];
      if (table == 4) {
        spec.row_label = "M=" + std::to_string(r);
        spec.col_label = "k=" + std::to_string(c + 2);
        spec.k = static_cast<long>(c + 2);
        spec.shape = Shape{0, 0};
        spec.ceiling = static_cast<long>(r);
      } else {
        spec.row_label = "alpha=" + std::to_string(r);
        spec.col_label = "beta=" + std::to_string(c);
        spec.k = k_of_table[table];
        spec.shape = Shape{static_cast<long>(r), static_cast<long>(c)};
        spec.ceiling = -1;
      }
      specs.push_back(std::move(spec));
    }

  std::vector<TableCell> cells(specs.size());
  auto compute = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const CellSpec& spec = specs[i];
      TableCell cell;
      cell.row_label = spec.row_label;
      cell.col_label = spec.col_label;
      cell.entry = spec.entry;
      if (spec.entry != "-") {
        TruncatedSeries series =
            (table == 4)
                ? bounded_series(spec.k, spec.shape, spec.ceiling, terms - 1)
                : shape_series(spec.k, spec.shape, terms - 1);
        cell.generated = series.coeffs();
        if (auto literal = detail::literal_terms(spec.entry, terms)) {
          OeisSequence target{"A000000", *literal, SequenceSource::Snapshot};
          cell.report =
              match_sequence(cell.generated, target, max_shift, min_overlap);
        } else {
          auto it = snapshot.find(spec.entry);
          if (it == snapshot.end()) {
            cell.unavailable = true;
          } else {
            cell.report = match_sequence(cell.generated, it->second, max_shift,
                                         min_overlap);
          }
        }
      }
      cells[i] = std::move(cell);
    }
  };

  if (jobs <= 1) {
    compute(0, specs.size());
  } else {
    std::vector<std::future<void>> futures;
    const std::size_t chunk = (specs.size() + jobs - 1) / jobs;
    for (std::size_t begin = 0; begin < specs.size(); begin += chunk)
      futures.push_back(std::async(std::launch::async, compute, begin,
                                   std::min(begin + chunk, specs.size())));
    for (auto& fut : futures) fut.get();
  }
  return cells;
}

}  // namespace kdyck
