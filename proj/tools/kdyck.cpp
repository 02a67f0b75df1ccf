// kdyck: exact enumeration of raised k-Dyck paths.
//
// Subcommands: count, series, table, verify, xcheck.  Exit codes: 0 success,
// 1 verification mismatch, 2 usage, 3 resource limit, 4 data unavailable.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kdyck/kdyck.hpp"
#include "kdyck/oeis_fetch.hpp"

namespace {

using nlohmann::json;
using namespace kdyck;

struct FilterFlags {
  std::optional<long> returns;
  std::optional<long> min_height;
  std::optional<long> max_height;
  std::optional<long> bounded;

  int count_set() const {
    return (returns ? 1 : 0) + (min_height ? 1 : 0) + (max_height ? 1 : 0) +
           (bounded ? 1 : 0);
  }

  json to_json() const {
    json j = json::object();
    if (returns) j["returns"] = *returns;
    if (min_height) j["min_height"] = *min_height;
    if (max_height) j["max_height"] = *max_height;
    if (bounded) j["bounded"] = *bounded;
    return j;
  }

  PathFilter to_oracle_filter() const {
    PathFilter f;
    f.returns = returns;
    f.exact_min_height = min_height;
    f.exact_max_height = max_height;
    f.ceiling = bounded;
    return f;
  }
};

void add_filter_flags(CLI::App* cmd, FilterFlags& flags) {
  cmd->add_option("--returns", flags.returns, "exact number of returns to ground");
  cmd->add_option("--min-height", flags.min_height, "exact minimum height");
  cmd->add_option("--max-height", flags.max_height, "exact maximum height");
  cmd->add_option("--bounded", flags.bounded, "height ceiling (stay weakly below)");
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_single_filter(const FilterFlags& flags) {
  if (flags.count_set() > 1)
    throw UsageError("at most one of --returns/--min-height/--max-height/--bounded");
}

// Exact count through the requested route.
ExactInt compute_count(long k, long n, Shape s, const FilterFlags& flags,
                       const std::string& method, std::string& method_used) {
  PathClassQuery q{k, n, s};
  const auto order = static_cast<std::size_t>(n);
  method_used = method;
  if (method == "oracle") return oracle_count(q, flags.to_oracle_filter());
  if (flags.returns) {
    if (method == "series") return returns_series(k, s, *flags.returns, order)[order];
    if (method == "recurrence") return returns_count_convolution(k, n, s, *flags.returns);
    return returns_count(k, n, s, *flags.returns);
  }
  if (flags.min_height) {
    if (method == "series") return minheight_series(k, s, *flags.min_height, order)[order];
    if (method == "recurrence")
      return minheight_count_via_difference(k, n, s, *flags.min_height);
    return minheight_count(k, n, s, *flags.min_height);
  }
  if (flags.bounded) {
    method_used = "series";  // the ceiling count has a single exact route
    return bounded_count({q, *flags.bounded});
  }
  if (flags.max_height) {
    method_used = "series";
    return max_height_count({q, *flags.max_height});
  }
  if (method == "recurrence") return count_recurrence(q);
  if (method == "series") return count(q, CountMethod::Series);
  return count(q);
}

TruncatedSeries compute_series(long k, Shape s, std::size_t order,
                               const FilterFlags& flags) {
  if (flags.returns) return returns_series(k, s, *flags.returns, order);
  if (flags.min_height) return minheight_series(k, s, *flags.min_height, order);
  if (flags.bounded) return bounded_series(k, s, *flags.bounded, order);
  if (flags.max_height) return max_height_series(k, s, *flags.max_height, order);
  return shape_series(k, s, order);
}

json make_record(const json& query, const std::string& method,
                 const std::vector<ExactInt>& values) {
  json record;
  record["query"] = query;
  record["method"] = method;
  json vals = json::array();
  for (const auto& v : values) vals.push_back(v.get_str());
  record["values"] = vals;
  return record;
}

void emit(const json& record, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << record.dump() << "\n";
    return;
  }
  const auto& values = record["values"];
  if (format == "csv") {
    out << "n,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
      out << i << "," << values[i].get<std::string>() << "\n";
    return;
  }
  for (std::size_t i = 0; i < values.size(); ++i)
    out << (i ? "," : "") << values[i].get<std::string>();
  out << "\n";
}

std::map<std::string, OeisSequence> load_snapshot_or_empty(
    const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  return load_snapshot_file(path);
}

void print_table_markdown(const std::vector<TableCell>& cells,
                          std::ostream& out) {
  // cells come row-major; recover the column structure
  std::vector<std::string> cols;
  for (const auto& c : cells) {
    if (!cols.empty() && c.col_label == cols.front()) break;
    cols.push_back(c.col_label);
  }
  out << "| |";
  for (const auto& c : cols) out << " " << c << " |";
  out << "\n|-|";
  for (std::size_t i = 0; i < cols.size(); ++i) out << "-|";
  out << "\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i % cols.size() == 0) out << "| " << cells[i].row_label << " |";
    const TableCell& c = cells[i];
    std::string annotation;
    if (c.entry == "-")
      annotation = "--";
    else if (c.unavailable)
      annotation = c.entry + " (unavailable)";
    else if (c.report && c.report->matched)
      annotation = c.entry + " (match, shift " +
                   std::to_string(c.report->shift) + ")";
    else
      annotation = c.entry + " (MISMATCH)";
    out << " " << annotation << " |";
    if ((i + 1) % cols.size() == 0) out << "\n";
  }
}

void print_table_csv(const std::vector<TableCell>& cells, std::ostream& out) {
  out << "row,col,entry,matched,shift,dropped_prefix,overlap,terms\n";
  for (const auto& c : cells) {
    out << c.row_label << "," << c.col_label << "," << c.entry << ",";
    if (c.entry == "-" || c.unavailable) {
      out << (c.unavailable ? "unavailable" : "") << ",,,,";
    } else {
      out << (c.report->matched ? "true" : "false") << ","
          << c.report->shift << "," << c.report->dropped_prefix << ","
          << c.report->overlap_length << ",";
    }
    for (std::size_t i = 0; i < c.generated.size(); ++i)
      out << (i ? " " : "") << c.generated[i].get_str();
    out << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Exact enumeration of raised k-Dyck paths"};
  app.require_subcommand(1);

  long k = 2, n = 0, alpha = 0, beta = 0, terms = 8;
  std::string method = "closed", format = "plain";
  FilterFlags flags;

  auto* cmd_count = app.add_subcommand("count", "count one path class");
  cmd_count->add_option("--k", k)->required();
  cmd_count->add_option("--n", n)->required();
  cmd_count->add_option("--alpha", alpha)->required();
  cmd_count->add_option("--beta", beta)->required();
  add_filter_flags(cmd_count, flags);
  cmd_count->add_option("--method", method)
      ->check(CLI::IsMember({"closed", "recurrence", "series", "oracle"}));
  cmd_count->add_option("--format", format)
      ->check(CLI::IsMember({"plain", "json", "csv"}));

  auto* cmd_series = app.add_subcommand("series", "expand a generating function");
  cmd_series->add_option("--k", k)->required();
  cmd_series->add_option("--alpha", alpha)->required();
  cmd_series->add_option("--beta", beta)->required();
  cmd_series->add_option("--terms", terms)->required();
  add_filter_flags(cmd_series, flags);
  cmd_series->add_option("--format", format)
      ->check(CLI::IsMember({"plain", "json", "csv"}));

  int table_id = 1;
  long table_terms = 16, max_shift = 5, min_overlap = 8;
  unsigned jobs = 1;
  std::string out_path, snapshot_path = "data/oeis_snapshot.txt";
  std::string table_format = "md";
  auto* cmd_table = app.add_subcommand("table", "regenerate a reference table");
  cmd_table->add_option("--id", table_id)->required()->check(CLI::Range(1, 4));
  cmd_table->add_option("--terms", table_terms);
  cmd_table->add_option("--out", out_path);
  cmd_table->add_option("--snapshot", snapshot_path);
  cmd_table->add_option("--jobs", jobs);
  cmd_table->add_option("--max-shift", max_shift);
  cmd_table->add_option("--min-overlap", min_overlap);
  cmd_table->add_option("--format", table_format)
      ->check(CLI::IsMember({"md", "csv"}));

  std::string oeis_id;
  bool offline = false;
  auto* cmd_verify = app.add_subcommand("verify", "match a shape series against OEIS");
  cmd_verify->add_option("--oeis", oeis_id)->required();
  cmd_verify->add_option("--k", k)->required();
  cmd_verify->add_option("--alpha", alpha)->required();
  cmd_verify->add_option("--beta", beta)->required();
  cmd_verify->add_option("--terms", terms);
  cmd_verify->add_option("--max-shift", max_shift);
  cmd_verify->add_option("--min-overlap", min_overlap);
  cmd_verify->add_option("--snapshot", snapshot_path);
  cmd_verify->add_flag("--offline", offline);

  long k_max = 3, shape_max = 4, n_max = 5;
  auto* cmd_xcheck = app.add_subcommand("xcheck", "sweep formula == oracle");
  cmd_xcheck->add_option("--k-max", k_max);
  cmd_xcheck->add_option("--shape-max", shape_max);
  cmd_xcheck->add_option("--n-max", n_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cmd_count->parsed()) {
    require_single_filter(flags);
    std::string method_used;
    ExactInt value = compute_count(k, n, Shape{alpha, beta}, flags, method,
                                   method_used);
    json query = {{"k", k}, {"n", n}, {"alpha", alpha}, {"beta", beta}};
    if (flags.count_set()) query["filter"] = flags.to_json();
    emit(make_record(query, method_used, {value}), format, std::cout);
    return 0;
  }

  if (cmd_series->parsed()) {
    require_single_filter(flags);
    if (terms < 0) throw UsageError("--terms must be >= 0");
    TruncatedSeries s = compute_series(k, Shape{alpha, beta},
                                       static_cast<std::size_t>(terms), flags);
    json query = {{"k", k}, {"alpha", alpha}, {"beta", beta}, {"terms", terms}};
    if (flags.count_set()) query["filter"] = flags.to_json();
    emit(make_record(query, "series", s.coeffs()), format, std::cout);
    return 0;
  }

  if (cmd_table->parsed()) {
    auto snapshot = load_snapshot_or_empty(snapshot_path);
    auto cells = regenerate_table(table_id, static_cast<std::size_t>(table_terms),
                                  snapshot, max_shift, min_overlap, jobs);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw UnavailableError("cannot open " + out_path);
      out = &file;
    }
    if (table_format == "csv")
      print_table_csv(cells, *out);
    else
      print_table_markdown(cells, *out);
    return 0;
  }

  if (cmd_verify->parsed()) {
    if (!valid_oeis_id(oeis_id)) throw UsageError("malformed OEIS id");
    auto snapshot = load_snapshot_or_empty(snapshot_path);
    OeisSequence target;
    if (auto it = snapshot.find(oeis_id); it != snapshot.end()) {
      target = it->second;
    } else {
      FetchOptions opts;
      opts.offline = offline;
      target = fetch(oeis_id, opts);
    }
    TruncatedSeries s =
        shape_series(k, Shape{alpha, beta}, static_cast<std::size_t>(terms));
    MatchReport report = match_sequence(s.coeffs(), target, max_shift, min_overlap);
    json j = {{"oeis", oeis_id},
              {"matched", report.matched},
              {"shift", report.shift},
              {"dropped_prefix", report.dropped_prefix},
              {"overlap", report.overlap_length}};
    std::cout << j.dump() << "\n";
    return report.matched ? 0 : 1;
  }

  if (cmd_xcheck->parsed()) {
    for (long kk = 2; kk <= k_max; ++kk)
      for (long a = 0; a <= shape_max; ++a)
        for (long b = 0; b <= shape_max; ++b)
          for (long nn = 0; nn <= n_max; ++nn) {
            PathClassQuery q{kk, nn, Shape{a, b}};
            ExactInt closed = count_closed(q);
            ExactInt rec = count_recurrence(q);
            ExactInt ser = count(q, CountMethod::Series);
            ExactInt dp = oracle_count(q);
            if (closed != rec || closed != ser || closed != dp) {
              std::cout << "counterexample: k=" << kk << " n=" << nn
                        << " alpha=" << a << " beta=" << b
                        << " closed=" << closed << " recurrence=" << rec
                        << " series=" << ser << " oracle=" << dp << "\n";
              return 1;
            }
          }
    std::cout << "xcheck: all routes agree\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const UnavailableError& e) {
    std::cerr << "unavailable: " << e.what() << "\n";
    return 4;
  } catch (const FetchError& e) {
    std::cerr << "fetch failed: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
