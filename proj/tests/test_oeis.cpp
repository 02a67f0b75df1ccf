#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "kdyck/oeis.hpp"
#include "kdyck/oeis_fetch.hpp"

using namespace kdyck;

namespace {

std::vector<ExactInt> ints(std::vector<long> v) {
  return std::vector<ExactInt>(v.begin(), v.end());
}

std::filesystem::path fresh_temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("kdyck-test-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("valid_oeis_id") {
  CHECK(valid_oeis_id("A000108"));
  CHECK_FALSE(valid_oeis_id("A00108"));
  CHECK_FALSE(valid_oeis_id("B000108"));
  CHECK_FALSE(valid_oeis_id("A0001080"));
  CHECK_FALSE(valid_oeis_id("A00010x"));
  CHECK_FALSE(valid_oeis_id(""));
}

TEST_CASE("parse_snapshot") {
  auto seqs = parse_snapshot("A000108 ,1,1,2,5,14,\n");
  REQUIRE(seqs.size() == 1);
  CHECK(seqs[0].id == "A000108");
  CHECK(seqs[0].terms == ints({1, 1, 2, 5, 14}));
  CHECK(seqs[0].source == SequenceSource::Snapshot);

  CHECK(parse_snapshot("").empty());
  CHECK(parse_snapshot("# just a comment\n\n").empty());

  try {
    parse_snapshot("# ok\nA000108 ,1,x,2,\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_snapshot("garbage line\n"), ParseError);
}

TEST_CASE("parse_bfile") {
  auto seq = parse_bfile("0 1\n1 1\n2 2\n", "A000108");
  CHECK(seq.terms == ints({1, 1, 2}));
  CHECK(seq.id == "A000108");

  CHECK(parse_bfile("", "A000108").terms.empty());
  CHECK(parse_bfile("# comment\n3 14\n", "A000108").terms == ints({14}));
  CHECK_THROWS_AS(parse_bfile("0\n", "A000108"), ParseError);
  CHECK_THROWS_AS(parse_bfile("0 x\n", "A000108"), ParseError);
}

TEST_CASE("bundled snapshot loads") {
  auto snapshot = load_snapshot_file(KDYCK_SNAPSHOT_PATH);
  REQUIRE(snapshot.count("A000108") == 1);
  const auto& cat = snapshot.at("A000108");
  CHECK(cat.terms[0] == 1);
  CHECK(cat.terms[4] == 14);
  for (const auto& [id, seq] : snapshot) {
    CHECK(valid_oeis_id(id));
    CHECK_FALSE(seq.terms.empty());
  }
}

TEST_CASE("match_sequence") {
  OeisSequence catalan{"A000108", ints({1, 1, 2, 5, 14, 42}),
                       SequenceSource::Snapshot};
  auto r = match_sequence(ints({1, 1, 2, 5, 14}), catalan, 5, 3);
  CHECK(r.matched);
  CHECK(r.shift == 0);
  CHECK(r.dropped_prefix == 0);
  CHECK(r.overlap_length == 5);

  OeisSequence other{"A000245", ints({1, 3, 9, 28}), SequenceSource::Snapshot};
  CHECK_FALSE(match_sequence(ints({0, 1, 2, 5, 14}), other, 5, 3).matched);

  // generated misses the target's first term: alignment drops it on the
  // target side, so shift is negative and nothing is jointly dropped
  auto shifted = match_sequence(ints({1, 2, 5, 14, 42}), catalan, 5, 3);
  CHECK(shifted.matched);
  CHECK(shifted.shift == -1);
  CHECK(shifted.dropped_prefix == 0);

  // both sides lose one aligned initial pair
  OeisSequence tail{"A000108", ints({7, 2, 5, 14, 42}),
                    SequenceSource::Snapshot};
  auto dropped = match_sequence(ints({9, 2, 5, 14, 42}), tail, 5, 3);
  CHECK(dropped.matched);
  CHECK(dropped.shift == 0);
  CHECK(dropped.dropped_prefix == 1);

  // overlap below the minimum is not a match
  CHECK_FALSE(match_sequence(ints({1, 1, 2}), catalan, 5, 8).matched);
  CHECK_THROWS_AS(match_sequence({}, catalan, 5, 3), std::invalid_argument);
}

TEST_CASE("fetch input validation and offline behaviour") {
  FetchOptions opt;
  opt.offline = true;
  opt.cache_dir = fresh_temp_dir("offline");
  CHECK_THROWS_AS(fetch("bogus", opt), std::invalid_argument);
  CHECK_THROWS_AS(fetch("A000108", opt), UnavailableError);
  std::filesystem::remove_all(opt.cache_dir);
}

TEST_CASE("fetch reads a warm cache offline") {
  FetchOptions opt;
  opt.offline = true;
  opt.cache_dir = fresh_temp_dir("warm");
  std::filesystem::create_directories(opt.cache_dir);
  {
    std::ofstream out(opt.cache_dir / "b000108.txt");
    out << "0 1\n1 1\n2 2\n3 5\n";
  }
  auto seq = fetch("A000108", opt);
  CHECK(seq.source == SequenceSource::Snapshot);
  CHECK(seq.terms == ints({1, 1, 2, 5}));
  std::filesystem::remove_all(opt.cache_dir);
}

TEST_CASE("fetch over HTTP populates the cache") {
  httplib::Server server;
  server.Get("/A000108/b000108.txt",
             [](const httplib::Request&, httplib::Response& res) {
               res.set_content("0 1\n1 1\n2 2\n3 5\n4 14\n", "text/plain");
             });
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread runner([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  FetchOptions opt;
  opt.base_url = "http://127.0.0.1:" + std::to_string(port);
  opt.cache_dir = fresh_temp_dir("http");

  auto seq = fetch("A000108", opt);
  CHECK(seq.source == SequenceSource::Fetched);
  CHECK(seq.terms == ints({1, 1, 2, 5, 14}));
  CHECK(std::filesystem::exists(opt.cache_dir / "b000108.txt"));

  // second fetch is served from the cache
  auto cached = fetch("A000108", opt);
  CHECK(cached.source == SequenceSource::Snapshot);
  CHECK(cached.terms == seq.terms);

  // a missing sequence is a fetch error, not a parse error
  CHECK_THROWS_AS(fetch("A999999", opt), FetchError);

  server.stop();
  runner.join();
  std::filesystem::remove_all(opt.cache_dir);
}

TEST_CASE("regenerate_table matches the snapshot") {
  auto snapshot = load_snapshot_file(KDYCK_SNAPSHOT_PATH);

  auto t1 = regenerate_table(1, 16, snapshot);
  bool saw_origin = false;
  for (const auto& cell : t1) {
    if (cell.row_label == "alpha=0" && cell.col_label == "beta=0") {
      saw_origin = true;
      CHECK(cell.entry == "A000108");
      REQUIRE(cell.report.has_value());
      CHECK(cell.report->matched);
      CHECK(cell.report->shift == 0);
    }
    if (cell.entry == "-") {
      CHECK_FALSE(cell.report.has_value());
      CHECK_FALSE(cell.unavailable);
    }
  }
  CHECK(saw_origin);

  auto t4 = regenerate_table(4, 16, snapshot);
  for (const auto& cell : t4) {
    if (cell.entry == "-") continue;
    INFO(cell.row_label << " " << cell.col_label << " " << cell.entry);
    CHECK_FALSE(cell.unavailable);
    REQUIRE(cell.report.has_value());
    CHECK(cell.report->matched);
  }
  // spot-check a literal cell: k=2, M=2 is the powers of two
  for (const auto& cell : t4)
    if (cell.row_label == "M=2" && cell.col_label == "k=2") {
      CHECK(cell.entry == "{2^n}");
      CHECK(cell.generated[5] == 16);  // shifted by one against 2^n
    }

  // a missing A-number marks only its own cell unavailable
  auto pruned = snapshot;
  pruned.erase("A000245");
  auto partial = regenerate_table(1, 16, pruned);
  int unavailable = 0;
  for (const auto& cell : partial)
    if (cell.unavailable) {
      ++unavailable;
      CHECK(cell.entry == "A000245");
    }
  CHECK(unavailable == 4);

  CHECK_THROWS_AS(regenerate_table(5, 16, snapshot), std::invalid_argument);
  CHECK_THROWS_AS(regenerate_table(1, 0, snapshot), std::invalid_argument);
}

TEST_CASE("table regeneration is deterministic across job counts") {
  auto snapshot = load_snapshot_file(KDYCK_SNAPSHOT_PATH);
  for (int table = 1; table <= 4; ++table) {
    auto serial = regenerate_table(table, 12, snapshot, 5, 8, 1);
    auto parallel = regenerate_table(table, 12, snapshot, 5, 8, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].row_label == parallel[i].row_label);
      CHECK(serial[i].col_label == parallel[i].col_label);
      CHECK(serial[i].entry == parallel[i].entry);
      CHECK(serial[i].generated == parallel[i].generated);
      CHECK(serial[i].report.has_value() == parallel[i].report.has_value());
      if (serial[i].report) {
        CHECK(serial[i].report->matched == parallel[i].report->matched);
        CHECK(serial[i].report->shift == parallel[i].report->shift);
      }
    }
  }
}

TEST_CASE("k=2 table is symmetric under the shift rule") {
  auto snapshot = load_snapshot_file(KDYCK_SNAPSHOT_PATH);
  auto t1 = regenerate_table(1, 16, snapshot);
  const std::size_t width = 8;
  REQUIRE(t1.size() == width * width);
  for (std::size_t r = 0; r < width; ++r)
    for (std::size_t c = r + 1; c < width; ++c) {
      const auto& cell = t1[r * width + c];
      const auto& mirror = t1[c * width + r];
      if (cell.entry == "-" || mirror.entry == "-") continue;
      CHECK(cell.entry == mirror.entry);
      OeisSequence target{"A000000", mirror.generated,
                          SequenceSource::Snapshot};
      CHECK(match_sequence(cell.generated, target, 8, 8).matched);
    }
}
