#pragma once

// HTTP client for OEIS b-files.  Kept out of oeis.hpp so the pure parsing
// and matching machinery doesn't drag in the networking stack.

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <fstream>

#include "kdyck/oeis.hpp"

namespace kdyck {

namespace detail {

inline std::filesystem::path cache_file(const FetchOptions& options,
                                        const std::string& id) {
  return options.cache_dir / ("b" + id.substr(1) + ".txt");
}

inline std::optional<std::string> read_cache(const FetchOptions& options,
                                             const std::string& id) {
  std::ifstream in(cache_file(options, id));
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace detail

// Retrieves the b-file for an A-number: GET <base_url>/Annnnnn/bnnnnnn.txt.
// Responses are cached; offline mode reads the cache only.
inline OeisSequence fetch(const std::string& id, const FetchOptions& options) {
  if (!valid_oeis_id(id))
    throw std::invalid_argument("fetch: malformed OEIS id '" + id + "'");

  if (auto cached = detail::read_cache(options, id)) {
    OeisSequence seq = parse_bfile(*cached, id);
    seq.source = SequenceSource::Snapshot;
    return seq;
  }
  if (options.offline)
    throw UnavailableError("fetch: " + id + " not cached and offline");

  httplib::Client client(options.base_url);
  client.set_follow_location(true);
  const std::string path = "/" + id + "/b" + id.substr(1) + ".txt";
  auto res = client.Get(path);
  if (!res || res->status != 200)
    throw FetchError("fetch: request for " + id + " failed");

  std::filesystem::create_directories(options.cache_dir);
  std::ofstream out(detail::cache_file(options, id));
  out << res->body;

  OeisSequence seq = parse_bfile(res->body, id);
  seq.source = SequenceSource::Fetched;
  return seq;
}

}  // namespace kdyck
