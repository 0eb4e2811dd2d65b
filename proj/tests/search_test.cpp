#include <filesystem>

#include "amicable/report.hpp"
#include "amicable/search.hpp"
#include "doctest.h"

using amicable::Natural;
namespace pr = amicable::primality;
namespace sr = amicable::search;
using sr::Resolution;
using sr::Tri;

namespace {

sr::MersenneCatalog desk_catalog() { return sr::MersenneCatalog::bundled(); }

std::string records_json(const std::vector<sr::ScanRecord>& rows) {
  std::string out;
  for (const auto& r : rows) out += amicable::report::to_json(r) + "\n";
  return out;
}

std::filesystem::path fresh_path(std::string_view name) {
  auto dir = std::filesystem::temp_directory_path() / "amicable-search-test";
  std::filesystem::create_directories(dir);
  auto path = dir / std::string(name);
  std::filesystem::remove(path);
  return path;
}

}  // namespace

TEST_CASE("truth and resolution tokens round-trip") {
  for (Tri t : {Tri::True, Tri::False, Tri::Unresolved}) CHECK(sr::tri_from_string(sr::to_string(t)) == t);
  for (Resolution r : {Resolution::Reproduced, Resolution::Consistent, Resolution::Unresolved,
                       Resolution::Disagrees}) {
    CHECK(sr::resolution_from_string(sr::to_string(r)) == r);
  }
}

TEST_CASE("cascade picks the cheapest decisive step") {
  sr::ScanOptions opts;
  CHECK(sr::cascade_riesel(3, 5, opts).method == "mod4-shortcut");  // 95
  CHECK(sr::cascade_riesel(3, 1, opts).proven_prime());             // 5
  CHECK(sr::cascade_riesel(3, 0, opts).proven_prime());             // 2
  const auto sieve_hit = sr::cascade_riesel(3, 87, opts);
  CHECK(sieve_hit.method == "sieve");
  CHECK(*sieve_hit.witness == 53);
  CHECK(sr::cascade_riesel(3, 2202, opts).method == "sieve");
  const auto full = sr::cascade_riesel(3, 106, opts);
  CHECK(full.method == "llr");
  CHECK(full.composite());
}

TEST_CASE("scan rows follow the published table within the desk slice") {
  const auto rows = sr::scan_conjecture1(desk_catalog());
  REQUIRE(rows.size() == 51);
  for (const auto& r : rows) {
    CAPTURE(r.n);
    CHECK(r.m_next.proven_prime());
    CHECK_FALSE(r.counterexample_candidate);
    CHECK(r.resolution != Resolution::Disagrees);
    if (r.n <= 4422) {
      CHECK(r.resolution == Resolution::Reproduced);
      CHECK(r.combined_ab == sr::published_table3_ab(r.n));
    }
    if (r.combined_ab == Tri::True) {
      REQUIRE(r.c.has_value());
      CHECK(r.c->proven_prime());
    } else {
      CHECK_FALSE(r.c.has_value());
    }
  }
  CHECK(rows[1].n == 2);
  CHECK(rows[1].combined_ab == Tri::True);
  CHECK(rows[3].n == 6);
  CHECK(*rows[3].a.witness == 5);
}

TEST_CASE("summary counts agree with records") {
  const auto rows = sr::scan_conjecture1(desk_catalog());
  const auto s = sr::summarize(rows);
  CHECK(s.rows == 51);
  CHECK(s.combined_true == 3);
  CHECK(s.counterexamples == 0);
  CHECK(s.disagreements == 0);
  CHECK(s.reproduced + s.consistent + s.unresolved == 51);
}

TEST_CASE("a tiny budget leaves rows unresolved rather than false") {
  sr::ScanOptions opts;
  opts.policy.sieve_bound = 3;
  opts.policy.max_full_test_bits = 64;
  const auto rows = sr::scan_conjecture1(desk_catalog(), opts);
  const auto s = sr::summarize(rows);
  CHECK(s.unresolved > 0);
  CHECK(s.disagreements == 0);
  for (const auto& r : rows) {
    if (r.resolution == Resolution::Unresolved) CHECK(r.combined_ab == Tri::Unresolved);
  }
}

TEST_CASE("scan output is independent of the worker count") {
  sr::ScanOptions one;
  sr::ScanOptions four;
  four.jobs = 4;
  CHECK(records_json(sr::scan_conjecture1(desk_catalog(), one)) ==
        records_json(sr::scan_conjecture1(desk_catalog(), four)));
}

TEST_CASE("warm cache gives the same records and recomputes nothing decided") {
  const auto path = fresh_path("scan.log");
  std::string cold;
  std::size_t stored = 0;
  {
    sr::ResultCache cache(path);
    sr::ScanOptions opts;
    opts.cache = &cache;
    cold = records_json(sr::scan_conjecture1(desk_catalog(), opts));
    stored = cache.size();
  }
  CHECK(stored > 0);
  sr::ResultCache warm_cache(path);
  CHECK(warm_cache.size() == stored);
  sr::ScanOptions opts;
  opts.cache = &warm_cache;
  opts.jobs = 3;
  CHECK(records_json(sr::scan_conjecture1(desk_catalog(), opts)) == cold);
  CHECK(warm_cache.size() == stored);
  // And identical to a run with no cache at all.
  CHECK(records_json(sr::scan_conjecture1(desk_catalog())) == cold);
}

TEST_CASE("timestamps come from the injected clock") {
  sr::ScanOptions opts;
  opts.record_timestamps = true;
  opts.clock = [] { return std::int64_t{1234}; };
  const auto rows = sr::scan_conjecture2(4, opts);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].timestamp == 1234);
  CHECK_FALSE(sr::scan_conjecture2(4).front().timestamp.has_value());
}

TEST_CASE("fermat scan reproduces the four published rows") {
  const auto rows = sr::scan_conjecture2(16);
  REQUIRE(rows.size() == 4);
  const sr::Index ns[] = {2, 4, 8, 16};
  for (std::size_t i = 0; i < 4; ++i) {
    CAPTURE(ns[i]);
    CHECK(rows[i].n == ns[i]);
    CHECK(rows[i].alpha_prime == Tri::True);
    CHECK(rows[i].beta_gamma == (ns[i] == 2 ? Tri::True : Tri::False));
    CHECK(rows[i].resolution == Resolution::Reproduced);
  }
  CHECK(*rows[1].beta.witness == 5);  // beta_4 = 35
  CHECK(rows[0].alpha.method == "pepin");
}

TEST_CASE("fermat scan beyond the table finds F5 composite") {
  const auto rows = sr::scan_conjecture2(32);
  REQUIRE(rows.size() == 5);
  CHECK(rows[4].alpha_prime == Tri::False);
  CHECK(*rows[4].alpha.witness == 641);
  CHECK_FALSE(rows[4].published_alpha.has_value());
}
