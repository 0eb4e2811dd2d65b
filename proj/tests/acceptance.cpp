// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "amicable/numerics.hpp"
#include "amicable/primality.hpp"
#include "amicable/report.hpp"
#include "amicable/rules.hpp"
#include "amicable/search.hpp"
#include "amicable/sequences.hpp"
#include "cli.hpp"
#include "json.hpp"

using amicable::Natural;
namespace nm = amicable::numerics;
namespace pr = amicable::primality;
namespace rl = amicable::rules;
namespace sq = amicable::sequences;
namespace sr = amicable::search;

namespace {

// Thrown by expect(); carries the first failed check.
struct CheckFailed {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed{what};
}

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = amicable::cli::run(args, out, err, [](std::string_view) { return std::nullopt; });
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json cli_json(const std::vector<std::string>& args, int expected_code = 0) {
  auto with_format = args;
  with_format.insert(with_format.end(), {"--format", "json"});
  const auto r = cli(with_format);
  expect(r.code == expected_code, "exit status " + std::to_string(r.code) + ": " + r.err);
  return nlohmann::json::parse(r.out);
}

Natural sigma(std::uint64_t n) { return nm::sigma_proper(Natural(n)); }

bool is_decisive_composite(const pr::Verdict& v) {
  static const std::set<std::string> proving = {"llr", "lucas-lehmer", "miller-rabin-deterministic",
                                                "trial-division", "pepin"};
  return v.composite() && (v.witness.has_value() || proving.count(v.method) == 1);
}

// ---------------------------------------------------------------------------

void c1_sigma_ground_truth() {
  const std::pair<std::uint64_t, std::uint64_t> cases[] = {
      {220, 284},         {284, 220},         {2024, 2296},       {2296, 2744},
      {17296, 18416},     {18416, 17296},     {9363584, 9437056}, {9437056, 9363584},
  };
  for (const auto& [n, s] : cases) expect(sigma(n) == Natural(s), "sigma(" + std::to_string(n) + ")");
}

void c2_table1() {
  const auto rows = cli_json({"table", "1"}).at("rows");
  const std::vector<std::vector<std::string>> expected = {
      {"2", "5", "11", "71", "220", "284", "Amicable"},
      {"3", "11", "23", "287", "2024", "2296", "None"},
      {"4", "23", "47", "1151", "17296", "18416", "Amicable"},
      {"7", "191", "383", "73727", "9363584", "9437056", "Amicable"},
  };
  expect(rows.get<std::vector<std::vector<std::string>>>() == expected, "table 1 rows");
}

void c3_table2() {
  const auto doc = cli_json({"table", "2"});
  const auto cols = doc.at("columns").get<std::vector<std::string>>();
  const auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == name) return i;
    throw CheckFailed{"missing column " + name};
  };
  const auto m = col("m_{n+1}");
  const auto met = col("Conditions met");
  const std::string ms[] = {"7", "15", "31", "255"};
  const std::string mets[] = {"T", "F", "T", "F"};
  const auto rows = doc.at("rows");
  expect(rows.size() == 4, "four rows");
  for (std::size_t i = 0; i < 4; ++i) {
    expect(rows[i][m] == ms[i], "m_{n+1} row " + std::to_string(i));
    expect(rows[i][met] == mets[i], "conditions row " + std::to_string(i));
  }
}

void c4_table4() {
  const auto rows = cli_json({"table", "4"}).at("rows");
  expect(rows.size() == 4, "four rows");
  const std::string ns[] = {"2", "4", "8", "16"};
  for (std::size_t i = 0; i < 4; ++i) {
    expect(rows[i][0] == ns[i], "n column");
    expect(rows[i][1] == "T", "alpha prime at n=" + ns[i]);
    expect(rows[i][2] == (i == 0 ? "T" : "F"), "beta and gamma at n=" + ns[i]);
  }
}

// Shared between criteria 5 and 6.
const std::vector<sr::ScanRecord>& default_scan() {
  static const auto rows = sr::scan_conjecture1(sr::MersenneCatalog::bundled());
  return rows;
}

void c5_table3_desk_slice() {
  std::size_t slice = 0;
  for (const auto& r : default_scan()) {
    if (r.n > 4422) continue;
    ++slice;
    const bool published_true = r.n == 1 || r.n == 2 || r.n == 4;
    const std::string at = " at n=" + std::to_string(r.n);
    expect(r.combined_ab == (published_true ? sr::Tri::True : sr::Tri::False), "a and b" + at);
    expect(r.resolution == sr::Resolution::Reproduced, "resolution" + at);
    if (!published_true) {
      expect(is_decisive_composite(r.a) || is_decisive_composite(r.b), "F without evidence" + at);
    }
  }
  expect(slice == 20, "20 desk rows, got " + std::to_string(slice));
}

void c6_table3_large_rows() {
  const auto& rows = default_scan();
  for (const auto& r : rows) {
    const std::string at = " at n=" + std::to_string(r.n);
    expect(!r.counterexample_candidate, "counterexample candidate" + at);
    expect(r.resolution != sr::Resolution::Disagrees, "disagreement" + at);
    if (r.n > 4422 && r.resolution != sr::Resolution::Unresolved) {
      expect(r.combined_ab == sr::Tri::False, "large row not F" + at);
      expect(r.a.composite() || r.b.composite(), "large row without a composite member" + at);
    }
  }
  const auto s = sr::summarize(rows);
  expect(s.reproduced + s.consistent + s.unresolved == rows.size(), "summary counts");
  expect(s.counterexamples == 0, "summary counterexamples");
}

void c7_lemma2() {
  for (sq::Index n : {2, 3, 4, 7}) {
    const auto rec = rl::lemma2_check(n);
    const auto t = sq::thabit_triple(n);
    expect(rec.holds(), "sigma(r_n) = s_n = closed form at n=" + std::to_string(n));
    expect(nm::sigma_proper_bruteforce(t.r, 20'000'000) == t.s, "brute force at n=" + std::to_string(n));
  }
}

void c8_lemma1() {
  const auto rec = rl::lemma1_check(3);
  expect(rec.sigma_s == Natural(2744), "sigma(s_3)");
  expect(rec.r == Natural(2024), "r_3");
  expect(rec.sigma_s > rec.r, "strict inequality");
}

void c9_conjecture2() {
  for (sq::Index n = 2; n <= 256; ++n) {
    const bool zero = sq::conjecture2_residual(n) == 0;
    expect(zero == (n == 2), "residual at n=" + std::to_string(n));
  }
  const auto fam = sq::baghdadi_first(2);
  expect(fam.lambda == Natural(220) && fam.mu == Natural(284), "lambda_2, mu_2");
  expect(rl::verify_amicable(fam.lambda, fam.mu).amicable, "(220, 284) amicable");
}

void c10_shift_identities() {
  for (sq::Index n = 1; n <= 256; ++n) {
    const auto g = sq::baghdadi_general(n);
    const auto t = sq::thabit_triple(n + 2);
    const std::string at = " at n=" + std::to_string(n);
    expect(g.a == t.a, "A" + at);
    expect(g.b == t.b, "B" + at);
    expect(g.m == sq::mersenne_number(n + 3), "M" + at);
    expect(g.r == t.r, "R" + at);
    expect(g.s == t.s, "S" + at);
    for (const auto& id : sq::baghdadi_shift_identities(n)) expect(id.holds(), id.label + at);
  }
}

void c11_kashi() {
  const auto doc = cli_json({"rule", "kashi", "--n", "3"}, amicable::cli::kCounterexample);
  const auto rec = doc.at("records")[0];
  expect(rec.at("pair")[0] == "2024" && rec.at("pair")[1] == "2296", "pair (2024, 2296)");
  expect(rec.at("status") == "not-amicable", "not amicable");
  expect(rec.at("father") == true, "father flag");
  const auto pattern = rl::aliquot_pattern_check(3);
  expect(pattern.r_matches(), "r_3 listing should be correct");
  expect(!pattern.s_matches(), "s_3 listing mismatch not reported");
  bool noted = false;
  for (const auto& note : rec.at("notes")) {
    noted = noted || note.get<std::string>().find("do not match") != std::string::npos;
  }
  expect(noted, "mismatch note in CLI output");
}

void c12_primality_cross_validation() {
  for (std::uint64_t n = 2; n <= 64; ++n) {
    const auto value = pr::FormDescriptor::k_two_n_minus_1(3, n).value();
    const auto llr = pr::llr_riesel(3, n);
    const auto mr = pr::miller_rabin_deterministic(value);
    expect(llr.decided() && mr.decided(), "undecided at n=" + std::to_string(n));
    expect(llr.proven_prime() == mr.proven_prime(), "llr vs deterministic at n=" + std::to_string(n));
  }
  const std::set<std::uint64_t> mersenne = {2, 3, 5, 7, 13, 17, 19, 31};
  for (std::uint64_t p = 2; p <= 61; ++p) {
    if (pr::trial_division(p).composite()) continue;
    const auto ll = pr::lucas_lehmer(p);
    const bool expected = mersenne.count(p) == 1 || p == 61;
    expect(ll.proven_prime() == expected, "lucas-lehmer at p=" + std::to_string(p));
    expect(pr::miller_rabin_deterministic(sq::mersenne_number(p)).proven_prime() == expected,
           "deterministic at p=" + std::to_string(p));
  }
  expect(pr::FormDescriptor::k_two_n_minus_1(3, 1).value() == Natural(5), "n=1 gives 5 itself");
  for (std::uint64_t n = 5; n <= 10'000; n += 4) {
    const auto v = pr::mod4_shortcut(n);
    expect(v && v->composite() && v->witness == Natural(5), "mod4 verdict at n=" + std::to_string(n));
    expect(pr::FormDescriptor::k_two_n_minus_1(3, n).value() % Natural(5) == Natural(0),
           "5 divides at n=" + std::to_string(n));
  }
}

void c13_perfect_numbers() {
  const auto claims = rl::perfect_number_claims_check(10);
  expect(claims.none_in_1e4_1e5, "enumeration gap");
  expect(claims.none_in_1e4_1e5_bruteforce, "brute-force gap");
  expect(claims.fifth == Natural(33550336), "fifth perfect number");
  expect(claims.sixth == Natural(8589869056ull), "sixth perfect number");
}

void c14_oracle_suite() {
  for (std::uint64_t n = 1; n <= 100'000; ++n) {
    if (nm::sigma_proper(Natural(n)) != nm::sigma_proper_bruteforce(Natural(n))) {
      throw CheckFailed{"oracle mismatch at " + std::to_string(n)};
    }
  }
  std::mt19937_64 gen(20240101);
  std::uniform_int_distribution<std::uint64_t> dist(1, 100'000'000);
  for (int i = 0; i < 1000; ++i) {
    const Natural n(dist(gen));
    expect(nm::sigma_proper(n) == nm::sigma_proper_bruteforce(n), "oracle mismatch at " + n.to_string());
  }
}

void c15_determinism_and_cache() {
  const auto dir = std::filesystem::temp_directory_path() / "amicable-acceptance";
  std::filesystem::create_directories(dir);
  const auto cache = (dir / "scan.log").string();
  std::filesystem::remove(cache);
  const std::vector<std::string> base = {"scan", "1", "--format", "json", "--seed", "42"};
  const auto first = cli(base);
  const auto second = cli(base);
  expect(first.code == second.code, "exit status differs");
  expect(first.out == second.out, "repeated runs differ");
  auto cached = base;
  cached.insert(cached.end(), {"--cache", cache});
  const auto cold = cli(cached);
  const auto warm = cli(cached);
  expect(cold.out == first.out, "cold-cache run differs from uncached run");
  expect(warm.out == cold.out, "warm-cache run differs from cold run");
  expect(std::filesystem::file_size(cache) > 0, "cache log is empty");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "sigma ground truth", c1_sigma_ground_truth},
      {2, "table 1 reproduction", c2_table1},
      {3, "table 2 reproduction", c3_table2},
      {4, "table 4 reproduction", c4_table4},
      {5, "table 3 desk slice", c5_table3_desk_slice},
      {6, "table 3 large rows", c6_table3_large_rows},
      {7, "father relation by oracle and closed form", c7_lemma2},
      {8, "sigma(s_3) exceeds r_3", c8_lemma1},
      {9, "baghdadi-first residual", c9_conjecture2},
      {10, "shift identities", c10_shift_identities},
      {11, "kashi refutation", c11_kashi},
      {12, "primality cross-validation", c12_primality_cross_validation},
      {13, "perfect numbers", c13_perfect_numbers},
      {14, "sigma oracle suite", c14_oracle_suite},
      {15, "determinism and cache transparency", c15_determinism_and_cache},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      c.check();
    } catch (const CheckFailed& f) {
      detail = f.what;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1f ms", ms);
    if (detail.empty()) {
      std::cout << "PASS " << c.id << " " << c.name << " (" << timing << ")\n";
    } else {
      ++failures;
      std::cout << "FAIL " << c.id << " " << c.name << " (" << timing << "): " << detail << "\n";
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
