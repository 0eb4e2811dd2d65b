#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "amicable/cache.hpp"
#include "amicable/catalog.hpp"
#include "amicable/numerics.hpp"
#include "amicable/report.hpp"
#include "amicable/rules.hpp"
#include "amicable/search.hpp"

namespace amicable::cli {

namespace {

using sequences::Index;

/// Bad invocation or unreadable input; maps to kUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SettingSpec {
  std::string name;  // flag name without dashes; env name is AMICABLE_ + upper snake case
  std::string fallback;
  std::string help;
  bool is_flag = false;
};

std::vector<SettingSpec> setting_specs() {
  const primality::Policy p;
  const search::ScanOptions s;
  const report::DisplayOptions d;
  return {
      {"format", "md", "Output format: md, csv or json"},
      {"seed", std::to_string(p.seed), "Seed for randomized Miller-Rabin (decimal or 0x hex)"},
      {"rounds", std::to_string(p.random_rounds), "Randomized Miller-Rabin rounds"},
      {"sieve-bound", std::to_string(p.sieve_bound), "Largest prime tried by the sieve"},
      {"full-test-max-bits", std::to_string(p.max_full_test_bits),
       "Skip full proving tests above this many bits"},
      {"time-budget-ms", std::to_string(p.time_budget.count()),
       "Wall-clock budget per iterated test in ms (0 disables)"},
      {"reprove-max-exponent", std::to_string(s.mersenne_reprove_max_exponent),
       "Re-prove catalog Mersenne primes by Lucas-Lehmer up to this exponent"},
      {"jobs", "1", "Worker threads for scans (0 = all cores)"},
      {"cache", "", "Result cache file (append log)"},
      {"catalog", "", "Mersenne exponent catalog file (default: bundled list)"},
      {"display-digits", std::to_string(d.max_digits),
       "Show longer numbers symbolically with a digit count"},
      {"accept-probable", "false", "Let probable primes satisfy rule conditions", true},
      {"full-decimal", "false", "Always print numbers in full", true},
      {"include-timestamps", "false", "Stamp reports and records with the current time", true},
  };
}

std::string env_name(std::string_view setting) {
  std::string out = "AMICABLE_";
  for (char ch : setting) out += ch == '-' ? '_' : static_cast<char>(std::toupper(ch));
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// key = value lines; '#' comments; keys are flag names.
std::map<std::string, std::string> read_config(const std::string& path,
                                               const std::vector<SettingSpec>& specs) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> values;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    const bool known = std::any_of(specs.begin(), specs.end(),
                                   [&](const SettingSpec& s) { return s.name == key; });
    if (!known) throw UsageError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    values[key] = value;
  }
  return values;
}

std::uint64_t parse_u64(std::string_view name, std::string_view text) {
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    text.remove_prefix(2);
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("invalid value '" + std::string(text) + "' for " + std::string(name));
  }
  return value;
}

bool parse_bool(std::string_view name, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw UsageError("invalid boolean '" + std::string(text) + "' for " + std::string(name));
}

Natural parse_natural(std::string_view name, std::string_view text) {
  try {
    return Natural::from_decimal(text);
  } catch (const DomainError&) {
    throw UsageError(std::string(name) + " must be a non-negative decimal integer, got '" +
                     std::string(text) + "'");
  }
}

std::pair<Index, Index> parse_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) throw UsageError("range must look like a..b");
  const Index lo = parse_u64("range start", text.substr(0, dots));
  const Index hi = parse_u64("range end", text.substr(dots + 2));
  if (lo > hi) throw UsageError("range start exceeds range end");
  return {lo, hi};
}

/// Effective configuration after layering flags > environment > config file > defaults.
struct Settings {
  report::Format format = report::Format::Markdown;
  primality::Policy policy;
  search::ScanOptions scan;
  report::DisplayOptions display;
  std::string cache_path;
  std::string catalog_path;
  bool include_timestamps = false;
};

Settings resolve_settings(const std::vector<SettingSpec>& specs,
                          const std::map<std::string, std::string>& from_flags,
                          const EnvLookup& env, const std::string& config_flag) {
  std::string config_path = config_flag;
  if (config_path.empty()) {
    if (auto v = env("AMICABLE_CONFIG")) config_path = *v;
  }
  std::map<std::string, std::string> from_file;
  if (!config_path.empty()) from_file = read_config(config_path, specs);

  std::map<std::string, std::string> value;
  for (const auto& spec : specs) {
    if (auto it = from_flags.find(spec.name); it != from_flags.end()) {
      value[spec.name] = it->second;
    } else if (auto e = env(env_name(spec.name))) {
      value[spec.name] = *e;
    } else if (auto f = from_file.find(spec.name); f != from_file.end()) {
      value[spec.name] = f->second;
    } else {
      value[spec.name] = spec.fallback;
    }
  }

  Settings s;
  try {
    s.format = report::format_from_string(value["format"]);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  s.policy.seed = parse_u64("seed", value["seed"]);
  s.policy.random_rounds = static_cast<unsigned>(parse_u64("rounds", value["rounds"]));
  if (s.policy.random_rounds == 0) throw UsageError("rounds must be positive");
  s.policy.sieve_bound = parse_u64("sieve-bound", value["sieve-bound"]);
  if (s.policy.sieve_bound < 3 || s.policy.sieve_bound > 0xffffffffull) {
    throw UsageError("sieve-bound must lie in [3, 2^32)");
  }
  s.policy.max_full_test_bits = parse_u64("full-test-max-bits", value["full-test-max-bits"]);
  s.policy.time_budget =
      std::chrono::milliseconds(parse_u64("time-budget-ms", value["time-budget-ms"]));
  s.policy.accept_probable = parse_bool("accept-probable", value["accept-probable"]);
  s.scan.policy = s.policy;
  s.scan.jobs = static_cast<unsigned>(parse_u64("jobs", value["jobs"]));
  s.scan.mersenne_reprove_max_exponent =
      parse_u64("reprove-max-exponent", value["reprove-max-exponent"]);
  s.include_timestamps = parse_bool("include-timestamps", value["include-timestamps"]);
  s.scan.record_timestamps = s.include_timestamps;
  s.display.max_digits = parse_u64("display-digits", value["display-digits"]);
  s.display.full_decimal = parse_bool("full-decimal", value["full-decimal"]);
  s.cache_path = value["cache"];
  s.catalog_path = value["catalog"];
  return s;
}

std::int64_t unix_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

void emit(report::ReportDocument doc, const Settings& s, std::ostream& out) {
  if (s.include_timestamps) doc.generated_at = unix_now();
  out << report::render(doc, s.format);
}

int scan_exit_code(const search::ScanSummary& summary, std::ostream& err) {
  if (summary.disagreements > 0) {
    err << "amicable: MAJOR FINDING: " << summary.disagreements
        << " decided row(s) contradict the published table; inspect the report\n";
    return kDisagreement;
  }
  if (summary.counterexamples > 0) {
    err << "amicable: counterexample found in " << summary.counterexamples << " row(s)\n";
    return kCounterexample;
  }
  if (summary.unresolved > 0) {
    err << "amicable: " << summary.unresolved << " of " << summary.rows
        << " row(s) unresolved at this budget\n";
    return kUnresolved;
  }
  return kOk;
}

struct Engine {
  Settings settings;
  std::unique_ptr<search::ResultCache> cache;

  explicit Engine(Settings s) : settings(std::move(s)) {
    if (!settings.cache_path.empty()) {
      cache = std::make_unique<search::ResultCache>(settings.cache_path);
      settings.scan.cache = cache.get();
    }
  }

  search::MersenneCatalog catalog() const {
    if (settings.catalog_path.empty()) return search::MersenneCatalog::bundled();
    return search::load_catalog(settings.catalog_path);
  }
};

int cmd_sigma(const Settings& s, const std::string& arg, std::ostream& out) {
  const Natural n = parse_natural("n", arg);
  if (n.is_zero()) throw UsageError("sigma is defined for n >= 1");
  const Natural sigma = numerics::sigma_proper(n);
  if (s.format == report::Format::Json) {
    out << "{\"n\": \"" << n << "\", \"sigma_proper\": \"" << sigma << "\"}\n";
  } else {
    out << sigma << '\n';
  }
  return kOk;
}

int cmd_verify_pair(const Settings& s, const std::string& m, const std::string& n,
                    std::ostream& out) {
  const Natural a = parse_natural("m", m);
  const Natural b = parse_natural("n", n);
  if (a.is_zero() || b.is_zero()) throw UsageError("pair members must be positive");
  emit(report::pair_document(rules::verify_amicable(a, b), s.display), s, out);
  return kOk;
}

int run_scan1(Engine& engine, std::ostream& out, std::ostream& err) {
  const auto catalog = engine.catalog();
  const auto records = search::scan_conjecture1(catalog, engine.settings.scan);
  emit(report::table3(records, engine.settings.scan, catalog.source()), engine.settings, out);
  return scan_exit_code(search::summarize(records), err);
}

int run_scan2(Engine& engine, Index max_n, std::ostream& out, std::ostream& err) {
  const auto records = search::scan_conjecture2(max_n, engine.settings.scan);
  emit(report::table4(records, engine.settings.scan), engine.settings, out);
  return scan_exit_code(search::summarize(records), err);
}

int cmd_table(Engine& engine, const std::string& which, std::ostream& out, std::ostream& err) {
  const Settings& s = engine.settings;
  if (which == "1") {
    emit(report::table1(s.policy, s.display), s, out);
    return kOk;
  }
  if (which == "2") {
    emit(report::table2(s.policy, s.display), s, out);
    return kOk;
  }
  if (which == "3") return run_scan1(engine, out, err);
  if (which == "4") return run_scan2(engine, 16, out, err);
  throw UsageError("table must be 1, 2, 3 or 4");
}

int cmd_rule(const Settings& s, const std::string& id, const std::string& n_arg,
             const std::string& range_arg, std::ostream& out) {
  rules::RuleId rule{};
  try {
    rule = rules::rule_from_string(id);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (n_arg.empty() == range_arg.empty()) throw UsageError("give exactly one of --n or --range");
  Index lo = 0;
  Index hi = 0;
  if (!n_arg.empty()) {
    lo = hi = parse_u64("--n", n_arg);
  } else {
    std::tie(lo, hi) = parse_range(range_arg);
  }
  if (hi - lo > 100000) throw UsageError("range is limited to 100000 indices");

  std::vector<rules::RuleReport> reports;
  for (Index n = lo;; ++n) {
    auto r = rules::evaluate(rule, n, s.policy);
    if (rule == rules::RuleId::Conjecture3Kashi && n <= 64) {
      const auto pattern = rules::aliquot_pattern_check(n, s.policy);
      if (!pattern.s_matches()) {
        r.notes.push_back("listed aliquot parts of s_n do not match its proper divisors");
      }
      r.notes.insert(r.notes.end(), pattern.notes.begin(), pattern.notes.end());
    }
    reports.push_back(std::move(r));
    if (n == hi) break;
  }
  emit(report::rule_document(reports, s.policy, s.display), s, out);
  const bool counterexample = std::any_of(reports.begin(), reports.end(),
                                          [](const rules::RuleReport& r) { return r.counterexample; });
  return counterexample ? kCounterexample : kOk;
}

}  // namespace

EnvLookup process_environment() {
  return [](std::string_view name) -> std::optional<std::string> {
    const char* v = std::getenv(std::string(name).c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  CLI::App app{"Divisor sums, amicable-pair rules and the Mersenne/Fermat scans", "amicable"};
  app.require_subcommand(1);
  app.fallthrough();

  const auto specs = setting_specs();
  std::map<std::string, std::string> option_values;
  std::map<std::string, bool> flag_values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& spec : specs) {
    const std::string help = spec.help + " [env " + env_name(spec.name) + "]";
    if (spec.is_flag) {
      options[spec.name] = app.add_flag("--" + spec.name, flag_values[spec.name], help);
    } else {
      options[spec.name] = app.add_option("--" + spec.name, option_values[spec.name], help);
    }
  }
  std::string config_path;
  app.add_option("--config", config_path, "Config file of key = value lines [env AMICABLE_CONFIG]");

  std::string sigma_n;
  auto* sigma = app.add_subcommand("sigma", "Sum of the proper divisors of n");
  sigma->add_option("n", sigma_n, "Positive integer")->required();

  std::string pair_m;
  std::string pair_n;
  auto* verify = app.add_subcommand("verify-pair", "Check whether (m, n) is an amicable pair");
  verify->add_option("m", pair_m)->required();
  verify->add_option("n", pair_n)->required();

  std::string table_which;
  auto* table = app.add_subcommand("table", "Reproduce table 1, 2, 3 or 4");
  table->add_option("which", table_which, "1, 2, 3 or 4")->required();

  std::string rule_id;
  std::string rule_n;
  std::string rule_range;
  auto* rule = app.add_subcommand(
      "rule", "Evaluate a rule: thabit, ibn-sina, baghdadi-first, kashi, baghdadi-general");
  rule->add_option("id", rule_id, "Rule name or alias")->required();
  rule->add_option("--n", rule_n, "Single index");
  rule->add_option("--range", rule_range, "Index range a..b (inclusive)");

  std::string scan_which;
  Index scan_max_n = 16;
  auto* scan = app.add_subcommand("scan", "Scan 1 (Mersenne catalog) or 2 (Fermat indices)");
  scan->add_option("which", scan_which, "1 or 2")->required();
  scan->add_option("--max-n", scan_max_n, "Largest n = 2^k for scan 2")->capture_default_str();

  std::vector<const char*> argv;
  argv.push_back("amicable");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    std::map<std::string, std::string> from_flags;
    for (const auto& spec : specs) {
      if (options[spec.name]->count() == 0) continue;
      from_flags[spec.name] = spec.is_flag ? (flag_values[spec.name] ? "true" : "false")
                                           : option_values[spec.name];
    }
    Engine engine(resolve_settings(specs, from_flags, env, config_path));

    if (sigma->parsed()) return cmd_sigma(engine.settings, sigma_n, out);
    if (verify->parsed()) return cmd_verify_pair(engine.settings, pair_m, pair_n, out);
    if (table->parsed()) return cmd_table(engine, table_which, out, err);
    if (rule->parsed()) return cmd_rule(engine.settings, rule_id, rule_n, rule_range, out);
    if (scan->parsed()) {
      if (scan_which == "1") return run_scan1(engine, out, err);
      if (scan_which == "2") {
        if (scan_max_n < 2 || scan_max_n > 4096) throw UsageError("--max-n must lie in [2, 4096]");
        return run_scan2(engine, scan_max_n, out, err);
      }
      throw UsageError("scan must be 1 or 2");
    }
    throw UsageError("no command given");
  } catch (const UsageError& e) {
    err << "amicable: error: " << e.what() << '\n';
    return kUsage;
  } catch (const search::CatalogError& e) {
    err << "amicable: catalog error: " << e.what() << '\n';
    return kUsage;
  } catch (const search::CacheIoError& e) {
    err << "amicable: cache error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "amicable: error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    // load_catalog reports an unreadable file this way.
    err << "amicable: error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "amicable: internal error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace amicable::cli
