#include "amicable/report.hpp"

#include <array>
#include <sstream>

#include "json.hpp"

namespace amicable::report {

namespace {

using nlohmann::json;
using primality::FormDescriptor;
using primality::Verdict;
using sequences::Index;

json natural_json(const Natural& v) { return v.to_string(); }

Natural natural_from(const json& j) { return Natural::from_decimal(j.get<std::string>()); }

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json verdict_json(const Verdict& v) {
  return json{{"status", std::string(primality::to_string(v.status))},
              {"method", v.method},
              {"witness", v.witness ? natural_json(*v.witness) : json(nullptr)},
              {"rounds", optional_json(v.rounds)},
              {"reason", optional_json(v.reason)}};
}

Verdict verdict_from(const json& j) {
  Verdict v;
  v.status = primality::status_from_string(j.at("status").get<std::string>());
  v.method = j.at("method").get<std::string>();
  if (!j.at("witness").is_null()) v.witness = natural_from(j.at("witness"));
  if (!j.at("rounds").is_null()) v.rounds = j.at("rounds").get<unsigned>();
  if (!j.at("reason").is_null()) v.reason = j.at("reason").get<std::string>();
  return v;
}

json optional_verdict_json(const std::optional<Verdict>& v) {
  return v ? verdict_json(*v) : json(nullptr);
}

std::string tri_string(search::Tri t) { return std::string(search::to_string(t)); }

json optional_tri_json(const std::optional<search::Tri>& t) {
  return t ? json(tri_string(*t)) : json(nullptr);
}

std::optional<search::Tri> optional_tri_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return search::tri_from_string(j.get<std::string>());
}

std::optional<std::int64_t> optional_i64_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::int64_t>();
}

json parse_object(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw DomainError("malformed JSON object");
  return j;
}

/// Runs `build`, turning JSON access failures into DomainError.
template <typename Build>
auto guarded(std::string_view what, Build build) {
  try {
    return build();
  } catch (const json::exception& e) {
    throw DomainError(std::string(what) + ": " + e.what());
  }
}

std::string escape_markdown_cell(std::string_view cell) {
  std::string out;
  for (char ch : cell) {
    if (ch == '|') out += "\\|";
    else if (ch == '\n') out += ' ';
    else out += ch;
  }
  return out.empty() ? std::string(" ") : out;
}

std::string tri_cell(search::Tri t) { return tri_string(t); }

search::Tri verdict_tri(const Verdict& v) {
  if (v.proven_prime()) return search::Tri::True;
  if (v.composite()) return search::Tri::False;
  return search::Tri::Unresolved;
}

std::string number_cell(const Natural& v, const DisplayOptions& display, std::string_view sym) {
  return display_number(v, display, sym);
}

std::string index_symbol(std::string_view name, Index n) {
  return std::string(name) + ", n = " + std::to_string(n);
}

std::map<std::string, std::string> scan_policy_echo(const search::ScanOptions& options) {
  auto echo = policy_echo(options.policy);
  echo["mersenne_reprove_max_exponent"] = std::to_string(options.mersenne_reprove_max_exponent);
  return echo;
}

std::map<std::string, std::string> summary_map(const search::ScanSummary& s) {
  return {{"rows", std::to_string(s.rows)},
          {"reproduced", std::to_string(s.reproduced)},
          {"consistent", std::to_string(s.consistent)},
          {"unresolved", std::to_string(s.unresolved)},
          {"disagreements", std::to_string(s.disagreements)},
          {"counterexamples", std::to_string(s.counterexamples)},
          {"combined_true", std::to_string(s.combined_true)}};
}

std::string condition_summary(const rules::RuleReport& r) {
  std::string out;
  for (const auto& c : r.conditions) {
    if (!out.empty()) out += "; ";
    out += c.label + " " + verdict_cell(c.verdict);
  }
  return out;
}

constexpr std::array<Index, 4> kTableIndices = {2, 3, 4, 7};

}  // namespace

std::string_view to_string(Format f) {
  switch (f) {
    case Format::Markdown: return "md";
    case Format::Csv: return "csv";
    case Format::Json: return "json";
  }
  return "md";
}

Format format_from_string(std::string_view token) {
  if (token == "md" || token == "markdown") return Format::Markdown;
  if (token == "csv") return Format::Csv;
  if (token == "json") return Format::Json;
  throw DomainError("unknown format '" + std::string(token) + "' (expected md, csv or json)");
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string display_number(const Natural& value, const DisplayOptions& display,
                           std::string_view symbolic) {
  const std::size_t digits = value.decimal_digits();
  if (display.full_decimal || digits <= display.max_digits || symbolic.empty()) {
    return value.to_string();
  }
  return std::string(symbolic) + " [" + std::to_string(digits) + " digits]";
}

std::string verdict_cell(const Verdict& v) {
  std::string head;
  switch (v.status) {
    case primality::Status::ProvenPrime: head = "prime"; break;
    case primality::Status::Composite: head = "composite"; break;
    case primality::Status::ProbablePrime: head = "probable-prime"; break;
    case primality::Status::Unresolved: head = "unresolved"; break;
  }
  if (v.witness) head += ": " + v.witness->to_string();
  std::string detail = v.method;
  if (v.rounds) detail += ", " + std::to_string(*v.rounds) + " rounds";
  return head + " (" + detail + ")";
}

// ---------------------------------------------------------------------------
// Record serialization

std::string to_json(const Verdict& v) { return verdict_json(v).dump(); }

Verdict verdict_from_json(std::string_view text) {
  return guarded("verdict", [&] { return verdict_from(parse_object(text)); });
}

std::string to_json(const search::ScanRecord& r) {
  return json{{"type", "scan1-row"},
              {"n", r.n},
              {"exponent", r.exponent},
              {"m_next", verdict_json(r.m_next)},
              {"a", verdict_json(r.a)},
              {"b", verdict_json(r.b)},
              {"c", optional_verdict_json(r.c)},
              {"combined_ab", tri_string(r.combined_ab)},
              {"counterexample_candidate", r.counterexample_candidate},
              {"published_ab", tri_string(r.published_ab)},
              {"resolution", std::string(search::to_string(r.resolution))},
              {"timestamp", optional_json(r.timestamp)}}
      .dump();
}

search::ScanRecord scan_record_from_json(std::string_view text) {
  return guarded("scan record", [&] {
    const json j = parse_object(text);
    search::ScanRecord r;
    r.n = j.at("n").get<Index>();
    r.exponent = j.at("exponent").get<std::uint64_t>();
    r.m_next = verdict_from(j.at("m_next"));
    r.a = verdict_from(j.at("a"));
    r.b = verdict_from(j.at("b"));
    if (!j.at("c").is_null()) r.c = verdict_from(j.at("c"));
    r.combined_ab = search::tri_from_string(j.at("combined_ab").get<std::string>());
    r.counterexample_candidate = j.at("counterexample_candidate").get<bool>();
    r.published_ab = search::tri_from_string(j.at("published_ab").get<std::string>());
    r.resolution = search::resolution_from_string(j.at("resolution").get<std::string>());
    r.timestamp = optional_i64_from(j.at("timestamp"));
    return r;
  });
}

std::string to_json(const search::FermatScanRecord& r) {
  return json{{"type", "scan2-row"},
              {"n", r.n},
              {"alpha", verdict_json(r.alpha)},
              {"beta", verdict_json(r.beta)},
              {"gamma", verdict_json(r.gamma)},
              {"alpha_prime", tri_string(r.alpha_prime)},
              {"beta_gamma", tri_string(r.beta_gamma)},
              {"published_alpha", optional_tri_json(r.published_alpha)},
              {"published_beta_gamma", optional_tri_json(r.published_beta_gamma)},
              {"resolution", std::string(search::to_string(r.resolution))},
              {"timestamp", optional_json(r.timestamp)}}
      .dump();
}

search::FermatScanRecord fermat_record_from_json(std::string_view text) {
  return guarded("fermat scan record", [&] {
    const json j = parse_object(text);
    search::FermatScanRecord r;
    r.n = j.at("n").get<Index>();
    r.alpha = verdict_from(j.at("alpha"));
    r.beta = verdict_from(j.at("beta"));
    r.gamma = verdict_from(j.at("gamma"));
    r.alpha_prime = search::tri_from_string(j.at("alpha_prime").get<std::string>());
    r.beta_gamma = search::tri_from_string(j.at("beta_gamma").get<std::string>());
    r.published_alpha = optional_tri_from(j.at("published_alpha"));
    r.published_beta_gamma = optional_tri_from(j.at("published_beta_gamma"));
    r.resolution = search::resolution_from_string(j.at("resolution").get<std::string>());
    r.timestamp = optional_i64_from(j.at("timestamp"));
    return r;
  });
}

std::string to_json(const rules::RuleReport& r) {
  json conditions = json::array();
  for (const auto& c : r.conditions) {
    conditions.push_back(
        json{{"label", c.label}, {"form", c.form.key()}, {"verdict", verdict_json(c.verdict)}});
  }
  return json{{"type", "rule-report"},
              {"rule", std::string(rules::to_string(r.rule))},
              {"n", r.n},
              {"conditions", conditions},
              {"pair", r.pair ? json::array({natural_json(r.pair->first),
                                             natural_json(r.pair->second)})
                              : json(nullptr)},
              {"status", std::string(rules::to_string(r.status))},
              {"sigma_forward", r.sigma_forward ? natural_json(*r.sigma_forward) : json(nullptr)},
              {"sigma_backward",
               r.sigma_backward ? natural_json(*r.sigma_backward) : json(nullptr)},
              {"father", r.father},
              {"counterexample", r.counterexample},
              {"notes", r.notes}}
      .dump();
}

rules::RuleReport rule_report_from_json(std::string_view text) {
  return guarded("rule report", [&] {
    const json j = parse_object(text);
    rules::RuleReport r;
    r.rule = rules::rule_from_string(j.at("rule").get<std::string>());
    r.n = j.at("n").get<Index>();
    for (const auto& c : j.at("conditions")) {
      r.conditions.push_back({c.at("label").get<std::string>(),
                              FormDescriptor::from_key(c.at("form").get<std::string>()),
                              verdict_from(c.at("verdict"))});
    }
    if (!j.at("pair").is_null()) {
      r.pair = std::make_pair(natural_from(j.at("pair").at(0)), natural_from(j.at("pair").at(1)));
    }
    r.status = rules::pair_status_from_string(j.at("status").get<std::string>());
    if (!j.at("sigma_forward").is_null()) r.sigma_forward = natural_from(j.at("sigma_forward"));
    if (!j.at("sigma_backward").is_null()) r.sigma_backward = natural_from(j.at("sigma_backward"));
    r.father = j.at("father").get<bool>();
    r.counterexample = j.at("counterexample").get<bool>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  });
}

std::string to_json(const rules::AmicabilityVerdict& v) {
  return json{{"type", "amicability"},
              {"m", natural_json(v.m)},
              {"n", natural_json(v.n)},
              {"sigma_m", natural_json(v.sigma_m)},
              {"sigma_n", natural_json(v.sigma_n)},
              {"amicable", v.amicable},
              {"father_m_of_n", v.father_m_of_n},
              {"father_n_of_m", v.father_n_of_m},
              {"self_pair", v.self_pair}}
      .dump();
}

rules::AmicabilityVerdict amicability_from_json(std::string_view text) {
  return guarded("amicability verdict", [&] {
    const json j = parse_object(text);
    rules::AmicabilityVerdict v;
    v.m = natural_from(j.at("m"));
    v.n = natural_from(j.at("n"));
    v.sigma_m = natural_from(j.at("sigma_m"));
    v.sigma_n = natural_from(j.at("sigma_n"));
    v.amicable = j.at("amicable").get<bool>();
    v.father_m_of_n = j.at("father_m_of_n").get<bool>();
    v.father_n_of_m = j.at("father_n_of_m").get<bool>();
    v.self_pair = j.at("self_pair").get<bool>();
    return v;
  });
}

std::string to_json(const search::ScanSummary& s) {
  json j = json::object();
  for (const auto& [k, v] : summary_map(s)) j[k] = std::stoull(v);
  return j.dump();
}

// ---------------------------------------------------------------------------
// Rendering

std::string render(const ReportDocument& doc, Format format) {
  switch (format) {
    case Format::Markdown: return render_markdown(doc);
    case Format::Csv: return render_csv(doc);
    case Format::Json: return render_json(doc);
  }
  return render_markdown(doc);
}

std::string render_markdown(const ReportDocument& doc) {
  std::ostringstream out;
  out << "## " << doc.title << "\n\n";
  if (doc.generated_at) out << "Generated at " << *doc.generated_at << " (Unix seconds)\n\n";
  if (!doc.columns.empty()) {
    out << '|';
    for (const auto& c : doc.columns) out << ' ' << escape_markdown_cell(c) << " |";
    out << "\n|";
    for (std::size_t i = 0; i < doc.columns.size(); ++i) out << " --- |";
    out << '\n';
    for (const auto& row : doc.rows) {
      out << '|';
      for (const auto& cell : row) out << ' ' << escape_markdown_cell(cell) << " |";
      out << '\n';
    }
    out << '\n';
  }
  if (!doc.summary.empty()) {
    out << "Summary:";
    for (const auto& [k, v] : doc.summary) out << ' ' << k << '=' << v;
    out << "\n\n";
  }
  for (const auto& note : doc.notes) out << "- " << note << '\n';
  if (!doc.notes.empty()) out << '\n';
  if (!doc.policy.empty()) {
    out << "Policy:";
    for (const auto& [k, v] : doc.policy) out << ' ' << k << '=' << v;
    out << '\n';
  }
  return out.str();
}

std::string render_csv(const ReportDocument& doc) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  line(doc.columns);
  for (const auto& row : doc.rows) line(row);
  return out;
}

std::string render_json(const ReportDocument& doc) {
  json records = json::array();
  for (const auto& r : doc.records) records.push_back(json::parse(r));
  const json j{{"kind", doc.kind},
               {"title", doc.title},
               {"generated_at", optional_json(doc.generated_at)},
               {"policy", doc.policy},
               {"columns", doc.columns},
               {"rows", doc.rows},
               {"records", records},
               {"summary", doc.summary},
               {"notes", doc.notes}};
  return j.dump(2) + '\n';
}

ReportDocument parse_json_report(std::string_view text) {
  return guarded("report", [&] {
    const json j = parse_object(text);
    ReportDocument doc;
    doc.kind = j.at("kind").get<std::string>();
    doc.title = j.at("title").get<std::string>();
    doc.generated_at = optional_i64_from(j.at("generated_at"));
    doc.policy = j.at("policy").get<std::map<std::string, std::string>>();
    doc.columns = j.at("columns").get<std::vector<std::string>>();
    doc.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
    for (const auto& r : j.at("records")) doc.records.push_back(r.dump());
    doc.summary = j.at("summary").get<std::map<std::string, std::string>>();
    doc.notes = j.at("notes").get<std::vector<std::string>>();
    return doc;
  });
}

// ---------------------------------------------------------------------------
// Builders

std::map<std::string, std::string> policy_echo(const primality::Policy& policy) {
  return {{"accept_probable", policy.accept_probable ? "true" : "false"},
          {"max_full_test_bits", std::to_string(policy.max_full_test_bits)},
          {"random_rounds", std::to_string(policy.random_rounds)},
          {"seed", std::to_string(policy.seed)},
          {"sieve_bound", std::to_string(policy.sieve_bound)},
          {"time_budget_ms", std::to_string(policy.time_budget.count())},
          {"trial_division_limit", std::to_string(policy.trial_division_limit)}};
}

ReportDocument table1(const primality::Policy& policy, const DisplayOptions& display) {
  ReportDocument doc;
  doc.kind = "table1";
  doc.title = "Thabit rule: amicable pairs for n = 2, 3, 4, 7";
  doc.policy = policy_echo(policy);
  doc.columns = {"n", "a_n", "b_n", "c_n", "r_n", "s_n", "Amicable"};
  for (Index n : kTableIndices) {
    const auto t = sequences::thabit_triple(n);
    const auto report = rules::thabit_rule(n, policy);
    doc.rows.push_back({std::to_string(n), number_cell(t.a, display, index_symbol("a_n", n)),
                        number_cell(t.b, display, index_symbol("b_n", n)),
                        number_cell(t.c, display, index_symbol("c_n", n)),
                        number_cell(t.r, display, index_symbol("r_n", n)),
                        number_cell(t.s, display, index_symbol("s_n", n)),
                        report.status == rules::PairStatus::Amicable ? "Amicable" : "None"});
    doc.records.push_back(to_json(report));
  }
  return doc;
}

ReportDocument table2(const primality::Policy& policy, const DisplayOptions& display) {
  ReportDocument doc;
  doc.kind = "table2";
  doc.title = "Ibn Sina rule: conditions a_n, b_n, m_{n+1} prime for n = 2, 3, 4, 7";
  doc.policy = policy_echo(policy);
  doc.columns = {"n", "a_n", "b_n", "c_n", "m_{n+1}", "r_n", "s_n", "Conditions met", "Amicable"};
  for (Index n : kTableIndices) {
    const auto t = sequences::thabit_triple(n);
    const auto report = rules::conjecture1_rule(n, policy);
    const bool met = report.status == rules::PairStatus::Amicable ||
                     report.status == rules::PairStatus::NotAmicable;
    const std::string met_cell = report.status == rules::PairStatus::Unresolved ? "unresolved"
                                 : met                                          ? "T"
                                                                                : "F";
    doc.rows.push_back({std::to_string(n), number_cell(t.a, display, index_symbol("a_n", n)),
                        number_cell(t.b, display, index_symbol("b_n", n)),
                        number_cell(t.c, display, index_symbol("c_n", n)),
                        number_cell(t.m_next, display, index_symbol("m_{n+1}", n)),
                        number_cell(t.r, display, index_symbol("r_n", n)),
                        number_cell(t.s, display, index_symbol("s_n", n)), met_cell,
                        report.status == rules::PairStatus::Amicable ? "Amicable" : "None"});
    doc.records.push_back(to_json(report));
  }
  return doc;
}

ReportDocument table3(const std::vector<search::ScanRecord>& records,
                      const search::ScanOptions& options, std::string_view catalog_source) {
  ReportDocument doc;
  doc.kind = "scan1";
  doc.title = "Known Mersenne primes m_{n+1}: search for a_n, b_n, m_{n+1} prime with c_n not prime";
  doc.policy = scan_policy_echo(options);
  doc.policy["catalog"] = std::string(catalog_source);
  doc.columns = {"n",   "m_{n+1} is Prime", "a_n ∧ b_n are Prime", "a_n", "b_n", "c_n",
                 "Counterexample", "Resolution"};
  for (const auto& r : records) {
    doc.rows.push_back({std::to_string(r.n), tri_cell(verdict_tri(r.m_next)),
                        tri_cell(r.combined_ab), verdict_cell(r.a), verdict_cell(r.b),
                        r.c ? verdict_cell(*r.c) : std::string("-"),
                        r.counterexample_candidate ? "YES" : "no",
                        std::string(search::to_string(r.resolution))});
    doc.records.push_back(to_json(r));
  }
  const auto summary = search::summarize(records);
  doc.summary = summary_map(summary);
  if (summary.counterexamples == 0) {
    doc.notes.push_back("no counterexample: no row has a_n, b_n, m_{n+1} prime with c_n composite");
  } else {
    doc.notes.push_back("COUNTEREXAMPLE FOUND in " + std::to_string(summary.counterexamples) +
                        " row(s)");
  }
  if (summary.disagreements > 0) {
    doc.notes.push_back("ALERT: " + std::to_string(summary.disagreements) +
                        " decided row(s) disagree with the published table");
  }
  if (summary.unresolved > 0) {
    doc.notes.push_back(std::to_string(summary.unresolved) +
                        " row(s) unresolved at this budget (no small factor, above the "
                        "full-test cap)");
  }
  return doc;
}

ReportDocument table4(const std::vector<search::FermatScanRecord>& records,
                      const search::ScanOptions& options) {
  ReportDocument doc;
  doc.kind = "scan2";
  doc.title = "Primality of alpha_n, beta_n, gamma_n over n = 2^k";
  doc.policy = scan_policy_echo(options);
  doc.columns = {"n", "α_n is Prime", "β_n ∧ γ_n are Prime", "alpha_n", "beta_n", "gamma_n",
                 "Resolution"};
  for (const auto& r : records) {
    doc.rows.push_back({std::to_string(r.n), tri_cell(r.alpha_prime), tri_cell(r.beta_gamma),
                        verdict_cell(r.alpha), verdict_cell(r.beta), verdict_cell(r.gamma),
                        std::string(search::to_string(r.resolution))});
    doc.records.push_back(to_json(r));
  }
  const auto summary = search::summarize(records);
  doc.summary = summary_map(summary);
  if (summary.disagreements > 0) {
    doc.notes.push_back("ALERT: " + std::to_string(summary.disagreements) +
                        " decided row(s) disagree with the published table");
  }
  return doc;
}

ReportDocument rule_document(const std::vector<rules::RuleReport>& reports,
                             const primality::Policy& policy, const DisplayOptions& display) {
  ReportDocument doc;
  doc.kind = "rule";
  doc.title = reports.empty() ? std::string("Rule evaluation")
                              : "Rule " + std::string(rules::to_string(reports.front().rule));
  doc.policy = policy_echo(policy);
  doc.columns = {"n", "Conditions", "Pair", "Status", "sigma(first)", "sigma(second)",
                 "Father", "Counterexample", "Notes"};
  std::size_t counterexamples = 0;
  std::size_t amicable = 0;
  std::size_t unresolved = 0;
  for (const auto& r : reports) {
    std::string pair = "-";
    if (r.pair) {
      pair = "(" + number_cell(r.pair->first, display, index_symbol("first", r.n)) + ", " +
             number_cell(r.pair->second, display, index_symbol("second", r.n)) + ")";
    }
    auto optional_number = [&](const std::optional<Natural>& v, std::string_view name) {
      return v ? number_cell(*v, display, index_symbol(name, r.n)) : std::string("-");
    };
    std::string notes;
    for (const auto& note : r.notes) notes += (notes.empty() ? "" : "; ") + note;
    doc.rows.push_back({std::to_string(r.n), condition_summary(r), pair,
                        std::string(rules::to_string(r.status)),
                        optional_number(r.sigma_forward, "sigma(first)"),
                        optional_number(r.sigma_backward, "sigma(second)"),
                        r.father ? "yes" : "no", r.counterexample ? "YES" : "no", notes});
    doc.records.push_back(to_json(r));
    counterexamples += r.counterexample ? 1 : 0;
    amicable += r.status == rules::PairStatus::Amicable ? 1 : 0;
    unresolved += r.status == rules::PairStatus::Unresolved ? 1 : 0;
  }
  doc.summary = {{"rows", std::to_string(reports.size())},
                 {"amicable", std::to_string(amicable)},
                 {"counterexamples", std::to_string(counterexamples)},
                 {"unresolved", std::to_string(unresolved)}};
  return doc;
}

ReportDocument pair_document(const rules::AmicabilityVerdict& v, const DisplayOptions& display) {
  ReportDocument doc;
  doc.kind = "verify-pair";
  doc.title = "Amicability of (" + v.m.to_string() + ", " + v.n.to_string() + ")";
  doc.columns = {"m", "n", "sigma(m)", "sigma(n)", "Verdict", "Relation"};
  std::string relation;
  if (v.self_pair && v.father_m_of_n) {
    relation = v.m.to_string() + " is perfect";
  } else if (v.amicable) {
    relation = "sigma(m) = n and sigma(n) = m";
  } else if (v.father_m_of_n) {
    relation = v.m.to_string() + " is a father of " + v.n.to_string();
  } else if (v.father_n_of_m) {
    relation = v.n.to_string() + " is a father of " + v.m.to_string();
  } else {
    relation = "none";
  }
  doc.rows.push_back({number_cell(v.m, display, "m"), number_cell(v.n, display, "n"),
                      number_cell(v.sigma_m, display, "sigma(m)"),
                      number_cell(v.sigma_n, display, "sigma(n)"),
                      v.amicable ? "amicable" : "not amicable", relation});
  doc.records.push_back(to_json(v));
  if (v.self_pair) doc.notes.push_back("an amicable pair needs distinct members");
  return doc;
}

}  // namespace amicable::report
