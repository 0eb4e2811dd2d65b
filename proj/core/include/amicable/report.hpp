#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amicable/natural.hpp"
#include "amicable/primality.hpp"
#include "amicable/rules.hpp"
#include "amicable/search.hpp"

namespace amicable::report {

enum class Format { Markdown, Csv, Json };

std::string_view to_string(Format f);
/// Accepts "md", "markdown", "csv", "json"; throws DomainError otherwise.
Format format_from_string(std::string_view token);

struct DisplayOptions {
  /// Numbers with more digits than this are shown symbolically with a digit count.
  std::size_t max_digits = 80;
  bool full_decimal = false;
};

/// A rendered run: a table of display strings plus the typed records it was
/// built from (each a canonical compact JSON object).
///
/// Parameters that cannot change any verdict (cache path, thread count) are
/// deliberately absent from `policy`, so the document depends only on inputs
/// that determine the result.
struct ReportDocument {
  std::string kind;  // "table1", "scan1", "rule", "verify-pair", ...
  std::string title;
  std::optional<std::int64_t> generated_at;
  std::map<std::string, std::string> policy;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> records;
  std::map<std::string, std::string> summary;
  std::vector<std::string> notes;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

std::string render(const ReportDocument& doc, Format format);
std::string render_markdown(const ReportDocument& doc);
/// The table alone, RFC 4180 quoting, CRLF-free.
std::string render_csv(const ReportDocument& doc);
/// Pretty-printed, keys sorted, trailing newline.
std::string render_json(const ReportDocument& doc);
/// Inverse of render_json; throws DomainError on malformed input.
ReportDocument parse_json_report(std::string_view text);

/// One RFC 4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view field);

/// Decimal when short enough (or full_decimal), else `symbolic` followed by
/// the exact digit count, e.g. "3*2^4421 - 1 [1332 digits]".
std::string display_number(const Natural& value, const DisplayOptions& display,
                           std::string_view symbolic);

/// Compact cell text such as "composite: 5 (sieve)" or "prime (llr)".
std::string verdict_cell(const primality::Verdict& v);

// Typed record serialization. Natural values are decimal strings.
std::string to_json(const primality::Verdict& v);
primality::Verdict verdict_from_json(std::string_view text);
std::string to_json(const search::ScanRecord& r);
search::ScanRecord scan_record_from_json(std::string_view text);
std::string to_json(const search::FermatScanRecord& r);
search::FermatScanRecord fermat_record_from_json(std::string_view text);
std::string to_json(const rules::RuleReport& r);
rules::RuleReport rule_report_from_json(std::string_view text);
std::string to_json(const rules::AmicabilityVerdict& v);
rules::AmicabilityVerdict amicability_from_json(std::string_view text);
std::string to_json(const search::ScanSummary& s);

/// Every effective primality parameter, as strings.
std::map<std::string, std::string> policy_echo(const primality::Policy& policy);

/// Thabit rule at n = 2, 3, 4, 7: a, b, c, r, s and whether the pair is amicable.
ReportDocument table1(const primality::Policy& policy, const DisplayOptions& display = {});
/// The ibn-sina rule at n = 2, 3, 4, 7: a, b, c, m_{n+1}, r, s and whether its conditions hold.
ReportDocument table2(const primality::Policy& policy, const DisplayOptions& display = {});
ReportDocument table3(const std::vector<search::ScanRecord>& records,
                      const search::ScanOptions& options, std::string_view catalog_source);
ReportDocument table4(const std::vector<search::FermatScanRecord>& records,
                      const search::ScanOptions& options);
ReportDocument rule_document(const std::vector<rules::RuleReport>& reports,
                             const primality::Policy& policy, const DisplayOptions& display = {});
ReportDocument pair_document(const rules::AmicabilityVerdict& verdict,
                             const DisplayOptions& display = {});

}  // namespace amicable::report
