#include "amicable/catalog.hpp"

#include <fstream>
#include <sstream>

#include "amicable/natural.hpp"
#include "amicable/primality.hpp"

namespace amicable::search {

namespace {

constexpr std::uint64_t kReproveLimit = 4423;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

}  // namespace

MersenneCatalog MersenneCatalog::bundled() {
  std::string text;
  for (std::uint64_t n : kPublishedScanIndices) text += std::to_string(n + 1) + "\n";
  return parse_catalog(text, "bundled");
}

MersenneCatalog parse_catalog(std::string_view text, std::string_view source_name) {
  MersenneCatalog catalog;
  catalog.source_ = std::string(source_name);
  std::vector<std::size_t> line_of;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    std::uint64_t p = 0;
    try {
      const Natural value = Natural::from_decimal(line);
      if (!value.fits_u64()) throw DomainError("too large");
      p = value.to_u64();
    } catch (const DomainError&) {
      throw CatalogError(where(source_name, line_no) + "malformed exponent '" + std::string(line) +
                             "'",
                         line_no);
    }
    if (!primality::trial_division(p).proven_prime()) {
      throw CatalogError(where(source_name, line_no) + "exponent " + std::to_string(p) +
                             " is not prime",
                         line_no);
    }
    if (!catalog.exponents_.empty() && p <= catalog.exponents_.back()) {
      throw CatalogError(where(source_name, line_no) + "exponent " + std::to_string(p) +
                             " is not greater than the previous entry",
                         line_no);
    }
    if (p <= kReproveLimit && !primality::lucas_lehmer(p).proven_prime()) {
      throw CatalogError(where(source_name, line_no) + "2^" + std::to_string(p) +
                             " - 1 is not a Mersenne prime",
                         line_no);
    }
    catalog.exponents_.push_back(p);
    line_of.push_back(line_no);
  }

  if (catalog.exponents_.size() != kKnownMersenneCount) {
    throw CatalogError(std::string(source_name) + ": expected " +
                           std::to_string(kKnownMersenneCount) + " exponents, found " +
                           std::to_string(catalog.exponents_.size()),
                       0);
  }
  for (std::size_t i = 0; i < kKnownMersenneCount; ++i) {
    if (catalog.exponents_[i] - 1 != kPublishedScanIndices[i]) {
      throw CatalogError(where(source_name, line_of[i]) + "exponent " +
                             std::to_string(catalog.exponents_[i]) +
                             " gives n = " + std::to_string(catalog.exponents_[i] - 1) +
                             ", published list has n = " +
                             std::to_string(kPublishedScanIndices[i]),
                         line_of[i]);
    }
  }
  return catalog;
}

MersenneCatalog load_catalog(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open catalog file '" + source.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_catalog(buffer.str(), source.string());
}

}  // namespace amicable::search
