#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace amicable::search {

/// Malformed or inconsistent catalog input. line() is 1-based, 0 when the
/// problem concerns the file as a whole.
class CatalogError : public std::runtime_error {
 public:
  CatalogError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline constexpr std::size_t kKnownMersenneCount = 51;

/// n = p - 1 for each known Mersenne exponent p, in the published order.
inline constexpr std::array<std::uint64_t, kKnownMersenneCount> kPublishedScanIndices = {
    1,        2,        4,        6,        12,       16,       18,       30,       60,
    88,       106,      126,      520,      606,      1278,     2202,     2280,     3216,
    4252,     4422,     9688,     9940,     11212,    19936,    21700,    23208,    44496,
    86242,    110502,   132048,   216090,   756838,   859432,   1257786,  1398268,  2976220,
    3021376,  6972592,  13466916, 20996010, 24036582, 25964950, 30402456, 32582656, 37156666,
    42643800, 43112608, 57885160, 74207280, 77232916, 82589932};

/// Exponents of the known Mersenne primes, validated on construction.
class MersenneCatalog {
 public:
  /// The list compiled into the library (same content as the bundled file).
  static MersenneCatalog bundled();

  std::span<const std::uint64_t> exponents() const noexcept { return exponents_; }
  std::size_t size() const noexcept { return exponents_.size(); }
  /// Where the list came from: a file path or "bundled".
  const std::string& source() const noexcept { return source_; }

 private:
  friend MersenneCatalog parse_catalog(std::string_view, std::string_view);
  std::vector<std::uint64_t> exponents_;
  std::string source_;
};

/// Parses the text format: one decimal exponent per line, '#' starts a
/// comment, blank lines ignored. Checks that exponents are prime and strictly
/// increasing, re-proves 2^p - 1 by Lucas-Lehmer for p <= 4423, requires
/// exactly 51 entries, and cross-checks p - 1 against kPublishedScanIndices.
MersenneCatalog parse_catalog(std::string_view text, std::string_view source_name);

MersenneCatalog load_catalog(const std::filesystem::path& source);

}  // namespace amicable::search
