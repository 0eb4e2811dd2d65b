#include "amicable/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace amicable::search {

namespace {

using primality::FormDescriptor;
using primality::Status;
using primality::Verdict;

std::int64_t now_seconds(const ScanOptions& options) {
  if (options.clock) return options.clock();
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

template <typename Compute>
Verdict memoized(const FormDescriptor& form, const ScanOptions& options, Compute compute) {
  if (options.cache != nullptr) {
    if (auto hit = options.cache->get(form)) return hit->verdict;
  }
  Verdict v = compute();
  if (options.cache != nullptr && v.status != Status::Unresolved) {
    options.cache->put(form, v, now_seconds(options));
  }
  return v;
}

Tri prime_tri(const Verdict& v, bool accept_probable) {
  if (v.composite()) return Tri::False;
  if (v.counts_as_prime(accept_probable)) return Tri::True;
  return Tri::Unresolved;
}

Tri conjunction(Tri x, Tri y) {
  if (x == Tri::False || y == Tri::False) return Tri::False;
  if (x == Tri::True && y == Tri::True) return Tri::True;
  return Tri::Unresolved;
}

Resolution resolve(Tri computed, std::optional<Tri> published, bool within_cap) {
  if (computed == Tri::Unresolved) return Resolution::Unresolved;
  if (published && computed != *published) return Resolution::Disagrees;
  return within_cap ? Resolution::Reproduced : Resolution::Consistent;
}

/// Runs task(i) for i in [0, count) on `jobs` threads; rethrows the first failure.
template <typename Task>
void parallel_for(std::size_t count, unsigned jobs, Task task) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

ScanRecord scan_row(std::uint64_t p, const ScanOptions& options) {
  const primality::Policy& policy = options.policy;
  ScanRecord row;
  row.exponent = p;
  row.n = p - 1;
  const Index n = row.n;

  if (p <= options.mersenne_reprove_max_exponent) {
    row.m_next = memoized(FormDescriptor::mersenne(p), options,
                          [&] { return primality::lucas_lehmer(p, policy); });
  } else {
    row.m_next = Verdict::proven("catalog");
  }

  row.a = cascade_riesel(3, n - 1, options);
  row.b = cascade_riesel(3, n, options);
  row.combined_ab = conjunction(prime_tri(row.a, policy.accept_probable),
                                prime_tri(row.b, policy.accept_probable));

  if (row.combined_ab == Tri::True && row.m_next.counts_as_prime(policy.accept_probable)) {
    row.c = cascade_riesel(9, 2 * n - 1, options);
    row.counterexample_candidate = n > 1 && row.c->composite();
  }

  row.published_ab = published_table3_ab(n);
  const bool within_cap =
      FormDescriptor::k_two_n_minus_1(3, n).bit_length_estimate() <= policy.max_full_test_bits;
  row.resolution = resolve(row.combined_ab, row.published_ab, within_cap);
  if (options.record_timestamps) row.timestamp = now_seconds(options);
  return row;
}

std::optional<Tri> published_table4(Index n, bool beta_gamma) {
  switch (n) {
    case 2: return Tri::True;
    case 4:
    case 8:
    case 16: return beta_gamma ? Tri::False : Tri::True;
    default: return std::nullopt;
  }
}

FermatScanRecord fermat_row(std::uint64_t k, const ScanOptions& options) {
  const primality::Policy& policy = options.policy;
  FermatScanRecord row;
  row.n = Index{1} << k;
  const Index n = row.n;

  row.alpha = memoized(FormDescriptor::fermat(k), options,
                       [&] { return primality::pepin(k, policy); });
  const auto beta = FormDescriptor::generic(Natural::pow2(n + 1) + 3);
  const auto gamma = FormDescriptor::generic(Natural::pow2(n) + 3);
  row.beta = memoized(beta, options, [&] { return primality::is_prime(beta, policy); });
  row.gamma = memoized(gamma, options, [&] { return primality::is_prime(gamma, policy); });

  row.alpha_prime = prime_tri(row.alpha, policy.accept_probable);
  row.beta_gamma = conjunction(prime_tri(row.beta, policy.accept_probable),
                               prime_tri(row.gamma, policy.accept_probable));
  row.published_alpha = published_table4(n, false);
  row.published_beta_gamma = published_table4(n, true);

  const bool within_cap = beta.bit_length_estimate() <= policy.max_full_test_bits;
  const Resolution ra = resolve(row.alpha_prime, row.published_alpha, within_cap);
  const Resolution rbg = resolve(row.beta_gamma, row.published_beta_gamma, within_cap);
  if (ra == Resolution::Disagrees || rbg == Resolution::Disagrees) {
    row.resolution = Resolution::Disagrees;
  } else if (ra == Resolution::Unresolved || rbg == Resolution::Unresolved) {
    row.resolution = Resolution::Unresolved;
  } else {
    row.resolution =
        ra == Resolution::Consistent || rbg == Resolution::Consistent ? Resolution::Consistent
                                                                      : Resolution::Reproduced;
  }
  if (options.record_timestamps) row.timestamp = now_seconds(options);
  return row;
}

}  // namespace

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::True: return "T";
    case Tri::False: return "F";
    case Tri::Unresolved: return "unresolved";
  }
  return "unresolved";
}

Tri tri_from_string(std::string_view token) {
  if (token == "T") return Tri::True;
  if (token == "F") return Tri::False;
  if (token == "unresolved") return Tri::Unresolved;
  throw DomainError("unknown truth value '" + std::string(token) + "'");
}

std::string_view to_string(Resolution r) {
  switch (r) {
    case Resolution::Reproduced: return "reproduced";
    case Resolution::Consistent: return "consistent";
    case Resolution::Unresolved: return "unresolved";
    case Resolution::Disagrees: return "disagrees";
  }
  return "unresolved";
}

Resolution resolution_from_string(std::string_view token) {
  for (Resolution r : {Resolution::Reproduced, Resolution::Consistent, Resolution::Unresolved,
                       Resolution::Disagrees}) {
    if (token == to_string(r)) return r;
  }
  throw DomainError("unknown resolution '" + std::string(token) + "'");
}

Tri published_table3_ab(Index n) {
  return n == 1 || n == 2 || n == 4 ? Tri::True : Tri::False;
}

Verdict cascade_riesel(std::uint64_t k, std::uint64_t n, const ScanOptions& options) {
  const FormDescriptor form = FormDescriptor::k_two_n_minus_1(k, n);
  return memoized(form, options, [&]() -> Verdict {
    const primality::Policy& policy = options.policy;
    if (k == 3 && n >= 2) {
      if (auto v = primality::mod4_shortcut(n)) return *v;
    }
    if (form.bit_length_estimate() <= 64) return primality::is_prime(form.value(), policy);
    Verdict sieved = primality::small_factor_sieve(k, n, -1, policy.sieve_bound);
    if (sieved.composite()) return sieved;
    Verdict full = primality::is_prime(form, policy);
    if (full.status == Status::Unresolved && full.reason) {
      full.reason = "no prime factor <= " + std::to_string(policy.sieve_bound) + "; " +
                    *full.reason;
    }
    return full;
  });
}

std::vector<ScanRecord> scan_conjecture1(const MersenneCatalog& catalog,
                                         const ScanOptions& options) {
  const auto exponents = catalog.exponents();
  std::vector<ScanRecord> rows(exponents.size());
  parallel_for(exponents.size(), options.jobs,
               [&](std::size_t i) { rows[i] = scan_row(exponents[i], options); });
  return rows;
}

std::vector<FermatScanRecord> scan_conjecture2(Index max_n, const ScanOptions& options) {
  std::vector<std::uint64_t> indices;
  for (std::uint64_t k = 1; k < 63 && (Index{1} << k) <= max_n; ++k) indices.push_back(k);
  std::vector<FermatScanRecord> rows(indices.size());
  parallel_for(indices.size(), options.jobs,
               [&](std::size_t i) { rows[i] = fermat_row(indices[i], options); });
  return rows;
}

ScanSummary summarize(const std::vector<ScanRecord>& records) {
  ScanSummary s;
  s.rows = records.size();
  for (const auto& r : records) {
    switch (r.resolution) {
      case Resolution::Reproduced: ++s.reproduced; break;
      case Resolution::Consistent: ++s.consistent; break;
      case Resolution::Unresolved: ++s.unresolved; break;
      case Resolution::Disagrees: ++s.disagreements; break;
    }
    if (r.counterexample_candidate) ++s.counterexamples;
    if (r.combined_ab == Tri::True) ++s.combined_true;
  }
  return s;
}

ScanSummary summarize(const std::vector<FermatScanRecord>& records) {
  ScanSummary s;
  s.rows = records.size();
  for (const auto& r : records) {
    switch (r.resolution) {
      case Resolution::Reproduced: ++s.reproduced; break;
      case Resolution::Consistent: ++s.consistent; break;
      case Resolution::Unresolved: ++s.unresolved; break;
      case Resolution::Disagrees: ++s.disagreements; break;
    }
    if (r.beta_gamma == Tri::True) ++s.combined_true;
  }
  return s;
}

}  // namespace amicable::search
