#include "fcedge/combinatorics.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

namespace fcedge {

Natural binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  Natural out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Natural factorial(std::uint64_t n) {
  Natural out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Natural falling_factorial(std::uint64_t x, std::uint64_t k) {
  if (k == 0) return 1;
  if (x + 1 < k) {
    throw std::invalid_argument("falling_factorial(" + std::to_string(x) + ", " +
                                std::to_string(k) + "): negative factor");
  }
  Natural out = 1;
  for (std::uint64_t t = 0; t < k; ++t) {
    out *= x - t;
  }
  return out;
}

namespace {

void fill_rows(std::vector<std::vector<Natural>>& rows, std::uint64_t max_n) {
  if (rows.empty()) rows.push_back({Natural(1)});
  while (rows.size() <= max_n) {
    const auto& prev = rows.back();
    std::uint64_t n = rows.size();  // row being built
    std::vector<Natural> row(n + 1);
    row[0] = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
      Natural carried = k < prev.size() ? Natural(k * prev[k]) : Natural(0);
      row[k] = carried + prev[k - 1];
    }
    rows.push_back(std::move(row));
  }
}

struct SharedStirling {
  std::shared_mutex mutex;
  std::vector<std::vector<Natural>> rows;
};

SharedStirling& shared_stirling() {
  static SharedStirling table;
  return table;
}

}  // namespace

StirlingTable::StirlingTable(std::uint64_t max_n) { fill_rows(rows_, max_n); }

const Natural& StirlingTable::operator()(std::uint64_t n, std::uint64_t k) const {
  static const Natural zero = 0;
  if (n > max_n()) {
    throw std::out_of_range("StirlingTable: n=" + std::to_string(n) + " exceeds table size");
  }
  return k > n ? zero : rows_[n][k];
}

void StirlingTable::set(std::uint64_t n, std::uint64_t k, Natural value) {
  if (n > max_n() || k > n) throw std::out_of_range("StirlingTable::set");
  rows_[n][k] = std::move(value);
}

Natural stirling2(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  auto& shared = shared_stirling();
  {
    std::shared_lock lock(shared.mutex);
    if (n < shared.rows.size()) return shared.rows[n][k];
  }
  std::unique_lock lock(shared.mutex);
  fill_rows(shared.rows, n);
  return shared.rows[n][k];
}

Natural stirling2_alternating(std::uint64_t n, std::uint64_t k) {
  Integer sum = 0;
  for (std::uint64_t i = 0; i <= k; ++i) {
    Integer term = binomial(k, i) * pow(Integer(i), n);  // GMP: 0^0 = 1
    if ((k - i) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  Natural kf = factorial(k);
  if (!mpz_divisible_p(sum.get_mpz_t(), kf.get_mpz_t())) {
    throw std::logic_error("alternating Stirling sum not divisible by k!");
  }
  Natural out;
  mpz_divexact(out.get_mpz_t(), sum.get_mpz_t(), kf.get_mpz_t());
  return out;
}

Natural fuss_catalan(std::uint64_t m, std::uint64_t k) {
  if (m == 0) throw std::invalid_argument("fuss_catalan requires m >= 1");
  Natural top = binomial(m * k + k, k);
  Natural den = m * k + 1;
  if (!mpz_divisible_p(top.get_mpz_t(), den.get_mpz_t())) {
    throw std::logic_error("Fuss-Catalan division is inexact for m=" + std::to_string(m) +
                           ", k=" + std::to_string(k));
  }
  Natural out;
  mpz_divexact(out.get_mpz_t(), top.get_mpz_t(), den.get_mpz_t());
  return out;
}

}  // namespace fcedge
