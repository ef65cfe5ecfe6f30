#include "fcedge/montecarlo.hpp"

#include "fcedge/edge.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <type_traits>

namespace fcedge {

std::string to_string(Field field) { return field == Field::real ? "real" : "complex"; }

Field parse_field(const std::string& text) {
  if (text == "real") return Field::real;
  if (text == "complex") return Field::complex;
  throw std::invalid_argument("field must be 'real' or 'complex', got '" + text + "'");
}

void validate(const GinibreSpec& spec) {
  if (spec.n < 1 || spec.m < 1) throw std::invalid_argument("Ginibre spec requires n, m >= 1");
}

void validate(const RunConfig& config) {
  if (config.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t replicate) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(replicate + 0x632be59bd9b4e019ULL));
}

double GaussianStream::uniform() {
  // (top 53 bits + 1/2) / 2^53 lies strictly inside (0, 1)
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<RealMatrix> draw_real_factors(const GinibreSpec& spec, std::uint64_t seed) {
  validate(spec);
  const auto n = static_cast<Eigen::Index>(spec.n);
  const double sd = 1.0 / std::sqrt(static_cast<double>(spec.n));
  GaussianStream gauss(seed);
  std::vector<RealMatrix> factors;
  factors.reserve(spec.m);
  for (std::uint64_t f = 0; f < spec.m; ++f) {
    RealMatrix w(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) w(i, j) = sd * gauss.next();
    }
    factors.push_back(std::move(w));
  }
  return factors;
}

std::vector<ComplexMatrix> draw_complex_factors(const GinibreSpec& spec, std::uint64_t seed) {
  validate(spec);
  const auto n = static_cast<Eigen::Index>(spec.n);
  const double sd = 1.0 / std::sqrt(2.0 * static_cast<double>(spec.n));
  GaussianStream gauss(seed);
  std::vector<ComplexMatrix> factors;
  factors.reserve(spec.m);
  for (std::uint64_t f = 0; f < spec.m; ++f) {
    ComplexMatrix w(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double re = sd * gauss.next();
        const double im = sd * gauss.next();
        w(i, j) = {re, im};
      }
    }
    factors.push_back(std::move(w));
  }
  return factors;
}

namespace {

template <class Matrix>
Matrix multiply_impl(std::span<const Matrix> factors) {
  if (factors.empty()) throw std::invalid_argument("empty factor list");
  Matrix product = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    product = product * factors[i];
  }
  return product;
}

template <class Matrix>
SampleResult spectrum_impl(const Matrix& product) {
  if (!product.allFinite()) throw NumericalError("non-finite entries in matrix product");
  Eigen::BDCSVD<Matrix> svd(product);
  if (svd.info() != Eigen::Success) throw NumericalError("singular value decomposition failed");
  const auto& sv = svd.singularValues();

  SampleResult result;
  result.frobenius_sq = product.squaredNorm();
  result.squared_singular_values.reserve(static_cast<std::size_t>(sv.size()));
  double total = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double s2 = sv(i) * sv(i);
    result.squared_singular_values.push_back(s2);
    total += s2;
  }
  // Eigen returns them sorted already; keep the contract explicit.
  std::sort(result.squared_singular_values.begin(), result.squared_singular_values.end(),
            std::greater<>());
  if (!std::isfinite(total) ||
      std::fabs(total - result.frobenius_sq) > 1e-8 * result.frobenius_sq) {
    throw NumericalError("singular values disagree with the Frobenius norm");
  }
  return result;
}

template <class Matrix>
double power_impl(std::span<const Matrix> factors, std::uint64_t seed, double tolerance,
                  std::uint64_t max_iterations) {
  using Vector = Eigen::Matrix<typename Matrix::Scalar, Eigen::Dynamic, 1>;
  if (factors.empty()) throw std::invalid_argument("empty factor list");
  const Eigen::Index n = factors.front().cols();

  GaussianStream gauss(seed ^ 0x5851f42d4c957f2dULL);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if constexpr (std::is_same_v<typename Matrix::Scalar, double>) {
      v(i) = gauss.next();
    } else {
      const double re = gauss.next();
      v(i) = {re, gauss.next()};
    }
  }
  v.normalize();

  double previous = 0.0;
  for (std::uint64_t it = 0; it < max_iterations; ++it) {
    Vector y = v;
    for (auto f = factors.rbegin(); f != factors.rend(); ++f) y = (*f) * y;  // W v
    const double rayleigh = y.squaredNorm();  // v* W* W v with |v| = 1
    for (const auto& f : factors) y = f.adjoint() * y;                    // W* W v
    if (!std::isfinite(rayleigh)) throw NumericalError("power iteration diverged");
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;
    v = y / norm;
    if (it > 0 && std::fabs(rayleigh - previous) <= tolerance * rayleigh) return rayleigh;
    previous = rayleigh;
  }
  throw NumericalError("power iteration did not converge");
}

}  // namespace

RealMatrix multiply_factors(std::span<const RealMatrix> factors) { return multiply_impl(factors); }

ComplexMatrix multiply_factors(std::span<const ComplexMatrix> factors) {
  return multiply_impl(factors);
}

SampleResult singular_spectrum(const RealMatrix& product) { return spectrum_impl(product); }

SampleResult singular_spectrum(const ComplexMatrix& product) { return spectrum_impl(product); }

SampleResult sample_product(const GinibreSpec& spec, std::uint64_t seed) {
  validate(spec);
  if (spec.field == Field::real) {
    auto factors = draw_real_factors(spec, seed);
    return singular_spectrum(multiply_factors(std::span<const RealMatrix>(factors)));
  }
  auto factors = draw_complex_factors(spec, seed);
  return singular_spectrum(multiply_factors(std::span<const ComplexMatrix>(factors)));
}

double largest_squared_singular_value(std::span<const RealMatrix> factors, std::uint64_t seed,
                                      double tolerance, std::uint64_t max_iterations) {
  return power_impl(factors, seed, tolerance, max_iterations);
}

double largest_squared_singular_value(std::span<const ComplexMatrix> factors, std::uint64_t seed,
                                      double tolerance, std::uint64_t max_iterations) {
  return power_impl(factors, seed, tolerance, max_iterations);
}

double sample_edge(const GinibreSpec& spec, std::uint64_t seed, EdgeMethod method) {
  if (method == EdgeMethod::dense) {
    return sample_product(spec, seed).squared_singular_values.front();
  }
  if (spec.field == Field::real) {
    auto factors = draw_real_factors(spec, seed);
    return largest_squared_singular_value(std::span<const RealMatrix>(factors), seed);
  }
  auto factors = draw_complex_factors(spec, seed);
  return largest_squared_singular_value(std::span<const ComplexMatrix>(factors), seed);
}

unsigned default_worker_count() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

/// Runs task(r) for r in [0, count) on a pool of workers; results land by
/// index, so scheduling never changes the output.
template <class T, class Task>
std::vector<T> run_indexed(std::uint64_t count, unsigned workers, Task task) {
  std::vector<T> results(count);
  if (workers == 0) workers = default_worker_count();
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::uint64_t r = next.fetch_add(1);
      if (r >= count) return;
      try {
        results[r] = task(r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

double mean_of(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double std_error_of(std::span<const double> xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  return std::sqrt(var / static_cast<double>(xs.size()));
}

}  // namespace

std::vector<SampleResult> sample_replicates(const GinibreSpec& spec, const RunConfig& config) {
  validate(spec);
  validate(config);
  return run_indexed<SampleResult>(config.replicates, config.workers, [&](std::uint64_t r) {
    return sample_product(spec, replicate_seed(config.master_seed, r));
  });
}

std::vector<double> sample_edges(const GinibreSpec& spec, const RunConfig& config,
                                 EdgeMethod method) {
  validate(spec);
  validate(config);
  return run_indexed<double>(config.replicates, config.workers, [&](std::uint64_t r) {
    return sample_edge(spec, replicate_seed(config.master_seed, r), method);
  });
}

EmpiricalMoments moments_from_samples(std::span<const SampleResult> samples,
                                      std::uint64_t k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (samples.empty()) throw std::invalid_argument("no samples");
  EmpiricalMoments out;
  out.replicates = samples.size();
  std::vector<std::vector<double>> per_k(k_max, std::vector<double>(samples.size()));
  for (std::size_t r = 0; r < samples.size(); ++r) {
    const auto& s2 = samples[r].squared_singular_values;
    std::vector<double> sums(k_max, 0.0);
    for (double x : s2) {
      double p = 1.0;
      for (std::uint64_t k = 0; k < k_max; ++k) {
        p *= x;
        sums[k] += p;
      }
    }
    for (std::uint64_t k = 0; k < k_max; ++k) {
      per_k[k][r] = sums[k] / static_cast<double>(s2.size());
    }
  }
  for (const auto& xs : per_k) {
    const double mu = mean_of(xs);
    out.mean.push_back(mu);
    out.std_error.push_back(std_error_of(xs, mu));
  }
  return out;
}

EmpiricalMoments empirical_moments(const GinibreSpec& spec, const RunConfig& config,
                                   std::uint64_t k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  const auto samples = sample_replicates(spec, config);
  return moments_from_samples(samples, k_max);
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile of empty data");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level outside [0,1]");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

EdgeEstimate summarize_edges(std::vector<double> values) {
  EdgeEstimate e;
  e.mean_s1sq = mean_of(values);
  e.std_error = std_error_of(values, e.mean_s1sq);
  e.q05 = quantile(values, 0.05);
  e.q50 = quantile(values, 0.50);
  e.q95 = quantile(values, 0.95);
  e.values = std::move(values);
  return e;
}

EdgeEstimate estimate_edge(const GinibreSpec& spec, const RunConfig& config, EdgeMethod method) {
  return summarize_edges(sample_edges(spec, config, method));
}

std::vector<ConvergenceRow> convergence_table(std::uint64_t m, std::span<const std::uint64_t> n_grid,
                                              const RunConfig& config, Field field,
                                              EdgeMethod method) {
  if (n_grid.empty()) throw std::invalid_argument("empty n grid");
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) throw std::invalid_argument("n grid must be strictly ascending");
  }
  const double u = to_double(edge_constant(m).u);
  std::vector<ConvergenceRow> rows;
  for (std::uint64_t n : n_grid) {
    const EdgeEstimate e = estimate_edge({n, m, field}, config, method);
    rows.push_back({n, e.mean_s1sq, e.std_error, u - e.mean_s1sq});
  }
  return rows;
}

}  // namespace fcedge
