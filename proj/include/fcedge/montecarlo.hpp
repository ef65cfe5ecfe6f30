#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcedge {

enum class Field { real, complex };

std::string to_string(Field field);
/// "real" or "complex"; std::invalid_argument otherwise.
Field parse_field(const std::string& text);

/// n x n factors, m of them. Entries are centred with total variance 1/n; for
/// the complex field the real and imaginary parts are independent, each with
/// variance 1/(2n).
struct GinibreSpec {
  std::uint64_t n = 1;
  std::uint64_t m = 1;
  Field field = Field::real;
};

void validate(const GinibreSpec& spec);

/// Linear-algebra failure (non-finite values, failed decomposition, power
/// iteration that did not converge).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Seed for replicate r, a fixed function of (master_seed, r).
std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t replicate);

/// Standard normals from a seeded mt19937_64: uniforms in (0,1) from the top
/// 53 bits of each word, then the Box-Muller transform, both outputs used in
/// order (cos branch first).
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  double uniform();
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// The m factors of one replicate, entries drawn column-major, factor by
/// factor, from GaussianStream(seed). Complex entries take the real part
/// then the imaginary part.
std::vector<RealMatrix> draw_real_factors(const GinibreSpec& spec, std::uint64_t seed);
std::vector<ComplexMatrix> draw_complex_factors(const GinibreSpec& spec, std::uint64_t seed);

/// W_1 W_2 ... W_m.
RealMatrix multiply_factors(std::span<const RealMatrix> factors);
ComplexMatrix multiply_factors(std::span<const ComplexMatrix> factors);

struct SampleResult {
  std::vector<double> squared_singular_values;  // descending
  double frobenius_sq = 0.0;
};

/// Squared singular values by dense SVD, checked against the Frobenius norm
/// (relative 1e-8). Throws NumericalError on failure.
SampleResult singular_spectrum(const RealMatrix& product);
SampleResult singular_spectrum(const ComplexMatrix& product);

/// Draw, multiply, decompose.
SampleResult sample_product(const GinibreSpec& spec, std::uint64_t seed);

inline constexpr double kPowerTolerance = 1e-10;
inline constexpr std::uint64_t kPowerMaxIterations = 200000;

/// Largest squared singular value of W_1...W_m by power iteration on W*W,
/// applied factor by factor. Stops once the Rayleigh quotient changes by at
/// most tolerance * value between iterations.
double largest_squared_singular_value(std::span<const RealMatrix> factors, std::uint64_t seed,
                                      double tolerance = kPowerTolerance,
                                      std::uint64_t max_iterations = kPowerMaxIterations);
double largest_squared_singular_value(std::span<const ComplexMatrix> factors, std::uint64_t seed,
                                      double tolerance = kPowerTolerance,
                                      std::uint64_t max_iterations = kPowerMaxIterations);

enum class EdgeMethod { dense, power };

/// s_1^2 of one replicate.
double sample_edge(const GinibreSpec& spec, std::uint64_t seed, EdgeMethod method);

/// Name of the environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "FCEDGE_WORKERS";

/// FCEDGE_WORKERS if set to a positive integer, else hardware concurrency.
unsigned default_worker_count();

struct RunConfig {
  std::uint64_t replicates = 1;
  std::uint64_t master_seed = 0;
  unsigned workers = 0;  // 0: default_worker_count()
};

void validate(const RunConfig& config);

/// One SampleResult per replicate, in replicate order. Independent of the
/// worker count.
std::vector<SampleResult> sample_replicates(const GinibreSpec& spec, const RunConfig& config);

/// s_1^2 per replicate, in replicate order.
std::vector<double> sample_edges(const GinibreSpec& spec, const RunConfig& config,
                                 EdgeMethod method = EdgeMethod::dense);

struct EmpiricalMoments {
  std::uint64_t replicates = 0;
  std::vector<double> mean;       // mean[k-1]: average over replicates of (1/n) sum s_i^(2k)
  std::vector<double> std_error;  // sample sd / sqrt(replicates); 0 for one replicate
};

EmpiricalMoments moments_from_samples(std::span<const SampleResult> samples, std::uint64_t k_max);
EmpiricalMoments empirical_moments(const GinibreSpec& spec, const RunConfig& config,
                                   std::uint64_t k_max);

struct EdgeEstimate {
  double mean_s1sq = 0.0;
  double std_error = 0.0;
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
  std::vector<double> values;  // replicate order
};

/// Linear-interpolation quantile of unsorted data, p in [0, 1].
double quantile(std::vector<double> values, double p);

EdgeEstimate summarize_edges(std::vector<double> values);
EdgeEstimate estimate_edge(const GinibreSpec& spec, const RunConfig& config,
                           EdgeMethod method = EdgeMethod::dense);

struct ConvergenceRow {
  std::uint64_t n = 0;
  double mean_s1sq = 0.0;
  double std_error = 0.0;
  double gap = 0.0;  // u_m - mean
};

/// Requires a strictly ascending, non-empty grid.
std::vector<ConvergenceRow> convergence_table(std::uint64_t m, std::span<const std::uint64_t> n_grid,
                                              const RunConfig& config, Field field = Field::real,
                                              EdgeMethod method = EdgeMethod::dense);

}  // namespace fcedge
