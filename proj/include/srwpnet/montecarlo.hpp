#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srwpnet/rng.hpp"
#include "srwpnet/stats.hpp"
#include "srwpnet/rate.hpp"
#include "srwpnet/types.hpp"

namespace srwpnet {

/// How interference from beyond the simulated disc is treated. The field out
/// there is exactly homogeneous, so MeanTail adds its expected power as a
/// deterministic term; Truncate ignores it.
enum class MarginPolicy { Truncate, MeanTail };

struct SimConfig {
  double r_obs = 20000.0;  // observation radius (m)
  MarginPolicy margin_policy = MarginPolicy::MeanTail;
  long trials = 100000;
  std::uint64_t seed = 1;
  std::vector<double> time_grid = {0.0};
  int threads = 0;  // 0: hardware concurrency

  /// Initial sampling radius: no drone starting outside it can reach the
  /// observation disc within the horizon (guard band of 10 flight lengths).
  double r_sim(const MobilityConfig& mobility) const;

  void validate() const;
};

/// One SIR draw at one grid time. sir is +inf when a realization has zero
/// interference (possible only under the Truncate policy).
struct SirSample {
  double t = 0.0;
  double sir = 0.0;
  double r0 = 0.0;            // serving slant distance
  double interference = 0.0;  // I(t)
};

/// Simulates one network realization over sim.time_grid: a PPP of initial
/// drone positions, the nearest drone at t = 0 as serving, SRWP motion for
/// interferers, and i.i.d. unit-mean exponential fading per drone and grid
/// time. UDM: the serving distance shrinks as [u_0 - v t]^+ without
/// handover. UIM: every drone moves and the serving drone is re-selected as
/// the nearest at each grid time. Empty initial draws are resampled and
/// counted in *resampled.
std::vector<SirSample> simulate_realization(const NetworkConfig& cfg,
                                            const MobilityConfig& mobility, const SimConfig& sim,
                                            Model model, Pcg32& rng, long* resampled = nullptr);

/// Normalized interferer-count histogram at one grid time.
struct DensityHistogram {
  double t = 0.0;
  std::vector<double> edges;           // bin edges, size bins + 1
  std::vector<double> ratio;           // count / (lambda0 * bin area * trials)
  std::vector<double> std_error;       // Poisson standard error of ratio
  std::vector<double> expected_full;   // lambda0 * bin area * trials
  std::vector<bool> low_confidence;    // expected_full < 100
};

/// Interferer trajectories conditioned on the initial exclusion disc of
/// radius u_0 (by construction: the initial PPP is thinned inside u_0, not
/// rejection-sampled), binned into annuli at each grid time.
std::vector<DensityHistogram> empirical_density(double u_0, const NetworkConfig& cfg,
                                                const MobilityConfig& mobility,
                                                const SimConfig& sim,
                                                std::span<const double> edges);

struct EmpiricalRate {
  double t = 0.0;
  double mean = 0.0;       // mean log(1 + SIR), nats
  double std_error = 0.0;
  long n_finite = 0;
  long n_infinite = 0;  // zero-interference draws, excluded from the mean
  long n_resampled = 0;
};

/// Sample mean and standard error of log(1 + SIR(t)) over sim.trials
/// realizations, per grid time.
std::vector<EmpiricalRate> empirical_rate(Model model, const NetworkConfig& cfg,
                                          const MobilityConfig& mobility, const SimConfig& sim);

/// Chi-square uniformity test (36 bins) of the net-displacement bearing
/// after n flights, sampled from i.i.d. uniform flight directions.
ChiSquareResult test_psi_uniform(long n, long samples, Pcg32& rng);

struct ZnFitResult {
  double ks_distance = 0.0;
  long samples = 0;
};

/// KS distance between sampled net displacements after n flights and the
/// closed-form law used by the analysis.
ZnFitResult test_zn_fit(long n, double s, long samples, Pcg32& rng);

}  // namespace srwpnet
