#include "srwpnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "srwpnet/displacement.hpp"
#include "srwpnet/geometry.hpp"
#include "srwpnet/mobility.hpp"
#include "srwpnet/ppp.hpp"

namespace srwpnet {
namespace {

// Incremental SRWP evolution for one drone; query times must be
// non-decreasing. Draw order matches Trajectory's lazy bearings, without the
// per-drone heap traffic.
class SrwpWalker {
 public:
  SrwpWalker(PlanarPoint origin, const MobilityConfig& mobility, Pcg32 rng)
      : origin_(origin), mobility_(&mobility), rng_(rng) {}

  PlanarPoint at(double t) {
    const Phase phase = phase_at(*mobility_, t);
    while (completed_ < phase.n) {
      ensure_pending();
      base_.x += mobility_->s * pending_cos_;
      base_.y += mobility_->s * pending_sin_;
      pending_ = false;
      ++completed_;
    }
    if (phase.flying) {
      ensure_pending();
      return {origin_.x + base_.x + phase.d * pending_cos_,
              origin_.y + base_.y + phase.d * pending_sin_};
    }
    return {origin_.x + base_.x, origin_.y + base_.y};
  }

  Pcg32& rng() { return rng_; }

 private:
  void ensure_pending() {
    if (pending_) return;
    const double theta = uniform_angle(rng_);
    pending_cos_ = std::cos(theta);
    pending_sin_ = std::sin(theta);
    pending_ = true;
  }

  PlanarPoint origin_;
  const MobilityConfig* mobility_;
  Pcg32 rng_;
  PlanarPoint base_{0.0, 0.0};
  long completed_ = 0;
  bool pending_ = false;
  double pending_cos_ = 0.0, pending_sin_ = 0.0;
};

Pcg32 drone_stream(std::uint64_t base, std::uint64_t index) {
  return Pcg32(mix_stream(base, index), index);
}

double mean_tail_power(const NetworkConfig& cfg, double r_sim) {
  // Expected power of the homogeneous field beyond the sampled disc.
  return 2.0 * M_PI * cfg.lambda0 * cfg.P *
         std::pow(r_sim * r_sim + cfg.h * cfg.h, 1.0 - 0.5 * cfg.alpha) / (cfg.alpha - 2.0);
}

// Runs fn(first_trial, last_trial, chunk_index) over [0, trials) split into
// chunks; deterministic because every chunk owns a disjoint output slice.
template <typename Fn>
void run_trials(long trials, int threads_requested, int* chunks_out, Fn&& fn) {
  int threads = threads_requested > 0
                    ? threads_requested
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = static_cast<int>(std::min<long>(threads, trials));

  if (chunks_out) *chunks_out = threads;
  if (threads == 1) {
    fn(0L, trials, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const long per = (trials + threads - 1) / threads;
  for (int c = 0; c < threads; ++c) {
    const long lo = static_cast<long>(c) * per;
    const long hi = std::min(trials, lo + per);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi, c] { fn(lo, hi, c); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

double SimConfig::r_sim(const MobilityConfig& mobility) const {
  const double t_max = time_grid.empty() ? 0.0 : time_grid.back();
  return r_obs + mobility.v * t_max + 10.0 * mobility.s;
}

void SimConfig::validate() const {
  if (!(r_obs > 0.0)) throw std::domain_error("SimConfig: r_obs must be positive");
  if (trials < 1) throw std::domain_error("SimConfig: trials must be at least 1");
  if (time_grid.empty()) throw std::domain_error("SimConfig: time_grid must not be empty");
  for (std::size_t i = 0; i < time_grid.size(); ++i) {
    if (time_grid[i] < 0.0) throw std::domain_error("SimConfig: times must be non-negative");
    if (i > 0 && !(time_grid[i] > time_grid[i - 1]))
      throw std::domain_error("SimConfig: time_grid must be strictly increasing");
  }
}

std::vector<SirSample> simulate_realization(const NetworkConfig& cfg,
                                            const MobilityConfig& mobility, const SimConfig& sim,
                                            Model model, Pcg32& rng, long* resampled) {
  cfg.validate();
  mobility.validate();
  sim.validate();

  const double r_sim = sim.r_sim(mobility);
  const std::vector<double>& times = sim.time_grid;
  const std::size_t nt = times.size();

  std::vector<PlanarPoint> points;
  for (int attempt = 0;; ++attempt) {
    points = sample_ppp(cfg.lambda0, r_sim, rng);
    if (!points.empty()) break;
    if (resampled) ++*resampled;
    if (attempt > 10000)
      throw std::runtime_error("simulate_realization: persistent empty draws; density too low");
  }

  std::size_t serving = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double d = points[k].norm();
    if (d < best) {
      best = d;
      serving = k;
    }
  }
  const double u0 = best;

  const double tail =
      sim.margin_policy == MarginPolicy::MeanTail ? mean_tail_power(cfg, r_sim) : 0.0;
  const double neg_half_alpha = -0.5 * cfg.alpha;
  const std::uint64_t base = (static_cast<std::uint64_t>(rng()) << 32) | rng();

  std::vector<SirSample> out(nt);

  if (model == Model::UDM) {
    std::vector<double> interference(nt, tail);
    std::vector<double> serving_fade(nt, 0.0);
    for (std::size_t k = 0; k < points.size(); ++k) {
      Pcg32 stream = drone_stream(base, k);
      if (k == serving) {
        for (std::size_t i = 0; i < nt; ++i) serving_fade[i] = exponential(stream);
        continue;
      }
      SrwpWalker walker(points[k], mobility, stream);
      for (std::size_t i = 0; i < nt; ++i) {
        const PlanarPoint p = walker.at(times[i]);
        const double fade = exponential(walker.rng());
        const double d2 = p.x * p.x + p.y * p.y + cfg.h * cfg.h;
        interference[i] += cfg.P * fade * std::pow(d2, neg_half_alpha);
      }
    }
    for (std::size_t i = 0; i < nt; ++i) {
      const double u0t = std::max(u0 - mobility.v * times[i], 0.0);
      const double r02 = u0t * u0t + cfg.h * cfg.h;
      const double signal = cfg.P * serving_fade[i] * std::pow(r02, neg_half_alpha);
      const double I = interference[i];
      out[i] = {times[i], I > 0.0 ? signal / I : std::numeric_limits<double>::infinity(),
                std::sqrt(r02), I};
    }
    return out;
  }

  // UIM: everybody moves; serving drone re-selected per grid time.
  std::vector<double> dist2(points.size() * nt);
  std::vector<double> fade(points.size() * nt);
  for (std::size_t k = 0; k < points.size(); ++k) {
    Pcg32 stream = drone_stream(base, k);
    SrwpWalker walker(points[k], mobility, stream);
    for (std::size_t i = 0; i < nt; ++i) {
      const PlanarPoint p = walker.at(times[i]);
      dist2[k * nt + i] = p.x * p.x + p.y * p.y;
      fade[k * nt + i] = exponential(walker.rng());
    }
  }
  for (std::size_t i = 0; i < nt; ++i) {
    std::size_t nearest = 0;
    double nearest_d2 = std::numeric_limits<double>::infinity();
    double total = tail;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const double d2 = dist2[k * nt + i];
      if (d2 < nearest_d2) {
        nearest_d2 = d2;
        nearest = k;
      }
      total += cfg.P * fade[k * nt + i] * std::pow(d2 + cfg.h * cfg.h, neg_half_alpha);
    }
    const double r02 = nearest_d2 + cfg.h * cfg.h;
    const double signal = cfg.P * fade[nearest * nt + i] * std::pow(r02, neg_half_alpha);
    const double I = total - signal;
    out[i] = {times[i], I > 0.0 ? signal / I : std::numeric_limits<double>::infinity(),
              std::sqrt(r02), I};
  }
  return out;
}

std::vector<DensityHistogram> empirical_density(double u_0, const NetworkConfig& cfg,
                                                const MobilityConfig& mobility,
                                                const SimConfig& sim,
                                                std::span<const double> edges) {
  cfg.validate();
  mobility.validate();
  sim.validate();
  if (u_0 < 0.0) throw std::domain_error("empirical_density: u_0 must be non-negative");
  if (edges.size() < 2) throw std::domain_error("empirical_density: need at least one bin");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i] < 0.0) throw std::domain_error("empirical_density: edges must be non-negative");
    if (i > 0 && !(edges[i] > edges[i - 1]))
      throw std::domain_error("empirical_density: edges must be strictly increasing");
  }

  const double r_sim = sim.r_sim(mobility);
  const std::vector<double>& times = sim.time_grid;
  const std::size_t nt = times.size();
  const std::size_t bins = edges.size() - 1;

  int chunks = 0;
  std::vector<std::vector<std::uint64_t>> counts;
  {
    // Pre-size one count block per chunk; merged after the parallel section.
    int threads = sim.threads > 0 ? sim.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = static_cast<int>(std::min<long>(threads, sim.trials));
    counts.assign(static_cast<std::size_t>(threads), std::vector<std::uint64_t>(nt * bins, 0));
  }

  run_trials(sim.trials, sim.threads, &chunks, [&](long lo, long hi, int chunk) {
    std::vector<std::uint64_t>& local = counts[static_cast<std::size_t>(chunk)];
    for (long trial = lo; trial < hi; ++trial) {
      Pcg32 trial_rng(sim.seed, mix_stream(static_cast<std::uint64_t>(trial)));
      const std::vector<PlanarPoint> points = sample_ppp(cfg.lambda0, r_sim, trial_rng);
      for (const PlanarPoint& origin : points) {
        if (origin.norm() <= u_0) continue;  // thinned initial law: exclusion disc empty
        SrwpWalker walker(origin, mobility, trial_rng);
        for (std::size_t i = 0; i < nt; ++i) {
          const double u = walker.at(times[i]).norm();
          const auto it = std::upper_bound(edges.begin(), edges.end(), u);
          if (it == edges.begin() || it == edges.end()) continue;
          const auto bin = static_cast<std::size_t>(it - edges.begin()) - 1;
          ++local[i * bins + bin];
        }
        trial_rng = walker.rng();  // hand the stream back so drones stay sequential
      }
    }
  });

  std::vector<DensityHistogram> out(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    DensityHistogram& hist = out[i];
    hist.t = times[i];
    hist.edges.assign(edges.begin(), edges.end());
    hist.ratio.resize(bins);
    hist.std_error.resize(bins);
    hist.expected_full.resize(bins);
    hist.low_confidence.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
      std::uint64_t c = 0;
      for (const auto& local : counts) c += local[i * bins + b];
      const double area = M_PI * (edges[b + 1] * edges[b + 1] - edges[b] * edges[b]);
      const double denom = cfg.lambda0 * area * static_cast<double>(sim.trials);
      hist.ratio[b] = static_cast<double>(c) / denom;
      hist.std_error[b] = std::sqrt(static_cast<double>(c)) / denom;
      hist.expected_full[b] = denom;
      hist.low_confidence[b] = denom < 100.0;
    }
  }
  return out;
}

std::vector<EmpiricalRate> empirical_rate(Model model, const NetworkConfig& cfg,
                                          const MobilityConfig& mobility, const SimConfig& sim) {
  cfg.validate();
  mobility.validate();
  sim.validate();

  const std::size_t nt = sim.time_grid.size();
  std::vector<double> values(static_cast<std::size_t>(sim.trials) * nt);
  std::vector<long> resample_counts(static_cast<std::size_t>(sim.trials), 0);

  run_trials(sim.trials, sim.threads, nullptr, [&](long lo, long hi, int) {
    for (long trial = lo; trial < hi; ++trial) {
      Pcg32 trial_rng(sim.seed, mix_stream(static_cast<std::uint64_t>(trial)));
      long resampled = 0;
      const std::vector<SirSample> samples =
          simulate_realization(cfg, mobility, sim, model, trial_rng, &resampled);
      resample_counts[static_cast<std::size_t>(trial)] = resampled;
      for (std::size_t i = 0; i < nt; ++i)
        values[static_cast<std::size_t>(trial) * nt + i] = std::log1p(samples[i].sir);
    }
  });

  long total_resampled = 0;
  for (long c : resample_counts) total_resampled += c;

  std::vector<EmpiricalRate> out(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    double mean = 0.0, m2 = 0.0;
    long n = 0, infinite = 0;
    for (long trial = 0; trial < sim.trials; ++trial) {
      const double v = values[static_cast<std::size_t>(trial) * nt + i];
      if (!std::isfinite(v)) {
        ++infinite;
        continue;
      }
      ++n;
      const double delta = v - mean;
      mean += delta / static_cast<double>(n);
      m2 += delta * (v - mean);
    }
    EmpiricalRate& r = out[i];
    r.t = sim.time_grid[i];
    r.mean = mean;
    r.std_error = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    r.n_finite = n;
    r.n_infinite = infinite;
    r.n_resampled = total_resampled;
  }
  return out;
}

ChiSquareResult test_psi_uniform(long n, long samples, Pcg32& rng) {
  if (n < 2) throw std::domain_error("test_psi_uniform: needs n >= 2 flights");
  if (samples < 36) throw std::domain_error("test_psi_uniform: too few samples");

  std::vector<double> psi(static_cast<std::size_t>(samples));
  for (long i = 0; i < samples; ++i) {
    double cx = 0.0, cy = 0.0;
    do {
      cx = cy = 0.0;
      for (long k = 0; k < n; ++k) {
        const double theta = uniform_angle(rng);
        cx += std::cos(theta);
        cy += std::sin(theta);
      }
    } while (cx == 0.0 && cy == 0.0);
    psi[static_cast<std::size_t>(i)] = wrap_angle(std::atan2(cy, cx));
  }
  return chi_square_uniform(psi, -M_PI, M_PI, 36);
}

ZnFitResult test_zn_fit(long n, double s, long samples, Pcg32& rng) {
  if (n < 2) throw std::domain_error("test_zn_fit: needs n >= 2 flights");
  if (samples < 2) throw std::domain_error("test_zn_fit: too few samples");
  if (!(s > 0.0)) throw std::domain_error("test_zn_fit: s must be positive");

  std::vector<double> z(static_cast<std::size_t>(samples));
  for (long i = 0; i < samples; ++i) {
    double cx = 0.0, cy = 0.0;
    for (long k = 0; k < n; ++k) {
      const double theta = uniform_angle(rng);
      cx += std::cos(theta);
      cy += std::sin(theta);
    }
    z[static_cast<std::size_t>(i)] = s * std::hypot(cx, cy);
  }
  const double ks = ks_statistic(std::move(z), [&](double v) { return zn_cdf(n, s, v); });
  return {ks, samples};
}

}  // namespace srwpnet
