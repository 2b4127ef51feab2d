#include "srwpnet/rate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "cubic_spline.hpp"
#include "srwpnet/displacement.hpp"
#include "srwpnet/interference.hpp"
#include "srwpnet/mobility.hpp"

namespace srwpnet {
namespace {

// Normalized interferer density at one (t, u_0), reduced to a fast lookup:
// exact step while nothing has moved, per-segment cubic splines of beta
// otherwise. Segment edges sit on the known kinks of beta in u_x, so each
// spline interpolates a smooth function.
struct DensityTable {
  bool step = false;
  double u0 = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  bool zero_below = false;  // third-branch indicator not yet active
  std::vector<double> edges;
  std::vector<detail::CubicSpline> segments;

  double ratio(double u_x) const {
    if (step) return u_x > u0 ? 1.0 : 0.0;
    if (u_x >= x_hi) return 1.0;
    if (u_x <= x_lo) return zero_below ? 0.0 : std::clamp(segments.front()(x_lo), 0.0, 1.0);
    const auto it = std::upper_bound(edges.begin(), edges.end(), u_x);
    std::size_t seg = static_cast<std::size_t>(it - edges.begin());
    seg = seg > 0 ? seg - 1 : 0;
    if (seg >= segments.size()) seg = segments.size() - 1;
    return std::clamp(segments[seg](u_x), 0.0, 1.0);
  }
};

constexpr int kProfileNodeBudget = 160;
constexpr int kSegmentNodesMin = 8;
constexpr int kSegmentNodesMax = 64;

DensityTable build_table(double t, double u0, const MobilityConfig& mobility,
                         const QuadratureSpec& spec) {
  DensityTable table;
  table.u0 = u0;

  const DisplacementDistribution dist = displacement_distribution(t, mobility);
  if (!dist.has_continuous() && dist.atoms().size() == 1 &&
      dist.atoms().front().location == 0.0) {
    // Nothing has moved yet; the field is the exact exclusion step.
    table.step = true;
    return table;
  }

  const double vt = mobility.v * t;
  table.zero_below = vt < u0;
  table.x_lo = table.zero_below ? u0 - vt : 0.0;
  table.x_hi = u0 + vt;
  std::vector<double> crit = dist.breakpoints();
  for (const Atom& atom : dist.atoms()) crit.push_back(atom.location);
  crit.push_back(vt);

  std::vector<double> edges = {table.x_lo, table.x_hi};
  for (double l : crit) {
    for (double candidate : {u0 + l, u0 - l, l - u0})
      if (candidate > table.x_lo && candidate < table.x_hi) edges.push_back(candidate);
  }
  std::sort(edges.begin(), edges.end());
  const double tiny = 1e-9 * (table.x_hi - table.x_lo);
  std::vector<double> dedup;
  for (double e : edges)
    if (dedup.empty() || e - dedup.back() > tiny) dedup.push_back(e);
  if (table.x_hi - dedup.back() <= tiny)
    dedup.back() = table.x_hi;
  else
    dedup.push_back(table.x_hi);
  table.edges = std::move(dedup);

  const double span = table.x_hi - table.x_lo;
  for (std::size_t i = 0; i + 1 < table.edges.size(); ++i) {
    const double a = table.edges[i];
    const double b = table.edges[i + 1];
    const int nodes = std::clamp(
        static_cast<int>(std::ceil((b - a) / span * kProfileNodeBudget)), kSegmentNodesMin,
        kSegmentNodesMax);
    std::vector<double> xs(static_cast<std::size_t>(nodes) + 1);
    std::vector<double> ys(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double x = a + (b - a) * static_cast<double>(k) / static_cast<double>(nodes);
      xs[k] = x;
      ys[k] = beta(t, x, u0, mobility, spec);
    }
    table.segments.emplace_back(std::move(xs), std::move(ys));
  }
  return table;
}

struct TableKey {
  double t;
  double u0;
  bool operator<(const TableKey& other) const {
    if (t != other.t) return t < other.t;
    return u0 < other.u0;
  }
};

}  // namespace

struct DensityProfileCache::Impl {
  MobilityConfig mobility;
  QuadratureSpec spec;
  std::map<TableKey, std::shared_ptr<const DensityTable>> tables;
  std::mutex mutex;

  std::shared_ptr<const DensityTable> get(double t, double u0) {
    {
      std::lock_guard<std::mutex> lock(mutex);
      auto it = tables.find({t, u0});
      if (it != tables.end()) return it->second;
    }
    auto built = std::make_shared<const DensityTable>(build_table(t, u0, mobility, spec));
    std::lock_guard<std::mutex> lock(mutex);
    auto [it, inserted] = tables.emplace(TableKey{t, u0}, built);
    return it->second;
  }
};

DensityProfileCache::DensityProfileCache(MobilityConfig mobility, QuadratureSpec spec)
    : impl_(std::make_unique<Impl>()) {
  mobility.validate();
  spec.validate();
  impl_->mobility = mobility;
  impl_->spec = spec;
}

DensityProfileCache::~DensityProfileCache() = default;

const MobilityConfig& DensityProfileCache::mobility() const { return impl_->mobility; }

class UdmField {
 public:
  static std::shared_ptr<const DensityTable> profile(DensityProfileCache& cache, double t,
                                                     double u0) {
    return cache.impl_->get(t, u0);
  }
};

namespace {

// 12-point Gauss-Legendre rule on [-1, 1] (positive half).
constexpr double kGlX[6] = {0.125233408511469, 0.367831498998180, 0.587317954286617,
                            0.769902674194305, 0.904117256370475, 0.981560634246719};
constexpr double kGlW[6] = {0.249147045813403, 0.233492536538355, 0.219086362515982,
                            0.160078328543346, 0.106939325995318, 0.047175336386512};

constexpr int kServingPanels = 12;

// 2*pi int u lambda(u)/(1 + (1/gamma) ((u^2+h^2)/(u0t^2+h^2))^(a/2)) du for a
// homogeneous field starting at radius `start` (the UIM step; also the UDM
// region beyond the displaced zone handled through `table`).
double interference_exponent(double gamma, double u0t, const NetworkConfig& cfg,
                             const DensityTable* table, const QuadratureSpec& spec) {
  const double c2 = u0t * u0t + cfg.h * cfg.h;
  const double half_alpha = 0.5 * cfg.alpha;
  auto path_gain = [&](double u) {
    return 1.0 / (1.0 + std::pow((u * u + cfg.h * cfg.h) / c2, half_alpha) / gamma);
  };

  double start = 0.0;
  Integrand integrand;
  if (table == nullptr || table->step) {
    start = table == nullptr ? u0t : table->u0;
    integrand = [&cfg, path_gain](double u) { return cfg.lambda0 * u * path_gain(u); };
  } else {
    start = table->zero_below ? table->x_lo : 0.0;
    integrand = [&cfg, table, path_gain](double u) {
      return cfg.lambda0 * table->ratio(u) * u * path_gain(u);
    };
  }
  const double hint = std::max({cfg.h, u0t, start, 100.0});
  return 2.0 * M_PI * integrate_semi_infinite(integrand, start, spec, hint).value;
}

double serving_weight(double u0, double lambda0) {
  return 2.0 * M_PI * lambda0 * u0 * std::exp(-M_PI * lambda0 * u0 * u0);
}

// Deconditioned coverage at one gamma for the UIM, integrating the serving
// distance against its nearest-neighbor law.
double uim_coverage(double gamma, const NetworkConfig& cfg, const QuadratureSpec& spec) {
  const double scale = 1.0 / std::sqrt(M_PI * cfg.lambda0);
  auto integrand = [&](double u0) {
    return serving_weight(u0, cfg.lambda0) *
           std::exp(-interference_exponent(gamma, u0, cfg, nullptr, spec));
  };
  return integrate_semi_infinite(integrand, 0.0, spec, 0.5 * scale).value;
}

}  // namespace

double sir_ccdf_conditional(double gamma, double t, double u_0, const NetworkConfig& cfg,
                            const MobilityConfig& mobility, Model model,
                            const QuadratureSpec& spec, DensityProfileCache* cache) {
  if (!(gamma > 0.0)) throw std::domain_error("sir_ccdf_conditional: gamma must be positive");
  if (t < 0.0 || u_0 < 0.0)
    throw std::domain_error("sir_ccdf_conditional: t and u_0 must be non-negative");
  cfg.validate();
  mobility.validate();

  if (model == Model::UIM)
    return std::exp(-interference_exponent(gamma, u_0, cfg, nullptr, spec));

  DensityProfileCache local(mobility, spec);
  DensityProfileCache* use = cache ? cache : &local;
  if (cache && !(cache->mobility() == mobility))
    throw std::invalid_argument("sir_ccdf_conditional: cache built for different mobility");
  const auto table = UdmField::profile(*use, t, u_0);
  const double u0t = serving_distance_at({u_0, mobility.v}, t);
  return std::exp(-interference_exponent(gamma, u0t, cfg, table.get(), spec));
}

double average_rate_uim(const NetworkConfig& cfg, const QuadratureSpec& spec) {
  cfg.validate();
  auto integrand = [&](double gamma) { return uim_coverage(gamma, cfg, spec) / (1.0 + gamma); };
  return integrate_semi_infinite(integrand, 0.0, spec, 0.25).value;
}

double average_rate_udm(double t, const NetworkConfig& cfg, const MobilityConfig& mobility,
                        const QuadratureSpec& spec, DensityProfileCache* cache) {
  if (t < 0.0) throw std::domain_error("average_rate_udm: t must be non-negative");
  cfg.validate();
  mobility.validate();
  if (cache && !(cache->mobility() == mobility))
    throw std::invalid_argument("average_rate_udm: cache built for different mobility");

  std::unique_ptr<DensityProfileCache> local;
  DensityProfileCache* use = cache;
  if (use == nullptr) {
    local = std::make_unique<DensityProfileCache>(mobility, spec);
    use = local.get();
  }

  // Serving-distance level: fixed composite Gauss-Legendre nodes on [0, U0],
  // where the nearest-neighbor weight has decayed below 1e-14. Deterministic
  // nodes let every gamma evaluation reuse the same density profiles.
  const double u0_max = std::sqrt(14.0 * std::log(10.0) / (M_PI * cfg.lambda0));
  struct Node {
    double u0;
    double weight;  // GL weight times the serving pdf
    std::shared_ptr<const DensityTable> table;
    double u0t;
  };
  std::vector<Node> nodes;
  nodes.reserve(kServingPanels * 12);
  for (int p = 0; p < kServingPanels; ++p) {
    const double a = u0_max * static_cast<double>(p) / kServingPanels;
    const double b = u0_max * static_cast<double>(p + 1) / kServingPanels;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int j = 0; j < 6; ++j) {
      for (double sign : {-1.0, 1.0}) {
        const double u0 = mid + sign * half * kGlX[j];
        Node node;
        node.u0 = u0;
        node.weight = kGlW[j] * half * serving_weight(u0, cfg.lambda0);
        node.table = UdmField::profile(*use, t, u0);
        node.u0t = serving_distance_at({u0, mobility.v}, t);
        nodes.push_back(std::move(node));
      }
    }
  }

  auto gamma_integrand = [&](double gamma) {
    double coverage = 0.0;
    for (const Node& node : nodes)
      coverage += node.weight *
                  std::exp(-interference_exponent(gamma, node.u0t, cfg, node.table.get(), spec));
    return coverage / (1.0 + gamma);
  };
  return integrate_semi_infinite(gamma_integrand, 0.0, spec, 0.25).value;
}

RateCurve rate_curve(Model model, std::span<const double> time_grid, const NetworkConfig& cfg,
                     const MobilityConfig& mobility, const QuadratureSpec& spec,
                     DensityProfileCache* cache) {
  if (time_grid.empty()) throw std::domain_error("rate_curve: empty time grid");
  for (std::size_t i = 1; i < time_grid.size(); ++i)
    if (!(time_grid[i] > time_grid[i - 1]))
      throw std::domain_error("rate_curve: time grid must be strictly increasing");

  RateCurve curve;
  curve.model = model;
  curve.points.reserve(time_grid.size());
  if (model == Model::UIM) {
    const double rate = average_rate_uim(cfg, spec);
    for (double t : time_grid) curve.points.push_back({t, rate});
    return curve;
  }
  for (double t : time_grid)
    curve.points.push_back({t, average_rate_udm(t, cfg, mobility, spec, cache)});
  return curve;
}

}  // namespace srwpnet
