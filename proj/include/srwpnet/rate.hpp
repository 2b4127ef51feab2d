#pragma once

#include <memory>
#include <vector>

#include "srwpnet/quadrature.hpp"
#include "srwpnet/types.hpp"

namespace srwpnet {

enum class Model { UIM, UDM };

struct RatePoint {
  double t = 0.0;
  double rate = 0.0;  // nats per channel use
};

struct RateCurve {
  Model model = Model::UIM;
  std::vector<RatePoint> points;
};

/// Memoized normalized-density profiles of the displaced interference field,
/// keyed on (t, u_0). Profiles depend only on the mobility parameters, so one
/// cache serves every altitude and path-loss setting; share it across rate
/// evaluations at repeated times.
class DensityProfileCache {
 public:
  DensityProfileCache(MobilityConfig mobility, QuadratureSpec spec);
  ~DensityProfileCache();

  DensityProfileCache(const DensityProfileCache&) = delete;
  DensityProfileCache& operator=(const DensityProfileCache&) = delete;

  const MobilityConfig& mobility() const;

 private:
  friend class UdmField;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// P[SIR(t) >= gamma | u_0]: the conditional coverage probability from the
/// interference Laplace transform. The UIM field is time-invariant in
/// distribution, so its value carries no t dependence; the UDM field uses the
/// displaced density and the shrinking serving distance [u_0 - v t]^+.
double sir_ccdf_conditional(double gamma, double t, double u_0, const NetworkConfig& cfg,
                            const MobilityConfig& mobility, Model model,
                            const QuadratureSpec& spec = {},
                            DensityProfileCache* cache = nullptr);

/// Average downlink rate E[log(1 + SIR)] in nats for the UE-independent
/// serving model; time-invariant.
double average_rate_uim(const NetworkConfig& cfg, const QuadratureSpec& spec = {});

/// Average downlink rate at time t for the UE-dependent serving model.
double average_rate_udm(double t, const NetworkConfig& cfg, const MobilityConfig& mobility,
                        const QuadratureSpec& spec = {}, DensityProfileCache* cache = nullptr);

/// Rate over a strictly increasing time grid. The UIM value is computed once
/// and replicated.
RateCurve rate_curve(Model model, std::span<const double> time_grid, const NetworkConfig& cfg,
                     const MobilityConfig& mobility, const QuadratureSpec& spec = {},
                     DensityProfileCache* cache = nullptr);

}  // namespace srwpnet
