#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "unpoly/sampler.hpp"

namespace unpoly {

/// Mean with batch-means standard error.
struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long long samples = 0;

  /// (mean - exact)/stderr; 0 when both agree exactly and stderr is 0.
  double z_score(double exact) const;
};

struct ComplexEstimate {
  Estimate re;
  Estimate im;
};

inline constexpr int kBatches = 32;

struct McConfig {
  long long samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
};

/// One draw writes n_obs observables into obs. Batch b draws from stream b so
/// the aggregate is independent of the worker count.
using Draw = std::function<void(Rng& rng, double* obs)>;

std::vector<Estimate> monte_carlo(const McConfig& cfg, int n_obs, const Draw& draw);

}  // namespace unpoly
