#include "unpoly/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace unpoly {

double Estimate::z_score(double exact) const {
  const double d = mean - exact;
  if (stderr_ > 0.0) return d / stderr_;
  if (d == 0.0) return 0.0;
  return d > 0.0 ? std::numeric_limits<double>::infinity()
                 : -std::numeric_limits<double>::infinity();
}

std::vector<Estimate> monte_carlo(const McConfig& cfg, int n_obs, const Draw& draw) {
  if (cfg.samples < 0) throw DomainError("monte_carlo: negative sample count");
  if (cfg.workers < 1) throw DomainError("monte_carlo: workers must be >= 1");
  if (n_obs < 1) throw DomainError("monte_carlo: no observables");
  std::vector<Estimate> out(static_cast<size_t>(n_obs));
  if (cfg.samples == 0) {
    for (auto& e : out) e.mean = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const int nb = static_cast<int>(std::min<long long>(kBatches, cfg.samples));
  const auto obs_sz = static_cast<size_t>(n_obs);
  std::vector<std::vector<double>> sums(static_cast<size_t>(nb), std::vector<double>(obs_sz, 0.0));
  std::vector<long long> counts(static_cast<size_t>(nb));
  for (int b = 0; b < nb; ++b) {
    counts[static_cast<size_t>(b)] = cfg.samples / nb + (b < cfg.samples % nb ? 1 : 0);
  }

  auto run_batch = [&](int b) {
    Rng rng = make_rng({cfg.seed, static_cast<std::uint64_t>(b)});
    std::vector<double> obs(obs_sz);
    auto& s = sums[static_cast<size_t>(b)];
    for (long long t = 0; t < counts[static_cast<size_t>(b)]; ++t) {
      draw(rng, obs.data());
      for (size_t k = 0; k < obs_sz; ++k) s[k] += obs[k];
    }
  };

  const int workers = std::min(cfg.workers, nb);
  if (workers == 1) {
    for (int b = 0; b < nb; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int b = w; b < nb; b += workers) run_batch(b);
      });
    }
    for (auto& t : pool) t.join();
  }

  for (size_t k = 0; k < obs_sz; ++k) {
    double total = 0.0;
    for (int b = 0; b < nb; ++b) total += sums[static_cast<size_t>(b)][k];
    const double mean = total / static_cast<double>(cfg.samples);
    double var = 0.0;
    if (nb > 1) {
      for (int b = 0; b < nb; ++b) {
        const double m = sums[static_cast<size_t>(b)][k] /
                         static_cast<double>(counts[static_cast<size_t>(b)]);
        var += (m - mean) * (m - mean);
      }
      var /= static_cast<double>(nb - 1);
    }
    out[k] = {mean, std::sqrt(var / nb), cfg.samples};
  }
  return out;
}

}  // namespace unpoly
