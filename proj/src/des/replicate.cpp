#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "des/engine.hpp"
#include "des/rng.hpp"

namespace hrc {

std::uint64_t replication_seed(std::uint64_t base_seed, int index) {
  return derive_seed(base_seed ^ 0xA5A5A5A5A5A5A5A5ull, static_cast<std::uint64_t>(index));
}

std::pair<double, double> mean_and_half_width(std::span<const double> sample) {
  if (sample.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(sample.size());
  const double mean = std::accumulate(sample.begin(), sample.end(), 0.0) / n;
  if (sample.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (const double x : sample) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  return {mean, t * sd / std::sqrt(n)};
}

AggregateResult replicate(const SimModel& model, int replications, std::uint64_t base_seed,
                          unsigned threads) {
  if (replications < 1) throw Error(ErrorCode::kValidation, "need at least one replication");

  AggregateResult agg;
  const auto n = static_cast<std::size_t>(replications);
  agg.replications.resize(n);
  for (int r = 0; r < replications; ++r) agg.seeds.push_back(replication_seed(base_seed, r));

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        agg.replications[i] = run_replication(model, agg.seeds[i]);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // Reduce in replication order so the statistics are thread-count independent.
  std::vector<double> daily;
  daily.reserve(n);
  for (const auto& r : agg.replications) daily.push_back(r.daily_throughput());
  std::tie(agg.mean_daily_throughput, agg.ci_half_width) = mean_and_half_width(daily);

  agg.resource_ids = agg.replications.front().resource_ids;
  agg.mean_utilization.assign(agg.resource_ids.size(), 0.0);
  for (const auto& r : agg.replications) {
    for (std::size_t i = 0; i < r.utilization.size(); ++i) agg.mean_utilization[i] += r.utilization[i];
    agg.mean_wip += static_cast<double>(r.wip);
    agg.mean_completed += static_cast<double>(r.completed);
  }
  for (auto& u : agg.mean_utilization) u /= static_cast<double>(n);
  agg.mean_wip /= static_cast<double>(n);
  agg.mean_completed /= static_cast<double>(n);
  return agg;
}

}  // namespace hrc
