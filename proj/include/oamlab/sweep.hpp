#pragma once

#include "oamlab/entanglement.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

namespace oam
{

/// Runs fn(0) ... fn(count - 1) on `workers` threads. The first exception stops the
/// remaining work and is rethrown on the caller.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn)
{
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  const int threads = std::clamp<int>(workers, 1, static_cast<int>(std::max<std::size_t>(count, 1)));
  if (threads == 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(body);
  }
  if (error) std::rethrow_exception(error);
}

inline std::vector<double> log_spaced(double lo, double hi, int count)
{
  if (count < 1 || !(lo > 0.0) || !(hi >= lo))
    throw Error(ErrorCode::invalid_argument, "log_spaced needs 0 < lo <= hi and count >= 1");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

struct SweepSpec
{
  GridSpec grid;
  double w = 1.0;
  double wavenumber = kDefaultWavenumber;
  std::vector<int> l0s;
  std::vector<double> lambdas;
  double aperture_radius = 3.0;
  int aperture_power = 12;
  double z = 0.0;
  int workers = 1;
};

/// Every (lambda, l0) biphoton case, sorted by (l0, lambda). One task per lambda so its
/// transmission map is built once and shared by all l0.
inline std::vector<EntanglementResult> run_sweep(const SweepSpec& spec)
{
  struct Modes
  {
    ScalarField plus, minus;
  };
  std::vector<Modes> modes;
  modes.reserve(spec.l0s.size());
  for (int l0 : spec.l0s) {
    auto plus = lg_mode(spec.grid, {l0, spec.w}, spec.wavenumber);
    auto minus = lg_mode(spec.grid, {-l0, spec.w}, spec.wavenumber);
    modes.push_back({std::move(plus), std::move(minus)});
  }

  const std::size_t nl = spec.lambdas.size();
  std::vector<EntanglementResult> grid_results(nl * spec.l0s.size());
  parallel_for(nl, spec.workers, [&](std::size_t i) {
    const TransmissionMap t(spec.grid, {spec.lambdas[i], spec.aperture_radius, spec.aperture_power});
    for (std::size_t j = 0; j < spec.l0s.size(); ++j)
      grid_results[i * spec.l0s.size() + j] =
        biphoton_from_modes(spec.l0s[j], modes[j].plus, modes[j].minus, t, spec.z);
  });

  std::sort(grid_results.begin(), grid_results.end(), [](const auto& a, const auto& b) {
    return a.l0 != b.l0 ? a.l0 < b.l0 : a.lambda_width < b.lambda_width;
  });
  return grid_results;
}

// ---------------------------------------------------------------------------
// Result records

inline constexpr const char* kResultColumns =
  "l0,lambda,delta_phi,b_numeric,b_analytic,b_gaussian,concurrence_numeric,concurrence_universal";

inline void write_results_csv(std::ostream& out, const std::vector<EntanglementResult>& rows)
{
  out << kResultColumns << '\n';
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{},{},{},{},{}\n", r.l0, r.lambda_width, r.delta_phi, r.b_numeric, r.b_analytic,
                       r.b_gaussian, r.concurrence, universal_concurrence(r.l0, r.delta_phi));
}

} // namespace oam
