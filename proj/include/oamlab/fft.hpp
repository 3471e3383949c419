#pragma once

#include "oamlab/field.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <span>
#include <tuple>

namespace oam::fft
{

enum class Direction
{
  forward,
  inverse,
};

namespace detail
{

// Plans are created with FFTW_ESTIMATE so the chosen algorithm (and hence every output
// bit) does not depend on timing. FFTW_UNALIGNED lets one plan serve any std::vector.
class PlanStore
{
public:
  static PlanStore& instance()
  {
    static PlanStore store;
    return store;
  }

  fftw_plan plan_2d(int n, Direction dir) { return get({2, n, 1, dir}); }
  fftw_plan plan_rows(int length, int rows, Direction dir) { return get({1, length, rows, dir}); }

  PlanStore(const PlanStore&) = delete;
  PlanStore& operator=(const PlanStore&) = delete;

private:
  using Key = std::tuple<int, int, int, Direction>;

  PlanStore() = default;
  ~PlanStore()
  {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const Key& key)
  {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const auto [rank, n, howmany, dir] = key;
    const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const std::size_t count = rank == 2 ? std::size_t(n) * n : std::size_t(n) * howmany;
    fftw_complex* scratch = fftw_alloc_complex(count);
    fftw_plan plan = nullptr;
    if (rank == 2) {
      plan = fftw_plan_dft_2d(n, n, scratch, scratch, sign, flags);
    } else {
      int len = n;
      plan = fftw_plan_many_dft(1, &len, howmany, scratch, nullptr, 1, n, scratch, nullptr, 1, n, sign,
                                flags);
    }
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

inline fftw_complex* as_fftw(std::span<cplx> data)
{
  return reinterpret_cast<fftw_complex*>(data.data());
}

} // namespace detail

/// In-place 2-D DFT of an n x n row-major array. Forward is unscaled; inverse divides by n^2.
inline void transform_2d(std::span<cplx> data, int n, Direction dir)
{
  fftw_plan plan = detail::PlanStore::instance().plan_2d(n, dir);
  fftw_execute_dft(plan, detail::as_fftw(data), detail::as_fftw(data));
  if (dir == Direction::inverse) {
    const double s = 1.0 / (double(n) * double(n));
    for (auto& v : data) v *= s;
  }
}

/// In-place unscaled 1-D DFT of each contiguous row of length `length`.
inline void transform_rows(std::span<cplx> data, int length, int rows, Direction dir)
{
  fftw_plan plan = detail::PlanStore::instance().plan_rows(length, rows, dir);
  fftw_execute_dft(plan, detail::as_fftw(data), detail::as_fftw(data));
}

/// Angular spatial frequency of DFT bin i for n samples at spacing `step`.
inline double angular_frequency(int i, int n, double step)
{
  const int f = i < n / 2 ? i : i - n;
  return 2.0 * std::numbers::pi * f / (n * step);
}

} // namespace oam::fft
