#pragma once

#include <functional>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>
#include <iostream>

namespace oam
{

enum class ErrorCode
{
  invalid_argument,
  grid_mismatch,
  zero_power,
  interpolation_out_of_range,
  quadrature_nonconvergence,
  no_bracket,
  symmetry_violation,
  domain_error,
  config_error,
  missing_results,
};

inline std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::grid_mismatch: return "grid-mismatch";
    case ErrorCode::zero_power: return "zero-power";
    case ErrorCode::interpolation_out_of_range: return "interpolation-out-of-range";
    case ErrorCode::quadrature_nonconvergence: return "quadrature-nonconvergence";
    case ErrorCode::no_bracket: return "no-bracket";
    case ErrorCode::symmetry_violation: return "symmetry-violation";
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::config_error: return "config-error";
    case ErrorCode::missing_results: return "missing-results";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

enum class WarningCode
{
  aliasing,
  sampling_violation,
  mass_deficit,
};

inline std::string_view to_string(WarningCode code)
{
  switch (code) {
    case WarningCode::aliasing: return "aliasing-warning";
    case WarningCode::sampling_violation: return "sampling-violation";
    case WarningCode::mass_deficit: return "mass-deficit";
  }
  return "unknown";
}

struct Warning
{
  WarningCode code;
  std::string message;
};

using WarningHandler = std::function<void(const Warning&)>;

namespace detail
{

struct WarningSink
{
  std::mutex mutex;
  WarningHandler handler;
  std::set<std::string> seen;
};

inline WarningSink& warning_sink()
{
  static WarningSink sink;
  return sink;
}

} // namespace detail

/// Installs a process-wide warning handler and returns the previous one.
/// An empty handler restores the default (print each distinct message once to stderr).
inline WarningHandler set_warning_handler(WarningHandler handler)
{
  auto& sink = detail::warning_sink();
  std::lock_guard lock(sink.mutex);
  return std::exchange(sink.handler, std::move(handler));
}

inline void warn(WarningCode code, std::string message)
{
  auto& sink = detail::warning_sink();
  std::lock_guard lock(sink.mutex);
  Warning w{code, std::move(message)};
  if (sink.handler) {
    sink.handler(w);
    return;
  }
  std::string key = std::string(to_string(code)) + ": " + w.message;
  if (sink.seen.insert(key).second)
    std::cerr << "warning: " << key << '\n';
}

/// Collects warnings for the lifetime of the object.
class ScopedWarningCapture
{
public:
  ScopedWarningCapture()
  {
    previous_ = set_warning_handler([this](const Warning& w) { captured_.push_back(w); });
  }
  ~ScopedWarningCapture() { set_warning_handler(std::move(previous_)); }

  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

  // Handler runs under the sink mutex, so reads after the emitting call are safe.
  const std::vector<Warning>& warnings() const { return captured_; }

  bool contains(WarningCode code) const
  {
    for (const auto& w : captured_)
      if (w.code == code) return true;
    return false;
  }

private:
  WarningHandler previous_;
  std::vector<Warning> captured_;
};

} // namespace oam
