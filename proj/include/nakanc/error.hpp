#pragma once

#include <concepts>
#include <stdexcept>
#include <string>
#include <utility>

namespace nakanc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid or inconsistent user configuration (sweep specs, topologies).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

/// Lazy form for composed messages; make_what runs only on failure.
template <std::invocable F>
void require(bool ok, F&& make_what) {
  if (!ok) throw DomainError(std::forward<F>(make_what)());
}

}  // namespace detail
}  // namespace nakanc
