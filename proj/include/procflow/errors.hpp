#pragma once

#include <stdexcept>
#include <string>

namespace procflow {

/// Ordering or causality violation inside the kernel itself (reading an
/// output value before any output action, querying a process before its
/// last transition time, ...). These indicate kernel bugs, not model bugs.
struct KernelError : std::logic_error {
  explicit KernelError(const std::string& what) : std::logic_error(what) {}
};

/// Defect in a user model: conditional livelock, invalid topology, unknown
/// model name, a ranking that is not a permutation.
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid run configuration (bad parameter value, unknown parameter).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace procflow
