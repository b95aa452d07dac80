#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "procflow/hytime.hpp"
#include "procflow/trace.hpp"
#include "procflow/value.hpp"

namespace procflow {

struct KernelConfig {
  /// Upper bound on condition-triggered process re-activations within one
  /// base transition; exceeding it is reported as a model defect.
  std::size_t max_conditional_iterations = 10000;
};

/// Where a component sits in the tree and where its records go. A null sink
/// disables tracing entirely.
struct TraceContext {
  std::string path;
  TraceSink* sink = nullptr;

  TraceContext child(const std::string& name) const {
    return {path + "/" + name, sink};
  }

  bool tracing() const { return sink != nullptr; }

  void emit(const HyTime& t, TraceKind kind, Value payload) const {
    if (sink) sink->push({t, path, kind, std::move(payload)});
  }
};

/// The black-box simulation protocol shared by base and network components.
/// A coordinator only ever needs these five actions: next transition time,
/// output at an instant, read the stored output value, transition with an
/// input, and (for inspection) a serialized state snapshot.
class Component {
 public:
  virtual ~Component() = default;

  /// N: time of the next scheduled transition; +infinity when passive.
  virtual HyTime next_time() const = 0;

  /// Omega: compute and store the output value for instant t. Must run
  /// before transition(t, ...) at the same instant.
  virtual void output(HyTime t) = 0;

  /// V: the stored output value.
  virtual const FlowValue& value() const = 0;

  /// Delta: state transition at instant t under input x.
  virtual void transition(HyTime t, const FlowValue& x) = 0;

  /// Deterministic snapshot of the full component state.
  virtual Value state_json() const = 0;

  virtual const std::string& path() const = 0;
};

}  // namespace procflow
