#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "procflow/errors.hpp"
#include "procflow/hytime.hpp"
#include "procflow/value.hpp"

namespace procflow {

/// One behavior segment of a process: the split functions active while the
/// index function selects it. PS is the process's own p-state, BS the shared
/// p-state of the enclosing base model.
template <class PS, class BS>
struct ProcessSegment {
  /// rho: time to the next sampling re-activation.
  std::function<HyTime(const PS&)> time_to_input;
  /// omega: time to the next output re-activation.
  std::function<HyTime(const PS&)> time_to_output;
  /// varkappa: can the process run right now, given the shared p-state?
  std::function<bool(const PS&, const BS&)> condition;
  /// delta: re-activation body; may rewrite both p-states.
  std::function<void(PS&, HyTime elapsed, BS&)> transition;
  /// Continuous output, defined at every instant of the segment.
  std::function<Value(const PS&, HyTime elapsed, const BS&)> continuous;
  /// Partial discrete output, read only at the omega instant.
  std::function<Value(const PS&, const BS&)> discrete;
};

/// A segment that never wakes up and outputs nothing.
template <class PS, class BS>
ProcessSegment<PS, BS> passive_segment() {
  return {
      [](const PS&) { return HyTime::infinity(); },
      [](const PS&) { return HyTime::infinity(); },
      [](const PS&, const BS&) { return false; },
      [](PS&, HyTime, BS&) {},
      [](const PS&, HyTime, const BS&) { return Value(nullptr); },
      [](const PS&, const BS&) { return Value(nullptr); },
  };
}

/// The behavior contract of one process kind: an index function selecting
/// the active segment plus the segment table, and a serialization hook for
/// state snapshots.
template <class PS, class BS>
struct ProcessModel {
  std::function<std::size_t(const PS&)> index = [](const PS&) { return 0; };
  std::vector<ProcessSegment<PS, BS>> segments;
  std::function<Value(const PS&)> state = [](const PS&) {
    return Value(nullptr);
  };
};

enum class Trigger { Scheduled, Conditional };

inline const char* to_string(Trigger t) {
  return t == Trigger::Scheduled ? "scheduled" : "conditional";
}

/// Runtime interface of one process inside its parent base component, with
/// the process p-state type erased behind the shared p-state BS.
template <class BS>
class ProcessSimulator {
 public:
  virtual ~ProcessSimulator() = default;

  /// N: tL + min{rho, omega} at the current index.
  virtual HyTime next_time() const = 0;
  /// Omega: store the output value for instant t.
  virtual void output(HyTime t, const BS& shared) = 0;
  /// V: the stored output value.
  virtual const FlowValue& value() const = 0;
  /// K: condition check; pure.
  virtual bool condition(const BS& shared) const = 0;
  /// Delta: re-activation at t; mutates own and shared p-state.
  virtual void transition(HyTime t, BS& shared, Trigger trigger) = 0;
  /// U: move the transition time to t + eps.
  virtual void update(HyTime t) = 0;

  virtual HyTime last_transition() const = 0;
  virtual Value state_json() const = 0;
};

template <class PS, class BS>
class BasicProcessSimulator final : public ProcessSimulator<BS> {
 public:
  BasicProcessSimulator(ProcessModel<PS, BS> model, PS initial, HyTime tl)
      : model_(std::move(model)), p_(std::move(initial)), tl_(tl) {}

  HyTime next_time() const override {
    const auto& seg = segment();
    return tl_ + min(seg.time_to_input(p_), seg.time_to_output(p_));
  }

  void output(HyTime t, const BS& shared) override {
    if (t < tl_) {
      throw KernelError("process output queried before its transition time");
    }
    const auto& seg = segment();
    HyTime elapsed = t - tl_;
    FlowValue v;
    v.continuous = seg.continuous(p_, elapsed, shared);
    // The discrete part is active exactly when elapsed == omega(p); compared
    // in absolute time so it uses the same arithmetic as next_time().
    if (t == tl_ + seg.time_to_output(p_)) {
      v.discrete = seg.discrete(p_, shared);
    }
    v_ = std::move(v);
  }

  const FlowValue& value() const override {
    if (!v_) throw KernelError("process value read before any output action");
    return *v_;
  }

  bool condition(const BS& shared) const override {
    return segment().condition(p_, shared);
  }

  void transition(HyTime t, BS& shared, Trigger trigger) override {
    if (trigger == Trigger::Scheduled) {
      if (t != next_time()) {
        throw KernelError("scheduled process transition at a non-imminent time");
      }
    } else if (!condition(shared)) {
      throw KernelError("conditional process transition without condition");
    }
    // A simulator created earlier in the same instant has tL = t + eps;
    // its elapsed time is clamped to zero.
    HyTime elapsed = t < tl_ ? HyTime::zero() : t - tl_;
    segment().transition(p_, elapsed, shared);
  }

  void update(HyTime t) override { tl_ = t + HyTime::epsilon(); }

  HyTime last_transition() const override { return tl_; }

  Value state_json() const override {
    Value j;
    j["p"] = model_.state(p_);
    j["tL"] = tl_;
    j["v"] = v_ ? Value(*v_) : Value(nullptr);
    return j;
  }

  const PS& state() const { return p_; }

 private:
  const ProcessSegment<PS, BS>& segment() const {
    std::size_t i = model_.index(p_);
    if (i >= model_.segments.size()) {
      throw ModelError("process index out of range: " + std::to_string(i));
    }
    return model_.segments[i];
  }

  ProcessModel<PS, BS> model_;
  PS p_;
  HyTime tl_;
  std::optional<FlowValue> v_;
};

/// Creates a simulator for a process with a fresh initial p-state; tl is the
/// creation-time rule of the caller (exact start time at component setup,
/// t + eps for processes created during a transition).
template <class BS>
using ProcessFactory =
    std::function<std::unique_ptr<ProcessSimulator<BS>>(HyTime tl)>;

template <class PS, class BS>
ProcessFactory<BS> make_process(ProcessModel<PS, BS> model,
                                std::function<PS()> initial) {
  return [model = std::move(model),
          initial = std::move(initial)](HyTime tl) {
    return std::make_unique<BasicProcessSimulator<PS, BS>>(model, initial(),
                                                           tl);
  };
}

}  // namespace procflow
