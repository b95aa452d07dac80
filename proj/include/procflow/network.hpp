#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "procflow/base.hpp"
#include "procflow/component.hpp"
#include "procflow/errors.hpp"

namespace procflow {

/// Reserved names inside a topology: the network's executive and the
/// network itself (its input when used as an influencer, its output when
/// used as the coupling target).
inline constexpr const char* kExecName = "#exec";
inline constexpr const char* kNetName = "#net";

/// A coupling function, split so that null discrete flows are preserved by
/// construction: the discrete map only runs when at least one influencer
/// value carries an event.
struct CouplingFn {
  std::function<Value(const std::vector<FlowValue>&)> continuous;
  std::function<std::optional<Value>(const std::vector<FlowValue>&)> discrete;

  FlowValue apply(const std::vector<FlowValue>& in) const {
    FlowValue out;
    out.continuous = continuous ? continuous(in) : Value(nullptr);
    const bool any_event =
        std::any_of(in.begin(), in.end(),
                    [](const FlowValue& v) { return v.has_event(); });
    if (any_event && discrete) out.discrete = discrete(in);
    return out;
  }
};

/// Passes the single influencer value through unchanged.
inline CouplingFn identity_coupling() {
  return {
      [](const std::vector<FlowValue>& in) {
        return in.empty() ? Value(nullptr) : in[0].continuous;
      },
      [](const std::vector<FlowValue>& in) -> std::optional<Value> {
        return in.empty() ? std::nullopt : in[0].discrete;
      },
  };
}

/// Network composition and coupling as produced by an executive: the child
/// component set (instance name -> model name), the influencer sequences for
/// every child, the executive and the network itself, the per-child input
/// functions, and the network output function.
struct Topology {
  std::map<std::string, std::string> components;
  std::map<std::string, std::vector<std::string>> influencers;
  std::map<std::string, CouplingFn> inputs;
  CouplingFn network_output;

  const std::vector<std::string>& influencers_of(const std::string& name) const {
    static const std::vector<std::string> empty;
    auto it = influencers.find(name);
    return it == influencers.end() ? empty : it->second;
  }
};

struct TopologyViolation {
  int constraint = 0;
  std::string message;
};

/// Structural validation. Constraints 1-3 guard the executive and the
/// network against removal and self-influence; 4 and 5 check that every
/// influencer name resolves within the topology.
inline std::optional<TopologyViolation> validate_topology(const Topology& top) {
  if (top.components.count(kNetName)) {
    return TopologyViolation{1, "the network itself is listed as a component"};
  }
  if (top.components.count(kExecName)) {
    return TopologyViolation{2, "the executive is listed as a component"};
  }
  const auto& net_inf = top.influencers_of(kNetName);
  for (const auto& j : net_inf) {
    if (j == kNetName) {
      return TopologyViolation{3, "the network influences its own output"};
    }
    if (j != kExecName && !top.components.count(j)) {
      return TopologyViolation{4, "unknown network influencer: " + j};
    }
  }
  for (const auto& [name, seq] : top.influencers) {
    if (name == kNetName) continue;
    if (name != kExecName && !top.components.count(name)) {
      return TopologyViolation{5, "influencers declared for unknown component: " + name};
    }
    for (const auto& j : seq) {
      if (j != kNetName && j != kExecName && !top.components.count(j)) {
        return TopologyViolation{5, "unknown influencer " + j + " of " + name};
      }
    }
  }
  for (const auto& [name, fn] : top.inputs) {
    if (name != kExecName && !top.components.count(name)) {
      return TopologyViolation{5, "input function declared for unknown component: " + name};
    }
  }
  return std::nullopt;
}

/// An executive component: a base component extended with the topology
/// action (Gamma).
class ExecutiveComponentBase : public Component {
 public:
  virtual Topology topology() const = 0;
};

/// Wraps a base component over shared p-state BS together with the topology
/// function gamma evaluated on that p-state.
template <class BS>
class BasicExecutiveComponent final : public ExecutiveComponentBase {
 public:
  BasicExecutiveComponent(BaseModel<BS> model,
                          std::function<Topology(const BS&)> gamma,
                          TraceContext ctx, KernelConfig config,
                          HyTime start = HyTime::zero())
      : base_(std::move(model), std::move(ctx), config, start),
        gamma_(std::move(gamma)) {}

  Topology topology() const override { return gamma_(base_.shared_state()); }

  HyTime next_time() const override { return base_.next_time(); }
  void output(HyTime t) override { base_.output(t); }
  const FlowValue& value() const override { return base_.value(); }
  void transition(HyTime t, const FlowValue& x) override {
    base_.transition(t, x);
  }
  Value state_json() const override { return base_.state_json(); }
  const std::string& path() const override { return base_.path(); }

  const BS& shared_state() const { return base_.shared_state(); }

 private:
  BaseComponent<BS> base_;
  std::function<Topology(const BS&)> gamma_;
};

/// Instantiates a child component at a path with the given start time.
using ChildFactory = std::function<std::unique_ptr<Component>(
    const TraceContext&, const KernelConfig&, HyTime start)>;

/// A network model: the executive factory plus the registry of child model
/// factories the executive's topologies may name.
struct NetworkModel {
  std::function<std::unique_ptr<ExecutiveComponentBase>(
      const TraceContext&, const KernelConfig&, HyTime start)>
      executive;
  std::map<std::string, ChildFactory> models;
};

/// Runtime of a network: the executive plus one component per name in the
/// current topology. Children are handled purely through the component
/// protocol. During a transition every child runs before the executive, so
/// a topology produced at instant t only routes flows after t.
class NetworkComponent final : public Component {
 public:
  NetworkComponent(NetworkModel model, TraceContext ctx, KernelConfig config,
                   HyTime start = HyTime::zero())
      : model_(std::move(model)), ctx_(std::move(ctx)), config_(config) {
    exec_ = model_.executive(ctx_.child(kExecName), config_, start);
    reconcile_topology(start, HyTime::zero(), /*initial=*/true);
  }

  HyTime next_time() const override {
    HyTime next = exec_->next_time();
    for (const auto& [name, child] : children_) {
      next = min(next, child->next_time());
    }
    return next;
  }

  void output(HyTime t) override {
    for (auto& [name, child] : children_) child->output(t);
    exec_->output(t);
    std::vector<FlowValue> in;
    for (const auto& j : top_.influencers_of(kNetName)) in.push_back(value_of(j));
    v_ = top_.network_output.apply(in);
    if (ctx_.tracing()) ctx_.emit(t, TraceKind::Output, Value(*v_));
  }

  const FlowValue& value() const override {
    if (!v_) throw KernelError("network value read before any output action");
    return *v_;
  }

  void transition(HyTime t, const FlowValue& x) override {
    if (ctx_.tracing()) {
      ctx_.emit(t, TraceKind::Transition, Value{{"x", Value(x)}});
    }
    for (auto& [name, child] : children_) {
      child->transition(t, assemble_input(name, x));
    }
    exec_->transition(t, assemble_input(kExecName, x));
    reconcile_topology(t + HyTime::epsilon(), t);
  }

  Value state_json() const override {
    Value kids = Value::object();
    for (const auto& [name, child] : children_) kids[name] = child->state_json();
    Value j;
    j["v"] = v_ ? Value(*v_) : Value(nullptr);
    j["executive"] = exec_->state_json();
    j["children"] = std::move(kids);
    return j;
  }

  const std::string& path() const override { return ctx_.path; }

  const Topology& current_topology() const { return top_; }
  const Component& child(const std::string& name) const {
    return *children_.at(name);
  }
  const ExecutiveComponentBase& executive() const { return *exec_; }

 private:
  FlowValue assemble_input(const std::string& name, const FlowValue& x) const {
    std::vector<FlowValue> in;
    for (const auto& j : top_.influencers_of(name)) {
      in.push_back(j == kNetName ? x : value_of(j));
    }
    auto it = top_.inputs.find(name);
    return it == top_.inputs.end() ? CouplingFn{}.apply(in)
                                   : it->second.apply(in);
  }

  const FlowValue& value_of(const std::string& name) const {
    return name == kExecName ? exec_->value() : children_.at(name)->value();
  }

  void reconcile_topology(HyTime start_for_new, HyTime t,
                          bool initial = false) {
    Topology next = exec_->topology();
    if (auto violation = validate_topology(next)) {
      throw ModelError("invalid topology in " + ctx_.path + ": constraint " +
                       std::to_string(violation->constraint) + " (" +
                       violation->message + ")");
    }
    std::vector<std::string> removed;
    for (auto it = children_.begin(); it != children_.end();) {
      auto want = next.components.find(it->first);
      if (want == next.components.end() ||
          want->second != top_.components.at(it->first)) {
        removed.push_back(it->first);
        it = children_.erase(it);
      } else {
        ++it;
      }
    }
    std::vector<std::string> added;
    for (const auto& [name, model_name] : next.components) {
      if (children_.count(name)) continue;
      auto factory = model_.models.find(model_name);
      if (factory == model_.models.end()) {
        throw ModelError("unknown child model '" + model_name + "' in " +
                         ctx_.path);
      }
      children_[name] =
          factory->second(ctx_.child(name), config_, start_for_new);
      added.push_back(name);
    }
    if (!initial && ctx_.tracing() && (!added.empty() || !removed.empty())) {
      ctx_.emit(t, TraceKind::TopologyChange,
                Value{{"added", added}, {"removed", removed}});
    }
    top_ = std::move(next);
  }

  NetworkModel model_;
  TraceContext ctx_;
  KernelConfig config_;
  std::unique_ptr<ExecutiveComponentBase> exec_;
  std::map<std::string, std::unique_ptr<Component>> children_;
  Topology top_;
  std::optional<FlowValue> v_;
};

}  // namespace procflow
