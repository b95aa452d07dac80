#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "procflow/component.hpp"
#include "procflow/errors.hpp"
#include "procflow/process.hpp"

namespace procflow {

/// Process output values in ranking order, paired with process names so
/// output functions can address them robustly.
using ProcessOutputs = std::vector<std::pair<std::string, FlowValue>>;

inline std::vector<std::string> lexicographic_rank(
    const std::set<std::string>& names) {
  return {names.begin(), names.end()};
}

/// A base model: shared p-state BS, input function, dynamic process set and
/// ranking, and the composed output function.
template <class BS>
struct BaseModel {
  /// Picks the initial p-state (from the valid initial set).
  std::function<BS()> initial;
  /// zeta: fold an arriving input value into the shared p-state.
  std::function<void(BS&, const FlowValue&)> input =
      [](BS&, const FlowValue&) {};
  /// Maps a process name to its behavior; must cover every name the
  /// current-processes function can produce.
  std::function<ProcessFactory<BS>(const std::string&)> process;
  /// pi: the set of live process names for a p-state.
  std::function<std::set<std::string>(const BS&)> live;
  /// sigma: deterministic ordering of a set of process names.
  std::function<std::vector<std::string>(const std::set<std::string>&)> rank =
      lexicographic_rank;
  /// Lambda_p: composes the process output values (in rank order) into the
  /// model output.
  std::function<FlowValue(const BS&, const ProcessOutputs&)> output =
      [](const BS&, const ProcessOutputs&) { return FlowValue{}; };
  /// Serialization hook for state snapshots.
  std::function<Value(const BS&)> state = [](const BS&) {
    return Value(nullptr);
  };
};

/// Runtime of one base model: the shared p-state plus one simulator per
/// live process. Exactly one process runs at any moment; every state change
/// within an instant t becomes visible at t + eps.
template <class BS>
class BaseComponent : public Component {
 public:
  BaseComponent(BaseModel<BS> model, TraceContext ctx, KernelConfig config,
                HyTime start = HyTime::zero())
      : model_(std::move(model)), ctx_(std::move(ctx)), config_(config) {
    p_ = model_.initial();
    reconcile(start);
  }

  HyTime next_time() const override {
    HyTime next = HyTime::infinity();
    for (const auto& [name, entry] : procs_) {
      next = min(next, entry.sim->next_time());
    }
    return next;
  }

  void output(HyTime t) override {
    ProcessOutputs outs;
    outs.reserve(procs_.size());
    for (const auto& name : ranked(live_names())) {
      auto& sim = *procs_.at(name).sim;
      sim.output(t, p_);
      outs.emplace_back(name, sim.value());
    }
    v_ = model_.output(p_, outs);
    if (ctx_.tracing()) ctx_.emit(t, TraceKind::Output, Value(*v_));
  }

  const FlowValue& value() const override {
    if (!v_) throw KernelError("component value read before any output action");
    return *v_;
  }

  void transition(HyTime t, const FlowValue& x) override {
    if (t != next_time() && !x.has_event()) return;
    if (ctx_.tracing()) {
      ctx_.emit(t, TraceKind::Transition, Value{{"x", Value(x)}});
    }

    model_.input(p_, x);
    const HyTime created_at = t + HyTime::epsilon();
    reconcile(created_at);

    // The scheduled set is fixed by the next-times found now; simulators
    // created below never join it within this instant. Generation numbers
    // detect names removed and re-created within the instant.
    std::map<std::string, std::uint64_t> transitioned;
    std::map<std::string, std::uint64_t> imminent_gen;
    std::set<std::string> imminent;
    for (const auto& [name, entry] : procs_) {
      if (entry.sim->next_time() == t) {
        imminent.insert(name);
        imminent_gen[name] = entry.gen;
      }
    }
    for (const auto& name : ranked(imminent)) {
      auto it = procs_.find(name);
      if (it == procs_.end() || it->second.gen != imminent_gen[name]) {
        continue;  // removed earlier in this instant
      }
      run_transition(name, it->second.sim.get(), t, Trigger::Scheduled);
      transitioned[name] = it->second.gen;
      reconcile(created_at);
    }

    // Condition-triggered re-activations, highest rank first, until no live
    // process can run. A process may appear several times here.
    std::size_t iterations = 0;
    for (;;) {
      std::set<std::string> runnable;
      for (const auto& [name, entry] : procs_) {
        if (entry.sim->condition(p_)) runnable.insert(name);
      }
      if (runnable.empty()) break;
      if (++iterations > config_.max_conditional_iterations) {
        throw ModelError("conditional livelock in " + ctx_.path + " at t=" +
                         t.str() + " after " + std::to_string(iterations - 1) +
                         " iterations");
      }
      const std::string name = ranked(runnable).front();
      auto& entry = procs_.at(name);
      run_transition(name, entry.sim.get(), t, Trigger::Conditional);
      transitioned[name] = entry.gen;
      reconcile(created_at);
    }

    for (const auto& [name, gen] : transitioned) {
      auto it = procs_.find(name);
      if (it != procs_.end() && it->second.gen == gen) it->second.sim->update(t);
    }
  }

  Value state_json() const override {
    Value procs = Value::object();
    for (const auto& [name, entry] : procs_) {
      procs[name] = entry.sim->state_json();
    }
    Value j;
    j["p"] = model_.state(p_);
    j["v"] = v_ ? Value(*v_) : Value(nullptr);
    j["processes"] = std::move(procs);
    return j;
  }

  const std::string& path() const override { return ctx_.path; }

  const BS& shared_state() const { return p_; }
  std::size_t process_count() const { return procs_.size(); }
  bool has_process(const std::string& name) const {
    return procs_.count(name) != 0;
  }

 private:
  struct ProcEntry {
    std::unique_ptr<ProcessSimulator<BS>> sim;
    std::uint64_t gen = 0;
  };

  std::set<std::string> live_names() const {
    std::set<std::string> names;
    for (const auto& [name, entry] : procs_) names.insert(name);
    return names;
  }

  std::vector<std::string> ranked(const std::set<std::string>& names) const {
    auto seq = model_.rank(names);
    if (seq.size() != names.size() ||
        std::set<std::string>(seq.begin(), seq.end()) != names) {
      throw ModelError("ranking is not a permutation of its input in " +
                       ctx_.path);
    }
    return seq;
  }

  void run_transition(const std::string& name, ProcessSimulator<BS>* sim,
                      HyTime t, Trigger trigger) {
    sim->transition(t, p_, trigger);
    if (ctx_.tracing()) {
      ctx_.emit(t, TraceKind::ProcessTransition,
                Value{{"process", name}, {"trigger", to_string(trigger)}});
    }
  }

  /// Aligns the simulator map with pi(p): new names get fresh simulators
  /// whose transition time is tl_for_new, removed names are dropped.
  void reconcile(HyTime tl_for_new) {
    const auto desired = model_.live(p_);
    for (auto it = procs_.begin(); it != procs_.end();) {
      if (!desired.count(it->first)) {
        it = procs_.erase(it);
      } else {
        ++it;
      }
    }
    for (const auto& name : desired) {
      if (!procs_.count(name)) {
        procs_[name] = {model_.process(name)(tl_for_new), ++next_gen_};
      }
    }
  }

  BaseModel<BS> model_;
  TraceContext ctx_;
  KernelConfig config_;
  BS p_;
  std::map<std::string, ProcEntry> procs_;
  std::uint64_t next_gen_ = 0;
  std::optional<FlowValue> v_;
};

}  // namespace procflow
