#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "procflow/network.hpp"
#include "procflow/registry.hpp"

namespace procflow::models {

/// Dynamic-topology demo: a ticker source feeds sink A until the executive
/// switches its p-state, which reroutes the flow to sink B. An event at
/// exactly the switch instant still travels the old topology; the new one
/// takes effect an infinitesimal later.
namespace detail {

struct TickerSourceState {};

struct TickerState {
  std::int64_t count = 0;
  double period = 1.0;
};

inline ProcessModel<TickerState, TickerSourceState> ticker_model() {
  ProcessModel<TickerState, TickerSourceState> m;
  auto seg = passive_segment<TickerState, TickerSourceState>();
  seg.time_to_output = [](const TickerState& p) {
    return HyTime(p.period, p.count == 0 ? 0 : -1);
  };
  seg.transition = [](TickerState& p, HyTime, TickerSourceState&) {
    p.count += 1;
  };
  seg.continuous = [](const TickerState& p, HyTime, const TickerSourceState&) {
    return Value(p.count);
  };
  seg.discrete = [](const TickerState& p, const TickerSourceState&) {
    return Value("e" + std::to_string(p.count + 1));
  };
  m.segments = {std::move(seg)};
  m.state = [](const TickerState& p) {
    return Value{{"count", p.count}, {"period", p.period}};
  };
  return m;
}

inline BaseModel<TickerSourceState> ticker_source_model(double period) {
  BaseModel<TickerSourceState> m;
  m.initial = [] { return TickerSourceState{}; };
  m.live = [](const TickerSourceState&) {
    return std::set<std::string>{"ticker"};
  };
  m.process = [period](const std::string&) {
    return make_process<TickerState, TickerSourceState>(
        ticker_model(), [period] { return TickerState{0, period}; });
  };
  m.output = [](const TickerSourceState&, const ProcessOutputs& outs) {
    return outs.front().second;
  };
  return m;
}

struct ReceiverState {
  std::vector<std::string> received;
};

inline BaseModel<ReceiverState> receiver_model() {
  BaseModel<ReceiverState> m;
  m.initial = [] { return ReceiverState{}; };
  m.input = [](ReceiverState& q, const FlowValue& x) {
    if (x.has_event()) q.received.push_back(x.discrete->get<std::string>());
  };
  m.live = [](const ReceiverState&) { return std::set<std::string>{}; };
  m.process = [](const std::string&) -> ProcessFactory<ReceiverState> {
    throw ModelError("receiver declares no processes");
  };
  m.output = [](const ReceiverState& q, const ProcessOutputs&) {
    FlowValue v;
    v.continuous = static_cast<std::int64_t>(q.received.size());
    return v;
  };
  m.state = [](const ReceiverState& q) {
    return Value{{"received", q.received}};
  };
  return m;
}

struct RouterExecState {
  std::string phase = "A";
};

struct SwitcherState {
  double switch_time = 0.0;
  bool done = false;
};

inline ProcessModel<SwitcherState, RouterExecState> switcher_model() {
  ProcessModel<SwitcherState, RouterExecState> m;
  m.index = [](const SwitcherState& p) {
    return static_cast<std::size_t>(p.done ? 1 : 0);
  };
  auto armed = passive_segment<SwitcherState, RouterExecState>();
  armed.time_to_output = [](const SwitcherState& p) {
    return HyTime(p.switch_time, 0);
  };
  armed.transition = [](SwitcherState& p, HyTime, RouterExecState& q) {
    p.done = true;
    q.phase = "B";
  };
  armed.discrete = [](const SwitcherState&, const RouterExecState&) {
    return Value("switch");
  };
  m.segments = {std::move(armed),
                passive_segment<SwitcherState, RouterExecState>()};
  m.state = [](const SwitcherState& p) {
    return Value{{"switch_time", p.switch_time}, {"done", p.done}};
  };
  return m;
}

inline BaseModel<RouterExecState> router_exec_model(double switch_time) {
  BaseModel<RouterExecState> m;
  m.initial = [] { return RouterExecState{}; };
  m.live = [](const RouterExecState&) {
    return std::set<std::string>{"switcher"};
  };
  m.process = [switch_time](const std::string&) {
    return make_process<SwitcherState, RouterExecState>(
        switcher_model(),
        [switch_time] { return SwitcherState{switch_time, false}; });
  };
  m.output = [](const RouterExecState& q, const ProcessOutputs&) {
    FlowValue v;
    v.continuous = q.phase;
    return v;
  };
  m.state = [](const RouterExecState& q) { return Value{{"phase", q.phase}}; };
  return m;
}

inline Topology router_topology(const RouterExecState& p) {
  Topology top;
  top.components = {{"A", "sink"}, {"B", "sink"}, {"source", "source"}};
  top.influencers[p.phase == "A" ? "A" : "B"] = {"source"};
  top.influencers[kNetName] = {"source"};
  top.inputs = {{"A", identity_coupling()}, {"B", identity_coupling()}};
  top.network_output = identity_coupling();
  return top;
}

}  // namespace detail

inline NetworkModel dynamic_topology_model(double switch_time, double period) {
  NetworkModel net;
  net.executive = [switch_time](const TraceContext& ctx,
                                const KernelConfig& cfg, HyTime start) {
    return std::make_unique<BasicExecutiveComponent<detail::RouterExecState>>(
        detail::router_exec_model(switch_time), detail::router_topology, ctx,
        cfg, start);
  };
  net.models = {
      {"source",
       [period](const TraceContext& ctx, const KernelConfig& cfg,
                HyTime start) {
         return std::make_unique<BaseComponent<detail::TickerSourceState>>(
             detail::ticker_source_model(period), ctx, cfg, start);
       }},
      {"sink",
       [](const TraceContext& ctx, const KernelConfig& cfg, HyTime start) {
         return std::make_unique<BaseComponent<detail::ReceiverState>>(
             detail::receiver_model(), ctx, cfg, start);
       }},
  };
  return net;
}

inline ModelInfo dynamic_topology_info() {
  ModelInfo info;
  info.description =
      "executive reroutes a ticker from sink A to sink B at a switch time";
  info.params = {
      {"switch-time", "instant at which the executive switches routing",
       "10.0"},
      {"period", "ticker emission period", "1.0"},
  };
  info.build = [](const BuildContext& ctx) -> std::unique_ptr<Component> {
    double switch_time = param_double(ctx.params, "switch-time", 10.0);
    double period = param_double(ctx.params, "period", 1.0);
    if (switch_time <= 0.0) throw ConfigError("switch-time must be positive");
    if (period <= 0.0) throw ConfigError("period must be positive");
    return std::make_unique<NetworkComponent>(
        dynamic_topology_model(switch_time, period),
        TraceContext{"dyntopo", ctx.sink}, ctx.config);
  };
  return info;
}

}  // namespace procflow::models
