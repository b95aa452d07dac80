#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "procflow/network.hpp"
#include "procflow/registry.hpp"

namespace procflow::models {

/// The exact continuous flow published by the sampling demo source.
inline double quadratic_flow(double t) { return t * t; }

/// Sampling demo: a source base model emits f(t) = t^2 as an exact
/// continuous flow; a sink base model holds two sampler processes with
/// periods 0.5 and 0.7 that pull the flow asynchronously through the sink's
/// input function.
namespace detail {

struct SamplingSourceState {};

struct FlowProcState {
  double start = 0.0;
};

inline ProcessModel<FlowProcState, SamplingSourceState> flow_proc_model() {
  ProcessModel<FlowProcState, SamplingSourceState> m;
  auto seg = passive_segment<FlowProcState, SamplingSourceState>();
  seg.continuous = [](const FlowProcState& p, HyTime e,
                      const SamplingSourceState&) {
    return Value(quadratic_flow(p.start + e.real));
  };
  m.segments = {std::move(seg)};
  m.state = [](const FlowProcState& p) { return Value{{"start", p.start}}; };
  return m;
}

inline BaseModel<SamplingSourceState> sampling_source_model() {
  BaseModel<SamplingSourceState> m;
  m.initial = [] { return SamplingSourceState{}; };
  m.live = [](const SamplingSourceState&) {
    return std::set<std::string>{"flow"};
  };
  m.process = [](const std::string&) {
    return make_process<FlowProcState, SamplingSourceState>(
        flow_proc_model(), [] { return FlowProcState{}; });
  };
  m.output = [](const SamplingSourceState&, const ProcessOutputs& outs) {
    FlowValue v;
    v.continuous = outs.front().second.continuous;
    return v;
  };
  return m;
}

struct SamplingSinkState {
  double last_input = 0.0;
  std::map<std::string, std::vector<double>> samples;
};

struct SamplerState {
  double period = 0.0;
  std::int64_t fires = 0;
};

inline ProcessModel<SamplerState, SamplingSinkState> sampler_model(
    std::string name) {
  ProcessModel<SamplerState, SamplingSinkState> m;
  auto seg = passive_segment<SamplerState, SamplingSinkState>();
  seg.time_to_input = [](const SamplerState& p) {
    return HyTime(p.period, p.fires == 0 ? 0 : -1);
  };
  seg.transition = [name](SamplerState& p, HyTime, SamplingSinkState& q) {
    p.fires += 1;
    q.samples[name].push_back(q.last_input);
  };
  m.segments = {std::move(seg)};
  m.state = [](const SamplerState& p) {
    return Value{{"period", p.period}, {"fires", p.fires}};
  };
  return m;
}

inline BaseModel<SamplingSinkState> sampling_sink_model() {
  BaseModel<SamplingSinkState> m;
  m.initial = [] { return SamplingSinkState{}; };
  m.input = [](SamplingSinkState& q, const FlowValue& x) {
    if (x.continuous.is_number()) q.last_input = x.continuous.get<double>();
  };
  m.live = [](const SamplingSinkState&) {
    return std::set<std::string>{"sampler-a", "sampler-b"};
  };
  m.process = [](const std::string& name) {
    const double period = name == "sampler-a" ? 0.5 : 0.7;
    return make_process<SamplerState, SamplingSinkState>(
        sampler_model(name), [period] { return SamplerState{period, 0}; });
  };
  m.output = [](const SamplingSinkState& q, const ProcessOutputs&) {
    FlowValue v;
    v.continuous = q.last_input;
    return v;
  };
  m.state = [](const SamplingSinkState& q) {
    return Value{{"last_input", q.last_input}, {"samples", q.samples}};
  };
  return m;
}

struct StaticExecState {};

inline Topology sampling_topology() {
  Topology top;
  top.components = {{"sink", "sink"}, {"source", "source"}};
  top.influencers = {{"sink", {"source"}}, {kNetName, {"sink"}}};
  top.inputs = {{"sink", identity_coupling()}};
  top.network_output = identity_coupling();
  return top;
}

inline BaseModel<StaticExecState> empty_exec_model() {
  BaseModel<StaticExecState> m;
  m.initial = [] { return StaticExecState{}; };
  m.live = [](const StaticExecState&) { return std::set<std::string>{}; };
  m.process = [](const std::string&) -> ProcessFactory<StaticExecState> {
    throw ModelError("static executive declares no processes");
  };
  return m;
}

}  // namespace detail

inline NetworkModel sampling_demo_model() {
  NetworkModel net;
  net.executive = [](const TraceContext& ctx, const KernelConfig& cfg,
                     HyTime start) {
    return std::make_unique<BasicExecutiveComponent<detail::StaticExecState>>(
        detail::empty_exec_model(),
        [](const detail::StaticExecState&) { return detail::sampling_topology(); },
        ctx, cfg, start);
  };
  net.models = {
      {"source",
       [](const TraceContext& ctx, const KernelConfig& cfg, HyTime start) {
         return std::make_unique<BaseComponent<detail::SamplingSourceState>>(
             detail::sampling_source_model(), ctx, cfg, start);
       }},
      {"sink",
       [](const TraceContext& ctx, const KernelConfig& cfg, HyTime start) {
         return std::make_unique<BaseComponent<detail::SamplingSinkState>>(
             detail::sampling_sink_model(), ctx, cfg, start);
       }},
  };
  return net;
}

inline ModelInfo sampling_demo_info() {
  ModelInfo info;
  info.description =
      "exact quadratic flow read asynchronously by two periodic samplers";
  info.params = {};
  info.build = [](const BuildContext& ctx) -> std::unique_ptr<Component> {
    return std::make_unique<NetworkComponent>(
        sampling_demo_model(), TraceContext{"sampling-demo", ctx.sink},
        ctx.config);
  };
  return info;
}

}  // namespace procflow::models
