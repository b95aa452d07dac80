#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "procflow/base.hpp"
#include "procflow/registry.hpp"

namespace procflow::models {

/// Active-client demo: transient clients are processes. A generator records
/// arrivals in the shared p-state; the current-processes function then
/// spawns one process per live client, so the simulator count tracks system
/// occupancy. Each client activates itself through its condition function at
/// the creation instant, serves for a fixed time, and removes itself on
/// departure.
struct ActiveClientState {
  std::set<std::int64_t> live_clients;
  std::int64_t admitted = 0;
  std::int64_t departed = 0;
};

namespace detail {

struct ArrivalGenState {
  std::vector<double> arrivals;  // absolute times, nondecreasing
  std::size_t pos = 0;
  double now = 0.0;
  std::int64_t next_id = 1;
  bool first = true;
};

inline ProcessModel<ArrivalGenState, ActiveClientState> arrival_gen_model() {
  ProcessModel<ArrivalGenState, ActiveClientState> m;
  auto seg = passive_segment<ArrivalGenState, ActiveClientState>();
  seg.time_to_output = [](const ArrivalGenState& p) {
    if (p.pos >= p.arrivals.size()) return HyTime::infinity();
    return HyTime(p.arrivals[p.pos] - p.now, p.first ? 0 : -1);
  };
  seg.transition = [](ArrivalGenState& p, HyTime, ActiveClientState& q) {
    const double target = p.arrivals[p.pos];
    p.now += target - p.now;
    // Clients sharing one arrival time are admitted as a burst.
    while (p.pos < p.arrivals.size() && p.arrivals[p.pos] == target) {
      q.live_clients.insert(p.next_id);
      q.admitted += 1;
      p.next_id += 1;
      p.pos += 1;
    }
    p.first = false;
  };
  seg.discrete = [](const ArrivalGenState& p, const ActiveClientState&) {
    return Value(p.next_id);
  };
  m.segments = {std::move(seg)};
  m.state = [](const ArrivalGenState& p) {
    return Value{{"pos", p.pos}, {"now", p.now}, {"next_id", p.next_id}};
  };
  return m;
}

struct ClientState {
  std::int64_t id = 0;
  double service = 0.0;
  int phase = 0;  // 0 arriving, 1 in service, 2 done
};

inline ProcessModel<ClientState, ActiveClientState> client_model() {
  ProcessModel<ClientState, ActiveClientState> m;
  m.index = [](const ClientState& p) { return static_cast<std::size_t>(p.phase); };

  auto arriving = passive_segment<ClientState, ActiveClientState>();
  arriving.condition = [](const ClientState&, const ActiveClientState&) {
    return true;
  };
  arriving.transition = [](ClientState& p, HyTime, ActiveClientState&) {
    p.phase = 1;
  };

  auto serving = passive_segment<ClientState, ActiveClientState>();
  serving.time_to_output = [](const ClientState& p) {
    return HyTime(p.service, -1);
  };
  serving.transition = [](ClientState& p, HyTime, ActiveClientState& q) {
    q.live_clients.erase(p.id);
    q.departed += 1;
    p.phase = 2;
  };
  serving.discrete = [](const ClientState& p, const ActiveClientState&) {
    return Value(p.id);
  };

  m.segments = {std::move(arriving), std::move(serving),
                passive_segment<ClientState, ActiveClientState>()};
  m.state = [](const ClientState& p) {
    return Value{{"id", p.id}, {"service", p.service}, {"phase", p.phase}};
  };
  return m;
}

inline std::vector<double> parse_arrivals(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(start, comma - start);
    try {
      std::size_t pos = 0;
      double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("bad arrival time: " + item);
    }
    start = comma + 1;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] <= 0.0 || (i > 0 && out[i] < out[i - 1])) {
      throw ConfigError("arrival times must be positive and nondecreasing");
    }
  }
  return out;
}

}  // namespace detail

inline BaseModel<ActiveClientState> active_client_model(
    std::vector<double> arrivals, double service) {
  BaseModel<ActiveClientState> m;
  m.initial = [] { return ActiveClientState{}; };
  m.live = [](const ActiveClientState& q) {
    std::set<std::string> names{"gen"};
    for (auto id : q.live_clients) names.insert("client" + std::to_string(id));
    return names;
  };
  m.process =
      [arrivals, service](const std::string& name) -> ProcessFactory<ActiveClientState> {
    if (name == "gen") {
      return make_process<detail::ArrivalGenState, ActiveClientState>(
          detail::arrival_gen_model(), [arrivals] {
            detail::ArrivalGenState p;
            p.arrivals = arrivals;
            return p;
          });
    }
    const std::int64_t id = std::stoll(name.substr(6));
    return make_process<detail::ClientState, ActiveClientState>(
        detail::client_model(), [id, service] {
          return detail::ClientState{id, service, 0};
        });
  };
  m.output = [](const ActiveClientState& q, const ProcessOutputs& outs) {
    FlowValue v;
    v.continuous = static_cast<std::int64_t>(q.live_clients.size());
    Value departures = Value::array();
    for (const auto& [name, out] : outs) {
      if (name != "gen" && out.has_event()) departures.push_back(*out.discrete);
    }
    if (departures.size() == 1) {
      v.discrete = departures[0];
    } else if (!departures.empty()) {
      v.discrete = std::move(departures);
    }
    return v;
  };
  m.state = [](const ActiveClientState& q) {
    return Value{{"live", q.live_clients},
                 {"admitted", q.admitted},
                 {"departed", q.departed}};
  };
  return m;
}

inline ModelInfo active_client_info() {
  ModelInfo info;
  info.description =
      "transient client processes created and destroyed at runtime";
  info.params = {
      {"arrivals", "comma-separated absolute arrival times",
       "1,2,2,3,5,5,5,6,8,9"},
      {"service", "time each client stays in the system", "1.5"},
  };
  info.build = [](const BuildContext& ctx) -> std::unique_ptr<Component> {
    auto arrivals = detail::parse_arrivals(
        param_string(ctx.params, "arrivals", "1,2,2,3,5,5,5,6,8,9"));
    double service = param_double(ctx.params, "service", 1.5);
    if (service <= 0.0) throw ConfigError("service must be positive");
    return std::make_unique<BaseComponent<ActiveClientState>>(
        active_client_model(std::move(arrivals), service),
        TraceContext{"active-client", ctx.sink}, ctx.config);
  };
  return info;
}

}  // namespace procflow::models
