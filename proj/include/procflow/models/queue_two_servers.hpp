#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "procflow/base.hpp"
#include "procflow/registry.hpp"
#include "procflow/rng.hpp"

namespace procflow::models {

/// One queue feeding two servers. A generator process pushes clients into a
/// FIFO held in the shared p-state; each server process waits on its
/// condition function (idle and queue nonempty) and starts service within
/// the same superdense instant as a qualifying arrival. Interarrival and
/// service times are exponential unless fixed by parameter.
struct QueueClient {
  std::int64_t id = 0;
  double arrival = 0.0;
};

struct QueueState {
  std::vector<QueueClient> fifo;
  std::int64_t arrivals = 0;
  std::int64_t started = 0;
  std::int64_t departures = 0;
  double total_wait = 0.0;
};

inline Value queue_state_json(const QueueState& p) {
  Value fifo = Value::array();
  for (const auto& c : p.fifo) {
    fifo.push_back(Value{{"id", c.id}, {"arrival", c.arrival}});
  }
  return Value{{"fifo", std::move(fifo)},
               {"arrivals", p.arrivals},
               {"started", p.started},
               {"departures", p.departures},
               {"total_wait", p.total_wait}};
}

namespace detail {

struct GenState {
  Xoshiro256StarStar rng;
  double gap = 0.0;
  double now = 0.0;
  std::int64_t next_id = 1;
  bool first = true;
};

struct ServerState {
  Xoshiro256StarStar rng;
  int busy = 0;
  std::int64_t client = 0;
  double service = 0.0;
  double completion_at = 0.0;
};

inline double draw_or_fixed(Xoshiro256StarStar& rng, double fixed,
                            double rate) {
  return fixed >= 0.0 ? fixed : rng.exponential(rate);
}

// Re-activations land on eps-order-0 instants: after the first transition
// tL carries one eps, which the deadline subtracts again.
inline HyTime aligned_delay(double d, bool first) {
  return HyTime(d, first ? 0 : -1);
}

inline ProcessModel<GenState, QueueState> generator_model(double fixed_gap,
                                                          double rate) {
  ProcessModel<GenState, QueueState> m;
  auto seg = passive_segment<GenState, QueueState>();
  seg.time_to_output = [](const GenState& p) {
    return aligned_delay(p.gap, p.first);
  };
  seg.transition = [fixed_gap, rate](GenState& p, HyTime, QueueState& q) {
    p.now += p.gap;
    q.fifo.push_back({p.next_id, p.now});
    q.arrivals += 1;
    p.next_id += 1;
    p.first = false;
    p.gap = draw_or_fixed(p.rng, fixed_gap, rate);
  };
  seg.discrete = [](const GenState& p, const QueueState&) {
    return Value("c" + std::to_string(p.next_id));
  };
  m.segments = {std::move(seg)};
  m.state = [](const GenState& p) {
    return Value{{"rng", p.rng},
                 {"gap", p.gap},
                 {"now", p.now},
                 {"next_id", p.next_id}};
  };
  return m;
}

inline ProcessModel<ServerState, QueueState> server_model(double fixed_service,
                                                          double rate) {
  ProcessModel<ServerState, QueueState> m;
  m.index = [](const ServerState& p) { return static_cast<std::size_t>(p.busy); };

  auto idle = passive_segment<ServerState, QueueState>();
  idle.condition = [](const ServerState&, const QueueState& q) {
    return !q.fifo.empty();
  };
  idle.transition = [fixed_service, rate](ServerState& p, HyTime,
                                          QueueState& q) {
    const QueueClient c = q.fifo.front();
    q.fifo.erase(q.fifo.begin());
    // Service begins now; "now" is either the head's arrival (the server
    // was idle) or this server's own completion instant (back-to-back).
    const double start = std::max(p.completion_at, c.arrival);
    q.total_wait += start - c.arrival;
    q.started += 1;
    p.client = c.id;
    p.service = draw_or_fixed(p.rng, fixed_service, rate);
    p.completion_at = start + p.service;
    p.busy = 1;
  };
  idle.continuous = [](const ServerState&, HyTime, const QueueState&) {
    return Value(0);
  };

  auto busy = passive_segment<ServerState, QueueState>();
  busy.time_to_output = [](const ServerState& p) {
    return HyTime(p.service, -1);
  };
  busy.transition = [](ServerState& p, HyTime, QueueState& q) {
    q.departures += 1;
    p.busy = 0;
    p.client = 0;
  };
  busy.continuous = [](const ServerState& p, HyTime, const QueueState&) {
    return Value(p.client);
  };
  busy.discrete = [](const ServerState& p, const QueueState&) {
    return Value("c" + std::to_string(p.client));
  };

  m.segments = {std::move(idle), std::move(busy)};
  m.state = [](const ServerState& p) {
    return Value{{"rng", p.rng},
                 {"busy", p.busy},
                 {"client", p.client},
                 {"service", p.service},
                 {"completion_at", p.completion_at}};
  };
  return m;
}

}  // namespace detail

inline BaseModel<QueueState> queue_two_servers_model(std::uint64_t seed,
                                                     double lambda, double mu,
                                                     double interarrival,
                                                     double service) {
  BaseModel<QueueState> m;
  m.initial = [] { return QueueState{}; };
  m.live = [](const QueueState&) {
    return std::set<std::string>{"gen", "s1", "s2"};
  };
  m.process = [=](const std::string& name) -> ProcessFactory<QueueState> {
    if (name == "gen") {
      return make_process<detail::GenState, QueueState>(
          detail::generator_model(interarrival, lambda), [=] {
            detail::GenState p;
            p.rng = Xoshiro256StarStar::stream(seed, "gen");
            p.gap = detail::draw_or_fixed(p.rng, interarrival, lambda);
            return p;
          });
    }
    return make_process<detail::ServerState, QueueState>(
        detail::server_model(service, mu), [=] {
          detail::ServerState p;
          p.rng = Xoshiro256StarStar::stream(seed, name);
          return p;
        });
  };
  // Output: queue length as the continuous flow, departing client ids as
  // the discrete flow.
  m.output = [](const QueueState& q, const ProcessOutputs& outs) {
    FlowValue v;
    v.continuous = static_cast<std::int64_t>(q.fifo.size());
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
  m.state = queue_state_json;
  return m;
}

inline ModelInfo queue_two_servers_info() {
  ModelInfo info;
  info.description = "one queue feeding two servers (M/M/2 by default)";
  info.params = {
      {"lambda", "arrival rate of the Poisson generator", "1.0"},
      {"mu", "service rate of each server", "0.75"},
      {"interarrival", "fixed interarrival time (inf = no arrivals); "
                       "overrides lambda",
       ""},
      {"service", "fixed service time; overrides mu", ""},
  };
  info.build = [](const BuildContext& ctx) -> std::unique_ptr<Component> {
    double lambda = param_double(ctx.params, "lambda", 1.0);
    double mu = param_double(ctx.params, "mu", 0.75);
    double interarrival = param_double(ctx.params, "interarrival", -1.0);
    double service = param_double(ctx.params, "service", -1.0);
    if (ctx.params.count("interarrival") && interarrival <= 0.0) {
      throw ConfigError("interarrival must be positive (or inf)");
    }
    if (ctx.params.count("service") &&
        !(service > 0.0 && service < std::numeric_limits<double>::infinity())) {
      throw ConfigError("service must be positive and finite");
    }
    if (interarrival < 0.0 && lambda <= 0.0) {
      throw ConfigError("lambda must be positive");
    }
    if (service < 0.0 && mu <= 0.0) {
      throw ConfigError("mu must be positive");
    }
    if (interarrival < 0.0 && service < 0.0 && lambda >= 2.0 * mu) {
      throw ConfigError("unstable rates: lambda must be below 2*mu");
    }
    return std::make_unique<BaseComponent<QueueState>>(
        queue_two_servers_model(ctx.seed, lambda, mu, interarrival, service),
        TraceContext{"mm2", ctx.sink}, ctx.config);
  };
  return info;
}

}  // namespace procflow::models
