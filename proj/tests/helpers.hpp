#pragma once

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "procflow/procflow.hpp"

namespace testutil {

using namespace procflow;

/// Shared p-state for single-process scaffolding models.
struct NullShared {};

inline Value null_shared_json(const NullShared&) { return Value(nullptr); }

/// A periodic timer that fires "fire" every `period`, re-aligned to
/// eps-order 0 (the deadline subtracts the eps its update gained).
struct TimerState {
  std::int64_t fires = 0;
  double period = 5.0;
};

inline ProcessModel<TimerState, NullShared> timer_model() {
  ProcessModel<TimerState, NullShared> m;
  auto seg = passive_segment<TimerState, NullShared>();
  seg.time_to_output = [](const TimerState& p) {
    return HyTime(p.period, p.fires == 0 ? 0 : -1);
  };
  seg.transition = [](TimerState& p, HyTime, NullShared&) { p.fires += 1; };
  seg.continuous = [](const TimerState& p, HyTime, const NullShared&) {
    return Value(p.fires);
  };
  seg.discrete = [](const TimerState&, const NullShared&) {
    return Value("fire");
  };
  m.segments = {std::move(seg)};
  m.state = [](const TimerState& p) { return Value{{"fires", p.fires}}; };
  return m;
}

inline BaseModel<NullShared> timer_base(double period) {
  BaseModel<NullShared> m;
  m.initial = [] { return NullShared{}; };
  m.live = [](const NullShared&) { return std::set<std::string>{"timer"}; };
  m.process = [period](const std::string&) {
    return make_process<TimerState, NullShared>(
        timer_model(), [period] { return TimerState{0, period}; });
  };
  m.output = [](const NullShared&, const ProcessOutputs& outs) {
    return outs.front().second;
  };
  m.state = null_shared_json;
  return m;
}

/// Handshake: A's scheduled transition enables B, B's re-enables A exactly
/// once, so one base transition runs one scheduled plus two conditional
/// re-activations.
struct HandshakeShared {
  int stage = 0;
};

struct HandshakeAState {
  int phase = 0;  // 0 armed, 1 waiting, 2 done
};

struct HandshakeBState {
  bool done = false;
};

inline BaseModel<HandshakeShared> handshake_base() {
  ProcessModel<HandshakeAState, HandshakeShared> a;
  a.index = [](const HandshakeAState& p) {
    return static_cast<std::size_t>(p.phase);
  };
  auto armed = passive_segment<HandshakeAState, HandshakeShared>();
  armed.time_to_output = [](const HandshakeAState&) { return HyTime(1.0); };
  armed.transition = [](HandshakeAState& p, HyTime, HandshakeShared& q) {
    q.stage = 1;
    p.phase = 1;
  };
  auto waiting = passive_segment<HandshakeAState, HandshakeShared>();
  waiting.condition = [](const HandshakeAState&, const HandshakeShared& q) {
    return q.stage == 2;
  };
  waiting.transition = [](HandshakeAState& p, HyTime, HandshakeShared& q) {
    q.stage = 3;
    p.phase = 2;
  };
  a.segments = {std::move(armed), std::move(waiting),
                passive_segment<HandshakeAState, HandshakeShared>()};
  a.state = [](const HandshakeAState& p) { return Value{{"phase", p.phase}}; };

  ProcessModel<HandshakeBState, HandshakeShared> b;
  b.index = [](const HandshakeBState& p) {
    return static_cast<std::size_t>(p.done ? 1 : 0);
  };
  auto idle = passive_segment<HandshakeBState, HandshakeShared>();
  idle.condition = [](const HandshakeBState&, const HandshakeShared& q) {
    return q.stage == 1;
  };
  idle.transition = [](HandshakeBState& p, HyTime, HandshakeShared& q) {
    q.stage = 2;
    p.done = true;
  };
  b.segments = {std::move(idle),
                passive_segment<HandshakeBState, HandshakeShared>()};
  b.state = [](const HandshakeBState& p) { return Value{{"done", p.done}}; };

  BaseModel<HandshakeShared> m;
  m.initial = [] { return HandshakeShared{}; };
  m.live = [](const HandshakeShared&) {
    return std::set<std::string>{"A", "B"};
  };
  m.process = [a, b](const std::string& name) -> ProcessFactory<HandshakeShared> {
    if (name == "A") {
      return make_process<HandshakeAState, HandshakeShared>(
          a, [] { return HandshakeAState{}; });
    }
    return make_process<HandshakeBState, HandshakeShared>(
        b, [] { return HandshakeBState{}; });
  };
  m.output = [](const HandshakeShared& q, const ProcessOutputs&) {
    FlowValue v;
    v.continuous = q.stage;
    return v;
  };
  m.state = [](const HandshakeShared& q) { return Value{{"stage", q.stage}}; };
  return m;
}

/// Steps a component like the root loop but yields control after every step.
template <class Fn>
RunSummary drive(Component& c, HyTime end, Fn&& per_step) {
  RunSummary summary;
  const FlowValue null_input{};
  HyTime clock = c.next_time();
  while (clock < end) {
    c.output(clock);
    c.transition(clock, null_input);
    ++summary.steps;
    per_step(clock);
    clock = c.next_time();
  }
  summary.final_clock = clock;
  return summary;
}

inline RunSummary drive(Component& c, HyTime end) {
  return drive(c, end, [](HyTime) {});
}

/// Resolves "net/sub/#exec" style paths inside a state snapshot.
inline Value state_at_path(const Value& root_state, const std::string& path) {
  Value node = root_state;
  std::size_t start = path.find('/');
  while (start != std::string::npos) {
    std::size_t next = path.find('/', start + 1);
    const std::string part =
        path.substr(start + 1, next == std::string::npos ? std::string::npos
                                                         : next - start - 1);
    node = part == "#exec" ? node.at("executive") : node.at("children").at(part);
    start = next;
  }
  return node;
}

inline std::vector<TraceRecord> load_golden(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open golden file " + file);
  std::vector<TraceRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) records.push_back(parse_jsonl_line(line));
  }
  return records;
}

inline std::string describe(const TraceRecord& r) { return jsonl_line(r); }

}  // namespace testutil
