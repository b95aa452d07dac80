#pragma once

#include <chrono>
#include <cstdint>

#include "procflow/component.hpp"
#include "procflow/errors.hpp"
#include "procflow/hytime.hpp"
#include "procflow/value.hpp"

namespace procflow {

struct RunSummary {
  std::uint64_t steps = 0;
  HyTime final_clock;
  double wall_seconds = 0.0;
};

/// Drives a root component until its next transition time reaches `end`
/// (strictly: events at exactly `end` are not executed). Each step computes
/// the output before the transition so every value read is causally sound.
/// The root input is the null flow, so the component's model must declare a
/// null continuous input interface. Trace records flow through the sink the
/// component was built with.
inline RunSummary run_simulation(Component& c, HyTime end) {
  const auto wall_start = std::chrono::steady_clock::now();
  RunSummary summary;
  const FlowValue null_input{};
  HyTime clock = c.next_time();
  while (clock < end) {
    c.output(clock);
    c.transition(clock, null_input);
    ++summary.steps;
    HyTime next = c.next_time();
    if (!(clock < next)) {
      throw KernelError("clock failed to advance past " + clock.str());
    }
    clock = next;
  }
  summary.final_clock = clock;
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    wall_start)
          .count();
  return summary;
}

}  // namespace procflow
