#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "helpers.hpp"
#include "procflow/models/all.hpp"

using namespace procflow;
using testutil::NullShared;

namespace {

std::string golden_dir() {
  const char* dir = std::getenv("GOLDEN_DIR");
  REQUIRE(dir != nullptr);
  return dir;
}

void check_against_golden(const std::string& model, const Params& params,
                          std::uint64_t seed, double end,
                          const std::string& golden_file) {
  MemorySink sink;
  BuildContext ctx;
  ctx.seed = seed;
  ctx.params = params;
  ctx.sink = &sink;
  auto c = models::builtin_registry().build(model, ctx);
  run_simulation(*c, HyTime(end));

  auto expected = testutil::load_golden(golden_dir() + "/" + golden_file);
  REQUIRE(sink.records().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    INFO("record " << i << "\n  have: " << testutil::describe(sink.records()[i])
                   << "\n  want: " << testutil::describe(expected[i]));
    CHECK(sink.records()[i] == expected[i]);
  }
}

}  // namespace

TEST_CASE("mm2 deterministic trace matches its hand-derived golden file") {
  check_against_golden(
      "mm2", {{"interarrival", "1.0"}, {"service", "1.5"}}, 0, 4.2,
      "mm2_det.jsonl");
}

TEST_CASE("active-client trace matches its hand-derived golden file") {
  check_against_golden("active-client", {}, 0, 11.0, "active_client.jsonl");
}

TEST_CASE("sampling-demo trace matches its hand-derived golden file") {
  check_against_golden("sampling-demo", {}, 0, 1.6, "sampling_demo.jsonl");
}

TEST_CASE("dyntopo trace matches its hand-derived golden file") {
  check_against_golden("dyntopo", {{"switch-time", "2.0"}}, 0, 3.5,
                       "dyntopo.jsonl");
}

TEST_CASE("mm2 with no arrivals never transitions") {
  BuildContext ctx;
  ctx.params = {{"interarrival", "inf"}};
  auto c = models::builtin_registry().build("mm2", ctx);
  auto summary = run_simulation(*c, HyTime(100.0));
  CHECK(summary.steps == 0);
  CHECK(summary.final_clock == HyTime::infinity());
}

TEST_CASE("mm2 rejects invalid rates") {
  auto registry = models::builtin_registry();
  BuildContext bad;
  bad.params = {{"lambda", "0"}};
  CHECK_THROWS_AS(registry.build("mm2", bad), ConfigError);
  bad.params = {{"lambda", "2.0"}, {"mu", "0.9"}};  // lambda >= 2*mu
  CHECK_THROWS_AS(registry.build("mm2", bad), ConfigError);
  bad.params = {{"mu", "-1"}};
  CHECK_THROWS_AS(registry.build("mm2", bad), ConfigError);
  bad.params = {{"bogus", "1"}};
  CHECK_THROWS_AS(registry.build("mm2", bad), ConfigError);
}

TEST_CASE("active-client occupancy follows arrivals and departures") {
  BuildContext ctx;
  ctx.params = {{"arrivals", "1"}, {"service", "1.5"}};
  auto c = models::builtin_registry().build("active-client", ctx);
  std::vector<std::size_t> counts;
  auto count_procs = [&](HyTime) {
    counts.push_back(c->state_json().at("processes").size());
  };
  counts.push_back(c->state_json().at("processes").size());
  testutil::drive(*c, HyTime(3.0), count_procs);
  // generator alone, then generator plus the transient client, then alone
  CHECK(counts == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("a burst creates all its client simulators in one transition") {
  MemorySink sink;
  BuildContext ctx;
  ctx.params = {{"arrivals", "1,1,1"}, {"service", "5"}};
  ctx.sink = &sink;
  auto c = models::builtin_registry().build("active-client", ctx);
  std::uint64_t steps = 0;
  testutil::drive(*c, HyTime(2.0), [&](HyTime) {
    ++steps;
    CHECK(c->state_json().at("processes").size() == 4);  // gen + 3 clients
  });
  CHECK(steps == 1);
  std::size_t conditional = 0;
  for (const auto& r : sink.records()) {
    if (r.kind == TraceKind::ProcessTransition &&
        r.payload.at("trigger") == "conditional") {
      ++conditional;
    }
  }
  CHECK(conditional == 3);
}

TEST_CASE("active-client with no arrivals keeps a constant process set") {
  BuildContext ctx;
  ctx.params = {{"arrivals", ""}};
  auto c = models::builtin_registry().build("active-client", ctx);
  auto summary = run_simulation(*c, HyTime(50.0));
  CHECK(summary.steps == 0);
  CHECK(c->state_json().at("processes").size() == 1);
}

TEST_CASE("samplers store the exact closed-form flow values") {
  // Pair each sampler's firing instants with the stored values.
  std::map<std::string, std::vector<HyTime>> instants;
  MemorySink sink;
  BuildContext ctx;
  ctx.sink = &sink;
  auto traced = models::builtin_registry().build("sampling-demo", ctx);
  run_simulation(*traced, HyTime(3.0));
  for (const auto& r : sink.records()) {
    if (r.kind == TraceKind::ProcessTransition) {
      instants[r.payload.at("process")].push_back(r.time);
    }
  }
  auto state = traced->state_json();
  auto samples = state.at("children").at("sink").at("p").at("samples");
  for (const auto& [name, times] : instants) {
    auto values = samples.at(name).get<std::vector<double>>();
    REQUIRE(values.size() == times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      CHECK(values[i] == models::quadratic_flow(times[i].real));
    }
  }
  CHECK(instants["sampler-a"].size() == 5);  // 0.5, 1.0, 1.5, 2.0, 2.5
  CHECK(instants["sampler-b"].size() == 4);  // 0.7, 1.4, 2.1, 2.8
}

TEST_CASE("samplers sharing an instant read the same flow") {
  // Periods 0.5 and 0.75 meet exactly at 1.5 and 3.0 in double arithmetic.
  using models::detail::SamplerState;
  using models::detail::SamplingSinkState;
  auto m = models::detail::sampling_sink_model();
  m.process = [](const std::string& name) {
    const double period = name == "sampler-a" ? 0.5 : 0.75;
    return make_process<SamplerState, SamplingSinkState>(
        models::detail::sampler_model(name),
        [period] { return SamplerState{period, 0}; });
  };
  MemorySink sink;
  BaseComponent<SamplingSinkState> c(m, {"sink", &sink}, {});

  // Drive the sink directly, feeding the flow value as its input.
  HyTime clock = c.next_time();
  while (clock < HyTime(1.5)) {
    c.output(clock);
    c.transition(clock,
                 continuous_flow(models::quadratic_flow(clock.real)));
    clock = c.next_time();
  }
  REQUIRE(clock == HyTime(1.5));  // both samplers imminent at one instant
  c.output(clock);
  c.transition(clock, continuous_flow(models::quadratic_flow(clock.real)));

  const auto& samples = c.shared_state().samples;
  CHECK(samples.at("sampler-a").back() == samples.at("sampler-b").back());
  CHECK(samples.at("sampler-a").back() == models::quadratic_flow(1.5));

  std::vector<std::string> fired_at_15;
  for (const auto& r : sink.records()) {
    if (r.kind == TraceKind::ProcessTransition && r.time == HyTime(1.5)) {
      fired_at_15.push_back(r.payload.at("process"));
    }
  }
  CHECK(fired_at_15 == std::vector<std::string>{"sampler-a", "sampler-b"});
}

TEST_CASE("a switch beyond the horizon leaves sink B untouched") {
  BuildContext ctx;
  ctx.params = {{"switch-time", "100"}};
  auto c = models::builtin_registry().build("dyntopo", ctx);
  testutil::drive(*c, HyTime(20.0));
  auto state = c->state_json();
  CHECK(state.at("children").at("B").at("p").at("received") ==
        Value::array());
  CHECK(state.at("children").at("A").at("p").at("received").size() == 19);
}

TEST_CASE("the registry lists the four builtin models") {
  auto registry = models::builtin_registry();
  std::vector<std::string> names;
  for (const auto& [name, info] : registry.all()) names.push_back(name);
  CHECK(names == std::vector<std::string>{"active-client", "dyntopo", "mm2",
                                          "sampling-demo"});
  BuildContext ctx;
  CHECK_THROWS_AS(registry.build("nope", ctx), ConfigError);

  ModelRegistry empty;
  CHECK(empty.all().empty());
  CHECK(empty.find("mm2") == nullptr);
}

TEST_CASE("random streams are keyed by process name, not by ranking") {
  // Reversing sigma reshuffles which server serves which client, but every
  // process keeps drawing from its own (seed, name) stream: the generator's
  // trajectory is identical under both rankings.
  auto run_with_rank = [](bool reversed) {
    auto m = models::queue_two_servers_model(41, 1.0, 0.75, -1.0, -1.0);
    if (reversed) {
      m.rank = [](const std::set<std::string>& names) {
        return std::vector<std::string>(names.rbegin(), names.rend());
      };
    }
    BaseComponent<models::QueueState> c(std::move(m), {}, {});
    testutil::drive(c, HyTime(200.0));
    return c.state_json();
  };
  auto plain = run_with_rank(false);
  auto reversed = run_with_rank(true);
  CHECK(plain.at("processes").at("gen") == reversed.at("processes").at("gen"));
  CHECK(plain.at("p").at("arrivals") == reversed.at("p").at("arrivals"));
}
