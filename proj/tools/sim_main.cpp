#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "procflow/models/all.hpp"
#include "procflow/procflow.hpp"

namespace {

using namespace procflow;

int log_level() {
  const char* v = std::getenv("SIM_LOG");
  if (!v) return 0;
  std::string s(v);
  if (s == "debug") return 2;
  if (s == "info") return 1;
  return 0;
}

/// Echoes every record to stderr while forwarding to the real sink.
class DebugTeeSink final : public TraceSink {
 public:
  explicit DebugTeeSink(TraceSink& inner) : inner_(inner) {}
  void push(const TraceRecord& r) override {
    std::cerr << jsonl_line(r) << '\n';
    inner_.push(r);
  }
  void flush() override { inner_.flush(); }

 private:
  TraceSink& inner_;
};

void print_list(const ModelRegistry& registry, bool as_json) {
  if (as_json) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& [name, info] : registry.all()) {
      nlohmann::ordered_json params = nlohmann::ordered_json::array();
      for (const auto& p : info.params) {
        params.push_back({{"name", p.name},
                          {"description", p.description},
                          {"default", p.default_value}});
      }
      out.push_back({{"name", name},
                     {"description", info.description},
                     {"params", params}});
    }
    std::cout << out.dump() << '\n';
    return;
  }
  for (const auto& [name, info] : registry.all()) {
    std::cout << name << " - " << info.description << '\n';
    for (const auto& p : info.params) {
      std::cout << "    " << p.name << ": " << p.description;
      if (!p.default_value.empty()) std::cout << " (default " << p.default_value << ")";
      std::cout << '\n';
    }
  }
}

/// Leftover "--key value" / "--key=value" pairs become model parameters, so
/// `sim run dyntopo --switch-time 10` and `--param switch-time=10` agree.
bool collect_extra_params(const std::vector<std::string>& extras,
                          Params& params) {
  for (std::size_t i = 0; i < extras.size();) {
    std::string token = extras[i];
    if (token.rfind("--", 0) != 0) {
      std::cerr << "unexpected argument: " << token << '\n';
      return false;
    }
    token = token.substr(2);
    auto eq = token.find('=');
    if (eq != std::string::npos) {
      params[token.substr(0, eq)] = token.substr(eq + 1);
      ++i;
    } else if (i + 1 < extras.size()) {
      params[token] = extras[i + 1];
      i += 2;
    } else {
      std::cerr << "missing value for --" << token << '\n';
      return false;
    }
  }
  return true;
}

bool parse_param_assignments(const std::vector<std::string>& kvs,
                             Params& params) {
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "--param expects key=value, got: " << kv << '\n';
      return false;
    }
    params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return true;
}

int run_model(const ModelRegistry& registry, const std::string& model,
              double end, std::uint64_t seed, const Params& params,
              std::string out_path, const std::string& format,
              std::size_t max_cond_iters) {
  BuildContext ctx;
  ctx.seed = seed;
  ctx.params = params;
  ctx.config.max_conditional_iterations = max_cond_iters;

  // Validate the configuration before any file is created.
  try {
    ctx.sink = nullptr;
    registry.build(model, ctx);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (out_path.empty()) {
    out_path = format == "csv" ? "trace.csv" : "trace.jsonl";
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return 1;
  }
  std::unique_ptr<TraceSink> sink;
  if (format == "csv") {
    sink = std::make_unique<CsvSink>(file);
  } else {
    sink = std::make_unique<JsonlSink>(file);
  }
  std::unique_ptr<DebugTeeSink> tee;
  ctx.sink = sink.get();
  if (log_level() >= 2) {
    tee = std::make_unique<DebugTeeSink>(*sink);
    ctx.sink = tee.get();
  }
  if (log_level() >= 1) {
    std::cerr << "running " << model << " seed=" << seed << " end=" << end
              << " out=" << out_path << '\n';
  }

  try {
    auto component = registry.build(model, ctx);
    RunSummary summary = run_simulation(*component, HyTime(end));
    ctx.sink->flush();
    std::cout << "steps=" << summary.steps
              << " final_t=" << (summary.final_clock.is_infinite()
                                     ? "inf"
                                     : Value(summary.final_clock.real).dump())
              << " final_eps=" << summary.final_clock.eps
              << " wall_s=" << summary.wall_seconds << '\n';
    return 0;
  } catch (const ModelError& e) {
    std::cerr << "model defect: " << e.what() << '\n';
    return 2;
  } catch (const KernelError& e) {
    std::cerr << "kernel defect: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid process-interaction simulation runner"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list registered models");
  bool list_json = false;
  list->add_flag("--json", list_json, "machine-readable listing");

  auto* run = app.add_subcommand("run", "run a model and write its trace");
  run->allow_extras();
  std::string model;
  double end = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> param_kvs;
  std::string out_path;
  std::string format = "jsonl";
  std::size_t max_cond_iters = KernelConfig{}.max_conditional_iterations;
  run->add_option("model", model, "registered model name")->required();
  run->add_option("--end", end, "simulation end time (events at exactly end do not run)")
      ->required();
  run->add_option("--seed", seed, "root random seed");
  run->add_option("--param", param_kvs, "model parameter as key=value");
  run->add_option("--out", out_path, "trace output path");
  run->add_option("--format", format, "trace format")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  run->add_option("--max-cond-iters", max_cond_iters,
                  "conditional re-activation bound per transition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // usage errors are exit code 1; --help stays 0
    return app.exit(e) == 0 ? 0 : 1;
  }

  const auto registry = procflow::models::builtin_registry();

  if (list->parsed()) {
    print_list(registry, list_json);
    return 0;
  }

  procflow::Params params;
  if (!parse_param_assignments(param_kvs, params)) return 1;
  if (!collect_extra_params(run->remaining(), params)) return 1;
  if (end < 0.0) {
    std::cerr << "error: --end must be nonnegative\n";
    return 1;
  }
  return run_model(registry, model, end, seed, params, out_path, format,
                   max_cond_iters);
}
