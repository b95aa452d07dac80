#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "procflow/component.hpp"
#include "procflow/errors.hpp"

namespace procflow {

using Params = std::map<std::string, std::string>;

struct BuildContext {
  std::uint64_t seed = 0;
  Params params;
  KernelConfig config;
  TraceSink* sink = nullptr;
};

struct ParamDoc {
  std::string name;
  std::string description;
  std::string default_value;
};

struct ModelInfo {
  std::string description;
  std::vector<ParamDoc> params;
  std::function<std::unique_ptr<Component>(const BuildContext&)> build;
};

/// Named, parameterized builders of root-ready components. Every registered
/// model accepts the null root input (null continuous input interface).
class ModelRegistry {
 public:
  void add(const std::string& name, ModelInfo info) {
    if (models_.count(name)) {
      throw ConfigError("duplicate model name: " + name);
    }
    models_.emplace(name, std::move(info));
  }

  const ModelInfo* find(const std::string& name) const {
    auto it = models_.find(name);
    return it == models_.end() ? nullptr : &it->second;
  }

  std::unique_ptr<Component> build(const std::string& name,
                                   const BuildContext& ctx) const {
    auto it = models_.find(name);
    if (it == models_.end()) throw ConfigError("unknown model: " + name);
    reject_unknown_params(it->second, ctx.params);
    return it->second.build(ctx);
  }

  const std::map<std::string, ModelInfo>& all() const { return models_; }

 private:
  static void reject_unknown_params(const ModelInfo& info, const Params& p) {
    std::set<std::string> known;
    for (const auto& d : info.params) known.insert(d.name);
    for (const auto& [k, v] : p) {
      if (!known.count(k)) throw ConfigError("unknown parameter: " + k);
    }
  }

  std::map<std::string, ModelInfo> models_;
};

inline double param_double(const Params& p, const std::string& key,
                           double fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  if (it->second == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("parameter " + key + " is not a number: " + it->second);
  }
}

inline std::string param_string(const Params& p, const std::string& key,
                                const std::string& fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

}  // namespace procflow
