#pragma once

#include <optional>
#include <utility>

#include <json.hpp>

namespace procflow {

/// Flow values are type-erased JSON values so that components with
/// different model-declared value sets compose behind one interface.
using Value = nlohmann::json;

/// A hybrid flow value: the continuous part exists at every instant (JSON
/// null serves as the unit value for models without a continuous set); the
/// discrete part is absent (the null mark) except at event instants.
struct FlowValue {
  Value continuous = nullptr;
  std::optional<Value> discrete{};

  bool has_event() const { return discrete.has_value(); }

  friend bool operator==(const FlowValue&, const FlowValue&) = default;
};

inline FlowValue continuous_flow(Value c) { return {std::move(c), {}}; }

inline FlowValue event_flow(Value c, Value d) {
  return {std::move(c), std::move(d)};
}

/// Serialized as {"c": ..., "d": ...}; "d" is JSON null for the null mark.
inline void to_json(nlohmann::json& j, const FlowValue& v) {
  j = nlohmann::json::object();
  j["c"] = v.continuous;
  j["d"] = v.discrete.has_value() ? *v.discrete : Value(nullptr);
}

inline void from_json(const nlohmann::json& j, FlowValue& v) {
  v.continuous = j.at("c");
  const auto& d = j.at("d");
  if (d.is_null()) {
    v.discrete.reset();
  } else {
    v.discrete = d;
  }
}

}  // namespace procflow
