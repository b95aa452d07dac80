#pragma once

#include "procflow/models/active_client.hpp"
#include "procflow/models/dynamic_topology.hpp"
#include "procflow/models/queue_two_servers.hpp"
#include "procflow/models/sampling_demo.hpp"
#include "procflow/registry.hpp"

namespace procflow::models {

inline void register_builtin_models(ModelRegistry& registry) {
  registry.add("mm2", queue_two_servers_info());
  registry.add("active-client", active_client_info());
  registry.add("sampling-demo", sampling_demo_info());
  registry.add("dyntopo", dynamic_topology_info());
}

inline ModelRegistry builtin_registry() {
  ModelRegistry r;
  register_builtin_models(r);
  return r;
}

}  // namespace procflow::models
