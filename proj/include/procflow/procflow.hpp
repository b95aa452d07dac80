#pragma once

#include "procflow/base.hpp"
#include "procflow/component.hpp"
#include "procflow/errors.hpp"
#include "procflow/hytime.hpp"
#include "procflow/network.hpp"
#include "procflow/process.hpp"
#include "procflow/registry.hpp"
#include "procflow/rng.hpp"
#include "procflow/root.hpp"
#include "procflow/trace.hpp"
#include "procflow/value.hpp"
