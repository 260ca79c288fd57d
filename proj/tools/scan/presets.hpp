// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"

namespace mfunclab::cli {

/// decoupled, generic, counterexample.
std::vector<std::string> preset_names();

/// Full configuration of a shipped preset. Throws ConfigError for an unknown
/// name.
json preset_config(std::string_view name);

}  // namespace mfunclab::cli
