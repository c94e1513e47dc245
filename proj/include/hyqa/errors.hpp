/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>

namespace hyqa {

/// Invalid model configuration or tuning parameter.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No enabled property had anything to evaluate.
class NoApplicablePropertiesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyqa
