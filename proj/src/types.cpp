// SPDX-License-Identifier: Apache-2.0
#include "irsopt/types.hpp"

#include <cmath>
#include <string>

namespace irsopt {

void SystemConfig::validate() const {
  if (num_bs_antennas <= 0) throw ConfigError("system.num_bs_antennas: must be positive");
  if (elements_per_irs <= 0) throw ConfigError("system.elements_per_irs: must be positive");
  if (num_irs <= 0) throw ConfigError("system.num_irs: must be positive");
  if (num_users <= 0) throw ConfigError("system.num_users: must be positive");
  if (!(max_power_watts > 0.0)) throw ConfigError("system.max_power_watts: must be positive");
  if (noise_power_watts.size() != num_users)
    throw ConfigError("system.noise_power_watts: expected one entry per user, got " +
                      std::to_string(noise_power_watts.size()));
  if ((noise_power_watts.array() <= 0.0).any())
    throw ConfigError("system.noise_power_watts: entries must be positive");
  if (weights.size() != num_users)
    throw ConfigError("system.weights: expected one entry per user, got " +
                      std::to_string(weights.size()));
  if ((weights.array() < 0.0).any())
    throw ConfigError("system.weights: entries must be nonnegative");
  if (quantization_order && *quantization_order < 2)
    throw ConfigError("system.quantization_order: must be >= 2 when set");
}

RealVector uniform_weights(int num_users) { return RealVector::Ones(num_users); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace irsopt
