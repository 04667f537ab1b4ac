#pragma once

#include <string>

#include "maxbandit/bandit.hpp"

namespace maxbandit {

// Instance description file:
//   { "tail": {"A": .., "beta": .., "eps0": ..},
//     "arms": [ {"type": "power_tail", "mu_star": .., "A": .., "beta": ..},
//               {"type": "uniform", "lo": .., "hi": ..},
//               {"type": "point_mass", "mu_star": ..},
//               {"type": "mixture", "components":
//                   [ {"weight": .., "arm": {..}} , .. ]} ] }
// Unknown fields are rejected. Throws std::runtime_error with file/field
// context on malformed input.
BanditInstance load_instance(const std::string& path, bool checked = true);
BanditInstance parse_instance(const std::string& json_text, bool checked = true);

std::string instance_to_json(const BanditInstance& instance);

}  // namespace maxbandit
