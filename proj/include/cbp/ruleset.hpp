#pragma once

#include <vector>

#include "cbp/rules.hpp"

namespace cbp {

// The compiled-in deduction rules, in stable order:
//   GR1a  role -> abstract services it performs
//   GR1b  abstract service -> any role that performs it
//   GR2   abstract service -> its business services
//   GR3a  P1 output feeds P2 input: dependency + coordinating MIS service
//   GR3b  same with P1/P2 swapped
//   GR3seq  sequence flow between two coordinated dependencies
//   GR4   common goal first word -> abstract services containing it
//   GR5a/b/c  power x duration -> topology type
const std::vector<Rule>& builtin_ruleset();

}  // namespace cbp
