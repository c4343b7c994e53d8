#pragma once

#include <cstdint>

// Runs the built-in self-verification suite (channel duality, picture
// equivalence, scenario algebra, classical bounds, thresholds, feasibility)
// and prints one line per check. Returns 0 when every check passes, 1
// otherwise. The seed drives all randomized sampling.
int run_verify(std::uint64_t seed);
