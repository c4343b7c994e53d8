#pragma once

#include <random>

#include "ksc/linalg.hpp"

namespace ksc {

/// Full-rank random density matrix: M M^dag normalized to unit trace, with M
/// drawn entrywise from independent standard complex Gaussians.
CMat random_state(std::size_t dim, std::mt19937_64& rng);

/// Random Hermitian matrix (M + M^dag)/2 with complex Gaussian entries.
CMat random_hermitian(std::size_t dim, std::mt19937_64& rng);

}  // namespace ksc
