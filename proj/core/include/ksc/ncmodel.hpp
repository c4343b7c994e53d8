#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ksc/scenarios.hpp"

namespace ksc {

/// One deterministic outcome assignment: a value in {-1,+1} per measurement.
struct DeterministicAssignment {
    std::vector<int> values;
};

/// Assignment number `index` in binary counting order: measurement 0 is the
/// least significant bit, bit 0 encodes -1 and bit 1 encodes +1.
DeterministicAssignment assignment_from_index(std::size_t n_measurements, std::uint32_t index);

/// Per-context correlators of a deterministic assignment: the product of the
/// assigned values over each context.
std::vector<double> assignment_correlators(const Scenario& s, const DeterministicAssignment& a);

struct ClassicalBound {
    double min = 0.0;
    double max = 0.0;
    DeterministicAssignment argmin;
    DeterministicAssignment argmax;
};

/// Exact extrema of sum gamma_k <C_k> over all 2^n deterministic assignments,
/// with the first witnessing assignment in counting order for each extremum.
/// Guarded at n <= 24 measurements.
ClassicalBound classical_bound(const Scenario& s);

/// An empirical behavior: one full-context correlator per context, in [-1,1].
struct Behavior {
    std::vector<double> correlators;
};

struct FeasibilityResult {
    bool feasible = false;
    /// Convex weights over deterministic assignments reproducing the behavior,
    /// as (assignment index, weight) pairs; present only when feasible.
    std::vector<std::pair<std::uint32_t, double>> certificate;
};

/// Decides whether the behavior lies in the convex hull of the deterministic
/// assignments' correlator vectors, i.e. whether one global joint outcome
/// distribution reproduces every context. Solved as a Phase-I simplex
/// feasibility problem over the 2^n assignment columns (dense tableau,
/// Bland's pivot rule). Guarded at n <= 12 measurements; tol must be > 0.
FeasibilityResult noncontextual_feasible(const Scenario& s, const Behavior& b, double tol = 1e-8);

}  // namespace ksc
