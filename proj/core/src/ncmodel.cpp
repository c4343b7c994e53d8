#include "ksc/ncmodel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ksc {

namespace {

constexpr std::size_t kBoundGuard = 24;
constexpr std::size_t kFeasibilityGuard = 12;
constexpr double kPivotTol = 1e-10;

double assignment_value(const Scenario& s, std::uint32_t index) {
    double value = 0.0;
    for (std::size_t k = 0; k < s.contexts.size(); ++k) {
        int prod = 1;
        for (std::size_t idx : s.contexts[k]) {
            prod *= (index >> idx) & 1u ? 1 : -1;
        }
        value += s.inequality.gamma[k] * prod;
    }
    return value;
}

}  // namespace

DeterministicAssignment assignment_from_index(std::size_t n_measurements, std::uint32_t index) {
    DeterministicAssignment a;
    a.values.reserve(n_measurements);
    for (std::size_t i = 0; i < n_measurements; ++i) {
        a.values.push_back((index >> i) & 1u ? 1 : -1);
    }
    return a;
}

std::vector<double> assignment_correlators(const Scenario& s, const DeterministicAssignment& a) {
    if (a.values.size() != s.measurements.size()) {
        throw std::invalid_argument("assignment_correlators: assignment length " +
                                    std::to_string(a.values.size()) + " does not match " +
                                    std::to_string(s.measurements.size()) + " measurements");
    }
    std::vector<double> out;
    out.reserve(s.contexts.size());
    for (const auto& ctx : s.contexts) {
        int prod = 1;
        for (std::size_t idx : ctx) prod *= a.values.at(idx);
        out.push_back(static_cast<double>(prod));
    }
    return out;
}

ClassicalBound classical_bound(const Scenario& s) {
    const std::size_t n = s.measurements.size();
    if (n > kBoundGuard) {
        throw std::invalid_argument("classical_bound: " + std::to_string(n) +
                                    " measurements exceed the enumeration guard of " +
                                    std::to_string(kBoundGuard));
    }
    if (s.inequality.gamma.size() != s.contexts.size()) {
        throw std::invalid_argument("classical_bound: coefficient/context count mismatch");
    }
    ClassicalBound out;
    const std::uint64_t total = std::uint64_t(1) << n;
    for (std::uint64_t index = 0; index < total; ++index) {
        const double value = assignment_value(s, static_cast<std::uint32_t>(index));
        if (index == 0 || value < out.min) {
            out.min = value;
            out.argmin = assignment_from_index(n, static_cast<std::uint32_t>(index));
        }
        if (index == 0 || value > out.max) {
            out.max = value;
            out.argmax = assignment_from_index(n, static_cast<std::uint32_t>(index));
        }
    }
    return out;
}

namespace {

/// Phase-I simplex for  sum_s lambda_s c_s = b,  sum_s lambda_s = 1,
/// lambda >= 0. Minimizes the total artificial mass with Bland's rule; the
/// system is feasible when the optimum vanishes (within tol).
class PhaseOneSimplex {
public:
    PhaseOneSimplex(std::size_t n_rows, std::size_t n_cols)
        : rows_(n_rows), cols_(n_cols), tableau_(n_rows * (n_cols + 1), 0.0), basis_(n_rows, 0) {}

    double& at(std::size_t r, std::size_t c) { return tableau_[r * (cols_ + 1) + c]; }
    double& rhs(std::size_t r) { return tableau_[r * (cols_ + 1) + cols_]; }

    /// Runs to optimality; returns the residual artificial mass.
    double solve(std::size_t n_structural) {
        // Artificial columns occupy [n_structural, cols_); they start basic.
        for (std::size_t r = 0; r < rows_; ++r) basis_[r] = n_structural + r;

        // Reduced-cost row for  min sum(artificials): w_j = sum_r T[r][j].
        std::vector<double> wrow(cols_, 0.0);
        double wval = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < n_structural; ++c) wrow[c] += at(r, c);
            wval += rhs(r);
        }

        while (true) {
            // Bland: smallest structural index with a positive reduced cost.
            std::size_t entering = cols_;
            for (std::size_t c = 0; c < n_structural; ++c) {
                if (wrow[c] > kPivotTol) {
                    entering = c;
                    break;
                }
            }
            if (entering == cols_) break;

            // Ratio test; ties resolved by the smallest basic variable index.
            std::size_t leaving = rows_;
            double best_ratio = 0.0;
            for (std::size_t r = 0; r < rows_; ++r) {
                const double coef = at(r, entering);
                if (coef <= kPivotTol) continue;
                const double ratio = rhs(r) / coef;
                if (leaving == rows_ || ratio < best_ratio - kPivotTol ||
                    (std::abs(ratio - best_ratio) <= kPivotTol && basis_[r] < basis_[leaving])) {
                    leaving = r;
                    best_ratio = ratio;
                }
            }
            if (leaving == rows_) break;  // unbounded cannot happen here; bail defensively

            pivot(leaving, entering, wrow, wval);
        }
        return wval;
    }

    const std::vector<std::size_t>& basis() const { return basis_; }
    double basic_value(std::size_t r) { return rhs(r); }

private:
    void pivot(std::size_t prow, std::size_t pcol, std::vector<double>& wrow, double& wval) {
        const double pv = at(prow, pcol);
        for (std::size_t c = 0; c <= cols_; ++c) tableau_[prow * (cols_ + 1) + c] /= pv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == prow) continue;
            const double factor = at(r, pcol);
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c <= cols_; ++c) {
                tableau_[r * (cols_ + 1) + c] -= factor * tableau_[prow * (cols_ + 1) + c];
            }
        }
        const double wfactor = wrow[pcol];
        if (wfactor != 0.0) {
            for (std::size_t c = 0; c < cols_; ++c) wrow[c] -= wfactor * at(prow, c);
            wval -= wfactor * rhs(prow);
        }
        basis_[prow] = pcol;
    }

    std::size_t rows_, cols_;
    std::vector<double> tableau_;
    std::vector<std::size_t> basis_;
};

}  // namespace

FeasibilityResult noncontextual_feasible(const Scenario& s, const Behavior& b, double tol) {
    if (tol <= 0.0) throw std::domain_error("noncontextual_feasible: tol must be > 0");
    const std::size_t n = s.measurements.size();
    if (n > kFeasibilityGuard) {
        throw std::invalid_argument("noncontextual_feasible: " + std::to_string(n) +
                                    " measurements exceed the enumeration guard of " +
                                    std::to_string(kFeasibilityGuard));
    }
    const std::size_t m = s.contexts.size();
    if (b.correlators.size() != m) {
        throw std::invalid_argument("noncontextual_feasible: behavior has " +
                                    std::to_string(b.correlators.size()) + " correlators for " +
                                    std::to_string(m) + " contexts");
    }
    for (double c : b.correlators) {
        if (std::abs(c) > 1.0 + 1e-12) {
            throw std::invalid_argument("noncontextual_feasible: correlator " + std::to_string(c) +
                                        " outside [-1, 1]");
        }
    }

    const std::size_t n_cols = std::size_t(1) << n;  // one column per assignment
    const std::size_t n_rows = m + 1;                // context rows + normalization

    PhaseOneSimplex lp(n_rows, n_cols + n_rows);
    for (std::size_t col = 0; col < n_cols; ++col) {
        const auto corr =
            assignment_correlators(s, assignment_from_index(n, static_cast<std::uint32_t>(col)));
        for (std::size_t r = 0; r < m; ++r) lp.at(r, col) = corr[r];
        lp.at(m, col) = 1.0;
    }
    for (std::size_t r = 0; r < m; ++r) lp.rhs(r) = b.correlators[r];
    lp.rhs(m) = 1.0;

    // Flip rows with negative right-hand sides so the artificial basis starts
    // feasible, then install the artificial identity block.
    for (std::size_t r = 0; r < n_rows; ++r) {
        if (lp.rhs(r) < 0.0) {
            for (std::size_t c = 0; c < n_cols; ++c) lp.at(r, c) = -lp.at(r, c);
            lp.rhs(r) = -lp.rhs(r);
        }
        lp.at(r, n_cols + r) = 1.0;
    }

    const double residual = lp.solve(n_cols);

    FeasibilityResult result;
    result.feasible = residual <= tol;
    if (result.feasible) {
        for (std::size_t r = 0; r < n_rows; ++r) {
            const std::size_t var = lp.basis()[r];
            const double weight = lp.basic_value(r);
            if (var < n_cols && weight > 0.0) {
                result.certificate.emplace_back(static_cast<std::uint32_t>(var), weight);
            }
        }
    }
    return result;
}

}  // namespace ksc
