#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ksc/channels.hpp"
#include "ksc/io.hpp"
#include "ksc/linalg.hpp"
#include "ksc/measure.hpp"
#include "ksc/ncmodel.hpp"
#include "ksc/noisescan.hpp"
#include "ksc/sampling.hpp"
#include "ksc/scenarios.hpp"

namespace {

using namespace ksc;

struct CheckList {
    bool all_pass = true;

    void report(const std::string& name, double residual, double tol) {
        const bool ok = residual <= tol;
        all_pass = all_pass && ok;
        std::printf("%s  %-28s residual=%s  tol=%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                    format_significant(residual, 3).c_str(), format_significant(tol, 3).c_str());
    }
};

std::vector<cplx> random_unit_vector(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> v(dim);
    double norm2 = 0.0;
    for (auto& entry : v) {
        entry = cplx(gauss(rng), gauss(rng));
        norm2 += std::norm(entry);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& entry : v) entry *= inv;
    return v;
}

double duality_residual(const Channel& ch, std::mt19937_64& rng, int pairs) {
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const CMat a = random_hermitian(ch.dim(), rng);
        const CMat rho = random_state(ch.dim(), rng);
        const cplx forward = trace(matmul(a, act(ch, rho)));
        const cplx pulled = trace(matmul(apply_dual(ch, a), rho));
        worst = std::max(worst, std::abs(forward - pulled));
    }
    return worst;
}

double kraus_vs_structured(std::size_t dim, double p) {
    const Channel structured = Channel::depolarizing(p, dim);
    const Channel kraus = dim == 2 ? qubit_depolarizing_kraus(p) : two_qubit_pauli_twirl_kraus(p);
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            CMat basis(dim, dim);
            basis(i, j) = cplx(1.0, 0.0);
            worst = std::max(worst, frob_dist(act(structured, basis), act(kraus, basis)));
        }
    }
    return worst;
}

}  // namespace

int run_verify(std::uint64_t seed) {
    CheckList checks;
    std::mt19937_64 rng(seed);

    const Scenario kcbs = kcbs_scenario();
    const Scenario pm = peres_mermin_scenario();

    {
        const auto vectors = kcbs_vectors();
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const auto& a = vectors[i];
            const auto& b = vectors[(i + 1) % 5];
            worst = std::max(worst, std::abs(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]));
        }
        checks.report("kcbs-neighbor-orthogonality", worst, 1e-12);
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const cplx t = trace(
                matmul(kcbs.measurements[i].matrix(), kcbs.measurements[(i + 1) % 5].matrix()));
            worst = std::max(worst, std::abs(t - cplx(-1.0, 0.0)));
        }
        checks.report("kcbs-trace-identity", worst, 1e-10);
    }
    {
        double worst_row = 0.0, worst_col = 0.0;
        for (int i = 0; i < 3; ++i) {
            CMat row = pm.measurements[3 * i].matrix();
            row = matmul(row, pm.measurements[3 * i + 1].matrix());
            row = matmul(row, pm.measurements[3 * i + 2].matrix());
            worst_row = std::max(worst_row, frob_dist(row, identity(4)));
            CMat col = pm.measurements[i].matrix();
            col = matmul(col, pm.measurements[i + 3].matrix());
            col = matmul(col, pm.measurements[i + 6].matrix());
            worst_col = std::max(worst_col, frob_dist(col, scale(cplx(-1.0, 0.0), identity(4))));
        }
        checks.report("pm-row-product", worst_row, 1e-12);
        checks.report("pm-column-product", worst_col, 1e-12);
    }
    {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double worst = 0.0;
        for (std::size_t dim : {2u, 3u, 4u}) {
            for (int i = 0; i < 70; ++i) {
                const Channel ch = Channel::depolarizing(unif(rng), dim);
                worst = std::max(worst, duality_residual(ch, rng, 1));
            }
        }
        checks.report("duality-structured", worst, 1e-10);
        worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            worst = std::max(worst, duality_residual(qubit_depolarizing_kraus(unif(rng)), rng, 1));
            worst =
                std::max(worst, duality_residual(two_qubit_pauli_twirl_kraus(unif(rng)), rng, 1));
        }
        checks.report("duality-kraus", worst, 1e-10);
    }
    {
        double worst = 0.0;
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            worst = std::max(worst, kraus_vs_structured(2, p));
            worst = std::max(worst, kraus_vs_structured(4, p));
        }
        checks.report("kraus-structured-equality", worst, 1e-12);
    }
    {
        double worst = 0.0;
        for (const Scenario* s : {&kcbs, &pm}) {
            for (int i = 0; i < 5; ++i) {
                const CMat rho = random_state(s->dimension, rng);
                for (NoisePlacement placement :
                     {NoisePlacement::None, NoisePlacement::BeforeFirstOnly,
                      NoisePlacement::BeforeEach}) {
                    for (double p : {0.0, 0.3, 0.6, 1.0}) {
                        const Channel noise = Channel::depolarizing(p, s->dimension);
                        for (const auto& ctx : s->contexts) {
                            std::vector<Observable> obs;
                            for (std::size_t idx : ctx) obs.push_back(s->measurements[idx]);
                            const double fwd = sequential_correlator(rho, obs, &noise, placement);
                            const double dual =
                                sequential_correlator_heisenberg(rho, obs, &noise, placement);
                            worst = std::max(worst, std::abs(fwd - dual));
                        }
                    }
                }
            }
        }
        checks.report("picture-equivalence", worst, 1e-10);
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const CMat rho = random_state(4, rng);
            const EvalReport r =
                evaluate_inequality(pm, rho, nullptr, NoisePlacement::None, Picture::Both);
            worst = std::max(worst, std::abs(r.value - 6.0));
        }
        checks.report("pm-state-independence", worst, 1e-10);
    }
    {
        double worst = 0.0;
        std::vector<CMat> states = {kcbs_optimal_state()};
        for (int i = 0; i < 5; ++i) states.push_back(random_state(3, rng));
        for (const CMat& rho : states) {
            const double ideal =
                evaluate_inequality(kcbs, rho, nullptr, NoisePlacement::None, Picture::Both).value;
            for (int step = 0; step <= 10; ++step) {
                const double p = step / 10.0;
                const Channel noise = Channel::depolarizing(p, 3);
                const double simulated =
                    evaluate_inequality(kcbs, rho, &noise, NoisePlacement::BeforeFirstOnly,
                                        Picture::Both)
                        .value;
                worst = std::max(worst, std::abs(simulated - kcbs_noisy_value(ideal, p)));
            }
        }
        checks.report("kcbs-noisy-law", worst, 1e-10);
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const CMat rho = random_state(4, rng);
            for (int step = 0; step <= 10; ++step) {
                const double p = step / 10.0;
                const Channel noise = Channel::depolarizing(p, 4);
                const double value =
                    evaluate_inequality(pm, rho, &noise, NoisePlacement::BeforeEach, Picture::Both)
                        .value;
                worst = std::max(worst, std::abs(value - 6.0 * p * p));
            }
        }
        checks.report("pm-noisy-law", worst, 1e-9);
    }
    {
        const ClassicalBound kb = classical_bound(kcbs);
        const ClassicalBound pb = classical_bound(pm);
        checks.report("classical-bound-kcbs", std::abs(kb.min - (-3.0)), 0.0);
        checks.report("classical-bound-pm", std::abs(pb.max - 4.0), 0.0);
    }
    {
        const ThresholdResult kt =
            find_threshold(kcbs, kcbs_optimal_state(), NoisePlacement::BeforeFirstOnly, 1e-9);
        const double kcbs_expected = (5.0 + 3.0 * std::sqrt(5.0)) / 20.0;
        checks.report("threshold-kcbs",
                      kt.kind == ThresholdResult::Kind::Crossing ? std::abs(kt.p - kcbs_expected)
                                                                 : 1.0,
                      1e-8);
        const ThresholdResult pt =
            find_threshold(pm, random_state(4, rng), NoisePlacement::BeforeEach, 1e-9);
        checks.report("threshold-pm",
                      pt.kind == ThresholdResult::Kind::Crossing
                          ? std::abs(pt.p - std::sqrt(2.0 / 3.0))
                          : 1.0,
                      1e-8);
    }
    {
        double worst = 0.0;
        for (std::size_t dim : {2u, 3u, 4u}) {
            for (int i = 0; i < 40; ++i) {
                const auto v = random_unit_vector(dim, rng);
                const Observable obs("V", sub(scale(cplx(2.0, 0.0), outer(v)), identity(dim)));
                const CMat rho = random_state(dim, rng);
                const double via_score = trace(luders_score(obs, rho)).real();
                const double direct = trace(matmul(obs.matrix(), rho)).real();
                worst = std::max(worst, std::abs(via_score - direct));
            }
        }
        checks.report("score-trace-identity", worst, 1e-12);
    }
    {
        Behavior ideal_pm{{1.0, 1.0, 1.0, -1.0, -1.0, -1.0}};
        const FeasibilityResult infeasible = noncontextual_feasible(pm, ideal_pm, 1e-8);
        checks.report("fine-pm-ideal-infeasible", infeasible.feasible ? 1.0 : 0.0, 0.0);

        Behavior mixed_kcbs{std::vector<double>(5, -1.0 / 3.0)};
        const FeasibilityResult feasible = noncontextual_feasible(kcbs, mixed_kcbs, 1e-8);
        double residual = feasible.feasible ? 0.0 : 1.0;
        if (feasible.feasible) {
            double total = 0.0;
            std::vector<double> recombined(kcbs.contexts.size(), 0.0);
            for (const auto& [index, weight] : feasible.certificate) {
                total += weight;
                const auto corr =
                    assignment_correlators(kcbs, assignment_from_index(5, index));
                for (std::size_t k = 0; k < corr.size(); ++k) recombined[k] += weight * corr[k];
            }
            residual = std::abs(total - 1.0);
            for (std::size_t k = 0; k < recombined.size(); ++k) {
                residual = std::max(residual, std::abs(recombined[k] - mixed_kcbs.correlators[k]));
            }
        }
        checks.report("fine-kcbs-mixed-feasible", residual, 1e-8);
    }

    std::printf("%s\n", checks.all_pass ? "all checks passed" : "CHECKS FAILED");
    return checks.all_pass ? 0 : 1;
}
