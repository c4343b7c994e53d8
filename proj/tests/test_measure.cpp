#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ksc/measure.hpp"
#include "ksc/sampling.hpp"
#include "ksc/scenarios.hpp"

using namespace ksc;

namespace {

std::vector<Observable> gather(const Scenario& s, const std::vector<std::size_t>& ctx) {
    std::vector<Observable> out;
    for (std::size_t idx : ctx) out.push_back(s.measurements[idx]);
    return out;
}

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("Observable validates its invariants") {
    CHECK_NOTHROW(Observable("Z", sigma_z()));
    CHECK_THROWS_AS(Observable("bad", CMat::from_rows({{0, 1}, {0, 0}})), std::invalid_argument);
    CHECK_THROWS_AS(Observable("bad", CMat::from_rows({{1, 0}, {0, cplx(0.5, 0)}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(Observable("bad", CMat(2, 3)), std::invalid_argument);

    const Observable z("Z", sigma_z());
    CHECK(frob_dist(add(z.proj_plus(), z.proj_minus()), identity(2)) < 1e-15);
    CHECK(frob_dist(matmul(z.proj_plus(), z.proj_plus()), z.proj_plus()) < 1e-15);
    CHECK(frob_norm(matmul(z.proj_plus(), z.proj_minus())) < 1e-15);
}

TEST_CASE("luders_score basics") {
    const Observable z("Z", sigma_z());
    CHECK(frob_dist(luders_score(z, basis_projector(2, 0)), basis_projector(2, 0)) < 1e-15);

    // Expanding the projectors by hand for sigma_x on the maximally mixed
    // state gives sigma_x / 2.
    const Observable x("X", sigma_x());
    CHECK(frob_dist(luders_score(x, maximally_mixed(2)), scale(cplx(0.5, 0), sigma_x())) < 1e-15);
}

TEST_CASE("score map trace identity") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t dim : {2u, 3u, 4u}) {
        for (int i = 0; i < 40; ++i) {
            std::vector<cplx> v(dim);
            double norm2 = 0;
            for (auto& entry : v) {
                entry = cplx(gauss(rng), gauss(rng));
                norm2 += std::norm(entry);
            }
            for (auto& entry : v) entry /= std::sqrt(norm2);
            const Observable a("V", sub(scale(cplx(2, 0), outer(v)), identity(dim)));
            const CMat rho = random_state(dim, rng);
            CHECK(std::abs(trace(luders_score(a, rho)) - trace(matmul(a.matrix(), rho))) < 1e-12);
        }
    }
}

TEST_CASE("luders_branch") {
    const Observable z("Z", sigma_z());
    const LudersBranches zb = luders_branch(z, basis_projector(2, 0));
    CHECK(zb.plus.prob == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(zb.plus.state.has_value());
    CHECK(frob_dist(*zb.plus.state, basis_projector(2, 0)) < 1e-12);
    CHECK(zb.minus.prob == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(zb.minus.state.has_value());

    const Observable x("X", sigma_x());
    const LudersBranches xb = luders_branch(x, maximally_mixed(2));
    CHECK(xb.plus.prob == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(xb.minus.prob == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(xb.plus.prob + xb.minus.prob == doctest::Approx(1.0).epsilon(1e-10));

    // Rank-1 projector observables on the maximally mixed qutrit.
    const Scenario kcbs = kcbs_scenario();
    const LudersBranches kb = luders_branch(kcbs.measurements[0], maximally_mixed(3));
    CHECK(kb.plus.prob == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("sequential correlator on compatible contexts") {
    std::mt19937_64 rng(32);
    const Scenario pm = peres_mermin_scenario();
    const auto row = gather(pm, pm.contexts[0]);
    for (int i = 0; i < 10; ++i) {
        const CMat rho = random_state(4, rng);
        CHECK(sequential_correlator(rho, row, nullptr, NoisePlacement::None) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }

    const Channel noise = Channel::depolarizing(0.9, 4);
    CHECK(sequential_correlator(random_state(4, rng), row, &noise, NoisePlacement::BeforeEach) ==
          doctest::Approx(0.81).epsilon(1e-12));

    const Scenario kcbs = kcbs_scenario();
    const auto pair = gather(kcbs, kcbs.contexts[0]);
    CHECK(sequential_correlator(maximally_mixed(3), pair, nullptr, NoisePlacement::None) ==
          doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("heisenberg picture matches known pull-backs") {
    std::mt19937_64 rng(33);
    const Scenario pm = peres_mermin_scenario();
    const auto column = gather(pm, pm.contexts[3]);
    for (int i = 0; i < 10; ++i) {
        CHECK(sequential_correlator_heisenberg(random_state(4, rng), column, nullptr,
                                               NoisePlacement::None) ==
              doctest::Approx(-1.0).epsilon(1e-12));
    }

    // A full row pulled back through per-step noise ends at p^2 * identity,
    // so the correlator is p^2 for every state.
    const Channel noise = Channel::depolarizing(0.73, 4);
    const auto row = gather(pm, pm.contexts[1]);
    for (int i = 0; i < 10; ++i) {
        CHECK(sequential_correlator_heisenberg(random_state(4, rng), row, &noise,
                                               NoisePlacement::BeforeEach) ==
              doctest::Approx(0.73 * 0.73).epsilon(1e-12));
    }
}

TEST_CASE("single observable under one noisy interval") {
    // One dual application gives p<A> + (1-p) tr(A)/d.
    std::mt19937_64 rng(34);
    const Scenario kcbs = kcbs_scenario();
    const std::vector<Observable> single = {kcbs.measurements[2]};
    for (double p : {0.0, 0.4, 1.0}) {
        const Channel noise = Channel::depolarizing(p, 3);
        for (int i = 0; i < 5; ++i) {
            const CMat rho = random_state(3, rng);
            const double mean = trace(matmul(rho, single[0].matrix())).real();
            const double expected = p * mean + (1 - p) * trace(single[0].matrix()).real() / 3.0;
            CHECK(sequential_correlator_heisenberg(rho, single, &noise,
                                                   NoisePlacement::BeforeFirstOnly) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("product correlator") {
    std::mt19937_64 rng(35);
    const Scenario pm = peres_mermin_scenario();
    const auto row = gather(pm, pm.contexts[0]);
    for (int i = 0; i < 20; ++i) {
        CHECK(product_correlator(random_state(4, rng), row) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }

    const Scenario kcbs = kcbs_scenario();
    const auto pair = gather(kcbs, kcbs.contexts[2]);  // {A2, A3}
    const CMat psi = kcbs_optimal_state();
    CHECK(product_correlator(psi, pair) ==
          doctest::Approx(sequential_correlator(psi, pair, nullptr, NoisePlacement::None))
              .epsilon(1e-12));

    const std::vector<Observable> single = {kcbs.measurements[1]};
    const CMat rho = random_state(3, rng);
    CHECK(product_correlator(rho, single) ==
          doctest::Approx(trace(matmul(rho, single[0].matrix())).real()).epsilon(1e-12));

    const std::vector<Observable> clash = {Observable("X", sigma_x()), Observable("Z", sigma_z())};
    CHECK_THROWS_WITH_AS(product_correlator(maximally_mixed(2), clash),
                         doctest::Contains("'X' and 'Z'"), std::invalid_argument);
}

TEST_CASE("picture equivalence on random inputs") {
    std::mt19937_64 rng(36);
    const Scenario kcbs = kcbs_scenario();
    const Scenario pm = peres_mermin_scenario();
    for (const Scenario* s : {&kcbs, &pm}) {
        for (double p : {0.0, 0.3, 0.6, 1.0}) {
            const Channel noise = Channel::depolarizing(p, s->dimension);
            for (NoisePlacement placement :
                 {NoisePlacement::None, NoisePlacement::BeforeFirstOnly,
                  NoisePlacement::BeforeEach}) {
                for (int i = 0; i < 4; ++i) {
                    const CMat rho = random_state(s->dimension, rng);
                    for (const auto& ctx : s->contexts) {
                        const auto obs = gather(*s, ctx);
                        const double fwd = sequential_correlator(rho, obs, &noise, placement);
                        const double dual =
                            sequential_correlator_heisenberg(rho, obs, &noise, placement);
                        CHECK(std::abs(fwd - dual) < 1e-10);
                    }
                }
            }
        }
    }
}

TEST_CASE("measuring a compatible partner first does not disturb the statistics") {
    std::mt19937_64 rng(37);
    const Scenario pm = peres_mermin_scenario();
    const Scenario kcbs = kcbs_scenario();
    struct Pair {
        const Scenario* s;
        std::size_t first, second;
    };
    for (const Pair& pair : {Pair{&pm, 0, 1}, Pair{&pm, 3, 6}, Pair{&kcbs, 0, 1}}) {
        const Observable& a = pair.s->measurements[pair.first];
        const Observable& b = pair.s->measurements[pair.second];
        for (int i = 0; i < 10; ++i) {
            const CMat rho = random_state(pair.s->dimension, rng);
            const LudersBranches direct = luders_branch(a, rho);
            // Marginalize over the partner's outcomes.
            const LudersBranches bfirst = luders_branch(b, rho);
            double marginal_plus = 0.0;
            for (const LudersBranch* branch : {&bfirst.plus, &bfirst.minus}) {
                if (branch->state.has_value()) {
                    marginal_plus += branch->prob * luders_branch(a, *branch->state).plus.prob;
                }
            }
            CHECK(std::abs(direct.plus.prob - marginal_plus) < 1e-10);
        }
    }
}

TEST_CASE("order invariance for commuting lists") {
    std::mt19937_64 rng(38);
    const Scenario pm = peres_mermin_scenario();
    std::vector<std::size_t> order = pm.contexts[0];
    std::sort(order.begin(), order.end());
    const Channel noise = Channel::depolarizing(0.55, 4);
    for (NoisePlacement placement :
         {NoisePlacement::None, NoisePlacement::BeforeFirstOnly, NoisePlacement::BeforeEach}) {
        const CMat rho = random_state(4, rng);
        const double reference =
            sequential_correlator(rho, gather(pm, order), &noise, placement);
        std::vector<std::size_t> perm = order;
        while (std::next_permutation(perm.begin(), perm.end())) {
            CHECK(std::abs(sequential_correlator(rho, gather(pm, perm), &noise, placement) -
                           reference) < 1e-10);
        }
    }
}

TEST_CASE("noise before the test cannot touch state-independent values") {
    std::mt19937_64 rng(39);
    const Scenario pm = peres_mermin_scenario();
    for (double p : {0.0, 0.2, 0.5, 0.8, 1.0}) {
        const Channel noise = Channel::depolarizing(p, 4);
        for (int i = 0; i < 4; ++i) {
            const CMat rho = random_state(4, rng);
            for (std::size_t k = 0; k < pm.contexts.size(); ++k) {
                const double expected = k < 3 ? 1.0 : -1.0;
                CHECK(std::abs(sequential_correlator(rho, gather(pm, pm.contexts[k]), &noise,
                                                     NoisePlacement::BeforeFirstOnly) -
                               expected) < 1e-10);
            }
        }
    }
}

TEST_CASE("error paths") {
    const Scenario pm = peres_mermin_scenario();
    const auto row = gather(pm, pm.contexts[0]);
    const CMat rho = maximally_mixed(4);
    CHECK_THROWS_AS(sequential_correlator(rho, row, nullptr, NoisePlacement::BeforeEach),
                    std::invalid_argument);
    const Channel wrong_dim = Channel::depolarizing(0.5, 3);
    CHECK_THROWS_AS(sequential_correlator(rho, row, &wrong_dim, NoisePlacement::BeforeEach),
                    std::invalid_argument);
    CHECK_THROWS_AS(sequential_correlator(maximally_mixed(3), row, nullptr, NoisePlacement::None),
                    std::invalid_argument);
    CHECK_THROWS_AS(sequential_correlator(rho, {}, nullptr, NoisePlacement::None),
                    std::invalid_argument);
}

}  // TEST_SUITE
