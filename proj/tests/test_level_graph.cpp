#include <catch2/catch_amalgamated.hpp>

#include <hypgrpd/hypgrpd.hpp>

#include "oracles.hpp"

using namespace hypgrpd;

namespace {

// two descending chains joined only at the top: directed paths from the
// joined starts separate linearly, which the criterion must report
CocycleGraph diverging_v(int levels) {
    CocycleGraph cg;
    for (int i = 0; i < levels; ++i) cg.g.add_vertex("a" + std::to_string(i));
    for (int i = 0; i < levels; ++i) cg.g.add_vertex("b" + std::to_string(i));
    for (int i = 0; i + 1 < levels; ++i) {
        cg.g.add_edge(i, i + 1);
        cg.g.add_edge(levels + i, levels + i + 1);
    }
    cg.g.add_edge(levels - 1, 2 * levels - 1);  // single rung at the top
    cg.lambda.assign(static_cast<size_t>(2 * levels), 0);
    for (int i = 0; i < levels; ++i) {
        cg.lambda[static_cast<size_t>(i)] = i;
        cg.lambda[static_cast<size_t>(levels + i)] = i;
    }
    cg.finish();
    cg.truncated[0] = true;
    cg.truncated[static_cast<size_t>(levels)] = true;
    return cg;
}

// two parallel descending chains joined by rungs at every level: pair
// distances stay pinned at one, a bounded certificate
CocycleGraph ladder(int levels) {
    CocycleGraph cg;
    for (int i = 0; i < levels; ++i) cg.g.add_vertex("a" + std::to_string(i));
    for (int i = 0; i < levels; ++i) cg.g.add_vertex("b" + std::to_string(i));
    for (int i = 0; i + 1 < levels; ++i) {
        cg.g.add_edge(i, i + 1);
        cg.g.add_edge(levels + i, levels + i + 1);
    }
    for (int i = 0; i < levels; ++i) cg.g.add_edge(i, levels + i);
    cg.lambda.assign(static_cast<size_t>(2 * levels), 0);
    for (int i = 0; i < levels; ++i) {
        cg.lambda[static_cast<size_t>(i)] = i;
        cg.lambda[static_cast<size_t>(levels + i)] = i;
    }
    // bottom row keeps descending off-graph; mark it truncated
    cg.finish();
    cg.truncated[0] = true;
    cg.truncated[static_cast<size_t>(levels)] = true;
    return cg;
}

CocycleGraph descending_chain(int levels) {
    CocycleGraph cg;
    for (int i = 0; i < levels; ++i) cg.g.add_vertex("c" + std::to_string(i));
    for (int i = 0; i + 1 < levels; ++i) cg.g.add_edge(i, i + 1);
    cg.lambda.assign(static_cast<size_t>(levels), 0);
    for (int i = 0; i < levels; ++i) cg.lambda[static_cast<size_t>(i)] = i;
    cg.finish();
    cg.truncated[0] = true;
    return cg;
}

}  // namespace

TEST_CASE("cocycle graph bookkeeping") {
    CocycleGraph cg = descending_chain(5);
    CHECK(cg.Delta == 1);
    CHECK(cg.nu(cg.g.edges[0].u, cg.g.edges[0].v) != 0);
    CHECK(cg.min_drop() == 1);
    long long d0 = 0;
    CHECK(cg.uniform_drop(&d0));
    CHECK(d0 == 1);
    CHECK(cg.out_complete());

    CocycleGraph back = CocycleGraph::from_json(cg.to_json());
    CHECK(back.lambda == cg.lambda);
    CHECK(back.Delta == cg.Delta);
    CHECK(back.truncated == cg.truncated);
}

TEST_CASE("qg constants on a uniform-drop graph") {
    auto cg = descending_chain(6);
    auto qc = directed_path_qg_constants(cg);
    CHECK(qc.verified);
    CHECK(qc.eta_effective);  // eta == 0 replaced by the minimal drop
    CHECK(qc.eta_used == Rat(1));
    CHECK(qc.Lambda == Rat(1));  // (Delta + eta)/eta_eff = (1+0)/1
}

TEST_CASE("convergence holds on preset balls and fails on the ladder") {
    auto doubling = preset_cayley_ball("doubling", 4);
    auto r = convergence_criterion(doubling.cg, 1, 2, 10);
    CHECK(r.ok);
    CHECK_FALSE(r.vacuous);
    CHECK(r.rho0 == 0);
    CHECK(r.k_m == 7);

    auto dyadic = preset_cayley_ball("dyadic-affine", 4);
    auto r2 = convergence_criterion(dyadic.cg, 1, 2, 10);
    CHECK(r2.ok);
    CHECK(r2.rho0 == 0);
    CHECK(r2.k_m == 7);

    // the rung ladder satisfies the bound: pair distance pinned at one
    auto pinned = convergence_criterion(ladder(8), 1, 2, 10);
    CHECK(pinned.ok);
    CHECK(pinned.rho0 == 1);

    auto bad = convergence_criterion(diverging_v(8), 1, 2, 10);
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.detail.empty());
    // separation between the two branches grows linearly with depth
    REQUIRE(bad.profile.size() == 8);
    CHECK(bad.profile[1] == 6);
    CHECK(bad.profile[7] == 15);

    // a single chain has no separated pairs at all
    auto chain = convergence_criterion(descending_chain(8), 1, 2, 10);
    CHECK(chain.ok);
}

TEST_CASE("criterion validates its inputs") {
    auto cg = descending_chain(5);
    CHECK_THROWS_AS(convergence_criterion(cg, 0, 2, 10), input_error);

    CocycleGraph dead = descending_chain(5);
    dead.truncated[0] = false;  // bottom vertex now claims completeness
    CHECK_THROWS_AS(convergence_criterion(dead, 1, 2, 10), input_error);
}

TEST_CASE("level graph construction enforces the constant inequalities") {
    auto ball = preset_cayley_ball("doubling", 4);
    // Delta = 1, eta = 0, minimal drop 1: Delta1 >= 1, Delta2 > 2*Delta1,
    // r multiple of 4 with r >= 4*Delta2
    CHECK_THROWS_AS(build_level_graph(ball.cg, 3, 12, 1, 0), input_error);   // Delta1 too small
    CHECK_THROWS_AS(build_level_graph(ball.cg, 2, 12, 1, 1), input_error);   // Delta2 <= (k+1)Delta1
    CHECK_THROWS_AS(build_level_graph(ball.cg, 3, 10, 1, 1), input_error);   // r not divisible by 4
    CHECK_THROWS_AS(build_level_graph(ball.cg, 3, 8, 1, 1), input_error);    // r below 4*Delta2/rho1
    CHECK_NOTHROW(build_level_graph(ball.cg, 3, 12, 1, 1));
}

TEST_CASE("level-graph geodesics descend before ascending and runs stay short") {
    for (const char* preset : {"doubling", "dyadic-affine"}) {
        for (int radius : {4, 5}) {
            auto ball = preset_cayley_ball(preset, radius);
            LevelGraph lg = build_level_graph(ball.cg, 3, 12, 1, 1);
            auto shape = check_level_geodesics(lg);
            INFO(preset << " radius " << radius << ": " << shape.violation);
            CHECK(shape.descend_before_ascend);
            CHECK(shape.horizontal_run_bound);

            auto bl = check_bilipschitz(ball.cg, lg);
            INFO(bl.violation);
            CHECK(bl.ok);
            CHECK(bl.max_stretch <= Rat(12));  // r * rho1
        }
    }
}

TEST_CASE("level assignment partitions vertices into bands of width r") {
    auto ball = preset_cayley_ball("dyadic-affine", 5);
    LevelGraph lg = build_level_graph(ball.cg, 3, 12, 1, 1);
    REQUIRE(lg.level.size() == static_cast<size_t>(lg.g1.vcount()));
    for (auto& e : lg.g1.edges) {
        long long gap = lg.level[static_cast<size_t>(e.u)] - lg.level[static_cast<size_t>(e.v)];
        CHECK(std::llabs(gap) <= 1);  // only same-band or adjacent-band edges
    }
    CHECK(lg.horizontal.size() + lg.vertical.size() == lg.g1.edges.size());
}
