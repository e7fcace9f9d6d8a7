#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "swarmtrack/engine.hpp"
#include "swarmtrack/strategy.hpp"
#include "swarmtrack/trace.hpp"

using namespace swarmtrack;

namespace {

SwarmConfig small_config(int n, int k, std::uint64_t seed = 1) {
    SwarmConfig c;
    c.n_agents = n;
    c.degree = k;
    c.seed = seed;
    return c;
}

// Freezes every target in place.
void pin_targets(WorldState& w, SwarmConfig& c, std::vector<Vec2> where) {
    c.target_speed = 0.0;
    c.target_policy = TargetPolicy::non_evasive;
    c.n_targets = static_cast<int>(where.size());
    w.targets.assign(where.size(), TargetState{});
    for (std::size_t m = 0; m < where.size(); ++m) {
        w.targets[m].position = where[m];
        w.targets[m].waypoint = where[m];
        w.targets[m].policy = TargetPolicy::non_evasive;
    }
}

bool inside(Vec2 p, double side) { return p.x >= 0.0 && p.x <= side && p.y >= 0.0 && p.y <= side; }

}  // namespace

TEST_CASE("identical configs give identical worlds") {
    auto c = small_config(30, 6, 17);
    c.n_targets = 2;
    Simulation a(c);
    Simulation b(c);
    for (int s = 0; s < 400; ++s) {
        CHECK(a.step() == b.step());
    }
    CHECK(a.world() == b.world());
    c.seed = 18;
    Simulation other(c);
    for (int s = 0; s < 400; ++s) other.step();
    CHECK_FALSE(other.world() == a.world());
}

TEST_CASE("initial world for the reference config") {
    SwarmConfig c;
    c.n_targets = 2;
    const auto w = init_world(c);
    CHECK(w.agents.size() == 50);
    for (const auto& a : w.agents) CHECK(a.repulsion == 12.0);
    CHECK(distance(w.targets[0].position, w.targets[1].position) >= 2.0);
    CHECK(w.step == 0);
}

TEST_CASE("an agent sitting on a target tracks and lowers its repulsion strength") {
    auto c = small_config(10, 3);
    auto w = init_world(c);
    pin_targets(w, c, {{12.5, 12.5}});
    for (std::size_t i = 1; i < w.agents.size(); ++i) w.agents[i].position = {1.0 + static_cast<double>(i), 1.0};
    w.agents[0].position = {12.5, 12.5};
    const auto next = step(w, c);
    CHECK(next.agents[0].tracking);
    CHECK(next.agents[0].repulsion == 11.25);
    REQUIRE(next.agents[0].memory.has_value());
    CHECK(next.agents[0].memory->point == Vec2{12.5, 12.5});
    CHECK(next.agents[0].memory->time == 0);
    CHECK(next.step == 1);
}

TEST_CASE("three-agent two-step trajectory matches a direct evaluation") {
    auto c = small_config(3, 2, 42);
    auto w = init_world(c);
    pin_targets(w, c, {{24, 24}});
    w.agents[0].position = {5, 5};
    w.agents[1].position = {6, 5};
    w.agents[2].position = {5, 6.5};

    // Independent evaluation: no target in reach, so each agent keeps its own
    // position as attraction point, a_R grows by delta_explore (capped), and
    // every agent is pushed by both others.
    std::vector<Vec2> x{w.agents[0].position, w.agents[1].position, w.agents[2].position};
    std::vector<Vec2> v(3);
    std::vector<double> ar(3, c.repulsion_max);
    for (std::int64_t t = 0; t < 2; ++t) {
        std::vector<Vec2> nx = x;
        std::vector<Vec2> nv = v;
        for (std::size_t i = 0; i < 3; ++i) {
            const double r = agent_draw(c.seed, t, static_cast<std::uint32_t>(i));
            Vec2 total = c.inertia * v[i] + c.social_weight * r * (x[i] - x[i]);
            ar[i] = std::min(ar[i] + c.delta_explore, c.repulsion_max);
            for (std::size_t j = 0; j < 3; ++j) {
                if (j == i) continue;
                const double dx = x[j].x - x[i].x;
                const double dy = x[j].y - x[i].y;
                const double dist = std::hypot(dx, dy);
                const double mag = std::pow(ar[i] / dist, 6.0);
                total.x -= mag * dx / dist;
                total.y -= mag * dy / dist;
            }
            const double len = std::hypot(total.x, total.y);
            nv[i] = {total.x / len * c.agent_speed, total.y / len * c.agent_speed};
            nx[i] = x[i] + nv[i];
        }
        x = nx;
        v = nv;
    }

    const double d01 = distance(w.agents[0].position, w.agents[1].position);
    const double d02 = distance(w.agents[0].position, w.agents[2].position);
    const double d12 = distance(w.agents[1].position, w.agents[2].position);
    w = step(step(w, c), c);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(w.agents[i].position.x == doctest::Approx(x[i].x).epsilon(1e-12));
        CHECK(w.agents[i].position.y == doctest::Approx(x[i].y).epsilon(1e-12));
        CHECK(w.agents[i].velocity.x == doctest::Approx(v[i].x).epsilon(1e-12));
        CHECK(w.agents[i].velocity.y == doctest::Approx(v[i].y).epsilon(1e-12));
        CHECK_FALSE(w.agents[i].tracking);
    }
    CHECK(distance(w.agents[0].position, w.agents[1].position) > d01);
    CHECK(distance(w.agents[0].position, w.agents[2].position) > d02);
    CHECK(distance(w.agents[1].position, w.agents[2].position) > d12);
}

TEST_CASE("agents move at full speed or stop at a wall, and never leave the arena") {
    for (const auto mode : {UpdateMode::sync, UpdateMode::async}) {
        auto c = small_config(25, 8, 5);
        c.n_targets = 2;
        c.update_mode = mode;
        Simulation sim(c);
        for (int s = 0; s < 3000; ++s) {
            const auto before = sim.world().agents;
            sim.step();
            for (std::size_t i = 0; i < before.size(); ++i) {
                const auto& a = sim.world().agents[i];
                REQUIRE(inside(a.position, c.arena_side));
                REQUIRE(a.velocity.norm() <= c.agent_speed * (1.0 + 1e-12));
                REQUIRE(distance(before[i].position, a.position) <= c.agent_speed * (1.0 + 1e-12));
                REQUIRE(a.repulsion >= c.repulsion_min);
                REQUIRE(a.repulsion <= c.repulsion_max);
                if (a.memory) REQUIRE(a.memory->time + c.memory_length >= sim.world().step - 1);
            }
            for (const auto& t : sim.world().targets) REQUIRE(inside(t.position, c.arena_side));
        }
    }
}

TEST_CASE("zero horizon reports the flag and zero metrics") {
    auto c = small_config(10, 3);
    c.horizon = 0;
    const auto r = run(c);
    CHECK(r.zero_horizon);
    CHECK(r.tracking_performance == 0.0);
    CHECK(r.engagement_ratio == 0.0);

    c.horizon = 5;
    c.warmup = 5;
    CHECK(run(c).zero_horizon);
}

TEST_CASE("warmup steps are simulated but not counted") {
    auto c = small_config(20, 5, 3);
    c.horizon = 300;
    RunOptions keep;
    keep.keep_series = true;
    const auto full = run(c, keep);
    c.warmup = 100;
    const auto tail = run(c, keep);
    REQUIRE(tail.metrics.steps() == 200);
    const auto& all = full.metrics.series();
    CHECK(std::vector<StepTally>(all.begin() + 100, all.end()) == tail.metrics.series());
}

TEST_CASE("a stationary target in a default swarm is almost always covered") {
    SwarmConfig c;
    c.target_speed = 0.0;
    c.horizon = 5000;
    const auto r = run(c);
    CHECK(r.tracking_performance > 0.9);
}

TEST_CASE("relabeling agents, keeping their ids, permutes the trajectory") {
    auto c = small_config(20, 5, 9);
    const auto w = init_world(c);
    std::vector<std::size_t> perm(w.agents.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937_64 gen(1);
    std::shuffle(perm.begin(), perm.end(), gen);
    WorldState shuffled = w;
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled.agents[perm[i]] = w.agents[i];

    Simulation a(c, w);
    Simulation b(c, shuffled);
    for (int s = 0; s < 300; ++s) {
        a.step();
        b.step();
    }
    for (std::size_t i = 0; i < perm.size(); ++i) CHECK(b.world().agents[perm[i]] == a.world().agents[i]);
}

TEST_CASE("mirroring the world across the diagonal mirrors the trajectory") {
    auto c = small_config(15, 4, 21);
    auto w = init_world(c);
    pin_targets(w, c, {{8, 17}, {20, 6}});
    WorldState m = w;
    for (auto& a : m.agents) a.position = {a.position.y, a.position.x};
    for (auto& t : m.targets) t.position = t.waypoint = {t.position.y, t.position.x};

    Simulation a(c, w);
    Simulation b(c, m);
    for (int s = 0; s < 200; ++s) {
        a.step();
        b.step();
    }
    for (std::size_t i = 0; i < w.agents.size(); ++i) {
        const auto& p = a.world().agents[i];
        const auto& q = b.world().agents[i];
        CHECK(p.position.x == doctest::Approx(q.position.y).epsilon(1e-9));
        CHECK(p.position.y == doctest::Approx(q.position.x).epsilon(1e-9));
        CHECK(p.tracking == q.tracking);
        CHECK(p.repulsion == doctest::Approx(q.repulsion));
    }
}

TEST_CASE("rotating the world by a quarter turn rotates the trajectory") {
    auto c = small_config(12, 4, 2);
    auto w = init_world(c);
    const double side = c.arena_side;
    pin_targets(w, c, {{8, 17}});
    const auto rot = [side](Vec2 p) { return Vec2{side - p.y, p.x}; };
    WorldState r = w;
    for (auto& a : r.agents) a.position = rot(a.position);
    for (auto& t : r.targets) t.position = t.waypoint = rot(t.position);

    Simulation a(c, w);
    Simulation b(c, r);
    for (int s = 0; s < 60; ++s) {
        a.step();
        b.step();
    }
    for (std::size_t i = 0; i < w.agents.size(); ++i) {
        const Vec2 expected = rot(a.world().agents[i].position);
        CHECK(b.world().agents[i].position.x == doctest::Approx(expected.x).epsilon(1e-9));
        CHECK(b.world().agents[i].position.y == doctest::Approx(expected.y).epsilon(1e-9));
    }
}

TEST_CASE("without memory, tracking means a detection by the agent or a neighbor in the same step") {
    auto c = small_config(40, 4, 13);
    c.memory_length = 0;
    c.n_targets = 2;
    c.target_radius = 3.0;
    Simulation sim(c);
    int engaged_seen = 0;
    for (int s = 0; s < 1500; ++s) {
        const WorldState before = sim.world();
        std::vector<Vec2> pos;
        for (const auto& a : before.agents) pos.push_back(a.position);
        const auto table = k_nearest(pos, c.degree);
        std::vector<bool> sees(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i) sees[i] = detect_target(pos[i], before.targets, 3.0).has_value();

        sim.step();
        for (std::size_t i = 0; i < pos.size(); ++i) {
            bool expected = sees[i];
            for (const auto j : table[i]) expected = expected || sees[j];
            REQUIRE(sim.world().agents[i].tracking == expected);
            engaged_seen += expected ? 1 : 0;
        }
    }
    CHECK(engaged_seen > 0);
}

TEST_CASE("replaying a trace reproduces the metrics") {
    auto c = small_config(20, 6, 4);
    c.n_targets = 2;
    c.horizon = 800;
    c.warmup = 50;
    std::ostringstream trace;
    RunOptions opts;
    opts.trace = &trace;
    const auto r = run(c, opts);
    std::istringstream in(trace.str());
    const auto replay = replay_trace(in, c.warmup);
    CHECK(replay.n_agents == 20);
    CHECK(replay.n_targets == 2);
    CHECK(replay.metrics.coverage_sum() == r.metrics.coverage_sum());
    CHECK(replay.metrics.engagement_sum() == r.metrics.engagement_sum());
    CHECK(replay.tracking_performance() == r.tracking_performance);
    CHECK(replay.engagement_ratio() == r.engagement_ratio);

    std::ostringstream again;
    opts.trace = &again;
    (void)run(c, opts);
    CHECK(again.str() == trace.str());
}

TEST_CASE("tally agrees with the per-step counts") {
    auto c = small_config(20, 6, 4);
    Simulation sim(c);
    for (int s = 0; s < 200; ++s) CHECK(sim.step() == tally(sim.world(), c));
}

TEST_CASE("detect_target picks the nearest target within the radius") {
    std::vector<TargetState> ts(3);
    ts[0].position = {5, 5};
    ts[1].position = {5.5, 5};
    ts[2].position = {9, 9};
    CHECK(detect_target({5.4, 5}, ts, 1.0) == Vec2{5.5, 5});
    CHECK(detect_target({5.25, 5}, ts, 1.0) == Vec2{5, 5});
    CHECK_FALSE(detect_target({7, 7}, ts, 1.0).has_value());
}
