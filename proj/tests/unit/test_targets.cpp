#include <random>
#include <vector>

#include "doctest.h"
#include "swarmtrack/targets.hpp"

using namespace swarmtrack;

namespace {

SwarmConfig target_config(double speed, TargetPolicy policy = TargetPolicy::evasive) {
    SwarmConfig c;
    c.target_speed = speed;
    c.target_policy = policy;
    return c;
}

TargetState target_at(Vec2 p, Vec2 waypoint, TargetPolicy policy = TargetPolicy::evasive) {
    TargetState t;
    t.position = p;
    t.waypoint = waypoint;
    t.policy = policy;
    return t;
}

}  // namespace

TEST_CASE("non-evasive target moves straight towards its waypoint") {
    const auto c = target_config(0.2, TargetPolicy::non_evasive);
    Rng rng = make_rng(1, Stream::targets);
    const auto t = nonevasive_step(target_at({0, 0}, {10, 0}), rng, c);
    CHECK(t.position.x == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(t.position.y == 0.0);
    CHECK(t.waypoint == Vec2{10, 0});
}

TEST_CASE("arrival draws a new waypoint and the target heads there next step") {
    const auto c = target_config(0.2, TargetPolicy::non_evasive);
    Rng rng = make_rng(1, Stream::targets);
    auto t = nonevasive_step(target_at({5, 5}, {5, 5}), rng, c);
    CHECK(t.position == Vec2{5, 5});
    CHECK(t.waypoint != Vec2{5, 5});
    const Vec2 waypoint = t.waypoint;
    const double before = distance(t.position, waypoint);
    t = nonevasive_step(t, rng, c);
    CHECK(distance(t.position, waypoint) == doctest::Approx(before - 0.2));
}

TEST_CASE("zero-speed target never moves") {
    const auto c = target_config(0.0, TargetPolicy::non_evasive);
    Rng rng = make_rng(1, Stream::targets);
    auto t = target_at({3, 4}, {3, 4});
    for (int i = 0; i < 100; ++i) t = nonevasive_step(t, rng, c);
    CHECK(t.position == Vec2{3, 4});
    const auto ce = target_config(0.0);
    const std::vector<Vec2> chasers{{3.5, 4}};
    for (int i = 0; i < 100; ++i) t = evasive_step(t, chasers, rng, ce);
    CHECK(t.position == Vec2{3, 4});
}

TEST_CASE("a single pursuer inside the radius pushes the target directly away") {
    const auto c = target_config(0.2);
    Rng rng = make_rng(1, Stream::targets);
    const std::vector<Vec2> agents{{10.5, 10}};
    const auto t = evasive_step(target_at({10, 10}, {20, 20}), agents, rng, c);
    CHECK(t.velocity.x == doctest::Approx(-0.2));
    CHECK(t.velocity.y == doctest::Approx(0.0));
    CHECK(t.contact_streak == 1);
    CHECK(t.mode() == TargetMode::repel);
}

TEST_CASE("symmetric pursuers cancel and the previous heading is kept") {
    const auto c = target_config(0.2);
    Rng rng = make_rng(1, Stream::targets);
    auto t = target_at({10, 10}, {20, 20});
    t.velocity = {0, 0.1};
    const std::vector<Vec2> agents{{10.5, 10}, {9.5, 10}};
    t = evasive_step(t, agents, rng, c);
    CHECK(t.velocity.x == doctest::Approx(0.0));
    CHECK(t.velocity.y == doctest::Approx(0.2));
}

TEST_CASE("agents outside the radius do not trigger evasion") {
    const auto c = target_config(0.2);
    Rng rng = make_rng(1, Stream::targets);
    auto t = target_at({10, 10}, {20, 10});
    t.contact_streak = 4;
    const std::vector<Vec2> agents{{11.0 + 1e-6, 10}};
    t = evasive_step(t, agents, rng, c);
    CHECK(t.contact_streak == 0);
    CHECK(t.velocity.x == doctest::Approx(0.2));
}

TEST_CASE("sustained contact triggers a straight sprint of evade_duration steps") {
    auto c = target_config(0.2);
    c.evade_limit = 4;
    c.evade_duration = 6;
    Rng rng = make_rng(1, Stream::targets);
    auto t = target_at({10, 10}, {20, 20});
    for (int i = 0; i < c.evade_limit; ++i) {
        const std::vector<Vec2> agents{{t.position.x + 0.3, t.position.y + 0.1}};
        t = evasive_step(t, agents, rng, c);
    }
    CHECK(t.evade_remaining == c.evade_duration);
    CHECK(t.mode() == TargetMode::evade);
    const Vec2 heading = t.velocity;
    // Pursuers everywhere are ignored while sprinting.
    const std::vector<Vec2> crowd{{t.position.x - 0.2, t.position.y}, {t.position.x, t.position.y + 0.2}};
    for (int i = 0; i < c.evade_duration; ++i) {
        const Vec2 before = t.position;
        t = evasive_step(t, crowd, rng, c);
        CHECK(t.velocity == heading);
        CHECK(distance(before, t.position) == doctest::Approx(0.2));
    }
    CHECK(t.evade_remaining == 0);
    CHECK(t.contact_streak == 0);
    CHECK(t.mode() == TargetMode::waypoint);
}

TEST_CASE("one contact-free step resets the contact streak") {
    auto c = target_config(0.2);
    Rng rng = make_rng(1, Stream::targets);
    auto t = target_at({10, 10}, {20, 20});
    const std::vector<Vec2> none;
    for (int round = 0; round < 5; ++round) {
        for (int i = 0; i < c.evade_limit - 1; ++i) {
            const std::vector<Vec2> agents{{t.position.x + 0.3, t.position.y}};
            t = evasive_step(t, agents, rng, c);
        }
        CHECK(t.contact_streak == c.evade_limit - 1);
        t = evasive_step(t, none, rng, c);
        CHECK(t.contact_streak == 0);
        CHECK(t.evade_remaining == 0);
    }
}

TEST_CASE("sprinting target reflects off walls and stays inside") {
    auto c = target_config(0.2);
    c.evade_duration = 200;
    Rng rng = make_rng(1, Stream::targets);
    auto t = target_at({24.95, 12}, {0, 0});
    t.velocity = {0.2, 0};
    t.evade_remaining = 200;
    t = evasive_step(t, {}, rng, c);
    CHECK(t.position.x == 25.0);
    CHECK(t.velocity.x == doctest::Approx(-0.2));
    t = evasive_step(t, {}, rng, c);
    CHECK(t.position.x == doctest::Approx(24.8));
}

TEST_CASE("speed and containment invariants hold for both policies") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0, 25);
    for (const auto policy : {TargetPolicy::evasive, TargetPolicy::non_evasive}) {
        auto c = target_config(0.35, policy);
        c.evade_limit = 3;
        c.evade_duration = 30;
        Rng rng = make_rng(8, Stream::targets);
        auto t = target_at({u(gen), u(gen)}, {u(gen), u(gen)}, policy);
        int evade_steps = 0;
        for (int step = 0; step < 20000; ++step) {
            std::vector<Vec2> agents;
            if (step % 7 < 4) agents.push_back({t.position.x + 0.4 * (u(gen) / 25 - 0.5), t.position.y + 0.3});
            t = step_target(t, agents, rng, c);
            REQUIRE(t.velocity.norm() <= c.target_speed + 1e-12);
            REQUIRE(t.position.x >= 0.0);
            REQUIRE(t.position.x <= 25.0);
            REQUIRE(t.position.y >= 0.0);
            REQUIRE(t.position.y <= 25.0);
            REQUIRE(t.evade_remaining <= c.evade_duration);
            evade_steps += t.mode() == TargetMode::evade ? 1 : 0;
        }
        if (policy == TargetPolicy::evasive) {
            CHECK(evade_steps > 0);
        } else {
            CHECK(evade_steps == 0);
        }
    }
}

TEST_CASE("placement respects the pairwise separation") {
    auto c = target_config(0.2);
    Rng rng = make_rng(3, Stream::targets);
    const auto one = place_targets(1, rng, c);
    REQUIRE(one.size() == 1);
    for (int trial = 0; trial < 100; ++trial) {
        const auto three = place_targets(3, rng, c);
        REQUIRE(three.size() == 3);
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = a + 1; b < 3; ++b) CHECK(distance(three[a].position, three[b].position) >= 2.0);
        }
    }
}

TEST_CASE("overcrowded placement fails") {
    auto c = target_config(0.2);
    c.arena_side = 4.0;
    c.target_radius = 1.0;
    Rng rng = make_rng(3, Stream::targets);
    CHECK_THROWS_AS((void)place_targets(20, rng, c), PlacementError);
}

TEST_CASE("close waypoint-following targets heading towards each other re-plan") {
    const auto c = target_config(0.2, TargetPolicy::non_evasive);
    Rng rng = make_rng(5, Stream::targets);
    std::vector<TargetState> ts{target_at({10, 10}, {0, 10}, TargetPolicy::non_evasive),
                                target_at({11, 10}, {0, 10}, TargetPolicy::non_evasive)};
    separate_targets(ts, rng, c);
    CHECK(ts[0].waypoint == Vec2{0, 10});
    CHECK(ts[1].waypoint != Vec2{0, 10});

    std::vector<TargetState> apart{target_at({10, 10}, {0, 10}, TargetPolicy::non_evasive),
                                   target_at({11, 10}, {25, 10}, TargetPolicy::non_evasive)};
    separate_targets(apart, rng, c);
    CHECK(apart[1].waypoint == Vec2{25, 10});
}
