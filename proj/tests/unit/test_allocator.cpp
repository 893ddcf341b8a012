#include <cmath>
#include <random>

#include "doctest.h"
#include "uamlink/allocator.hpp"
#include "uamlink/errors.hpp"

using namespace uamlink;

namespace {

LinkCandidate cell(int id, double rate) { return {LinkKind::cellular, id, 1000.0, rate, 0}; }
LinkCandidate sat(int id, double rate) { return {LinkKind::satellite, id, 900e3, rate, 0}; }

std::vector<LinkCandidate> random_candidates(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> rate(1e3, 5e7);
    std::bernoulli_distribution coin(0.5);
    std::vector<LinkCandidate> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(coin(rng) ? cell(static_cast<int>(i) + 1, rate(rng)) : sat(static_cast<int>(i) + 1, rate(rng)));
    return out;
}

}  // namespace

TEST_CASE("select_link examples") {
    const std::vector<LinkCandidate> c{cell(1, 10e6), sat(1, 1e6)};
    const auto d = select_link(c, 5e6);
    REQUIRE(d.selection);
    CHECK(d.selection->kind == LinkKind::cellular);
    CHECK(d.selection->node_id == 1);
    CHECK(d.delay_s == doctest::Approx(0.5));
    CHECK(d.rate_bps == 10e6);
    CHECK(d.selected_index == 0);
    CHECK(d.assignment == std::vector<std::uint8_t>{1, 0});

    const std::vector<LinkCandidate> sats_only{sat(3, 1e6), sat(4, 2e6)};
    const auto s = select_link(sats_only, 5e6);
    REQUIRE(s.selection);
    CHECK(s.selection->node_id == 4);
    CHECK(s.delay_s == doctest::Approx(2.5));
}

TEST_CASE("outages") {
    const auto empty = select_link({}, 5e6);
    CHECK(empty.outage());
    CHECK(empty.rate_bps == 0.0);
    CHECK(std::isinf(empty.delay_s));
    CHECK(empty.selected_index == -1);

    const std::vector<LinkCandidate> dead{cell(1, 0.0), sat(1, 0.0)};
    const auto d = select_link(dead, 5e6);
    CHECK(d.outage());
    CHECK(d.assignment == std::vector<std::uint8_t>{0, 0});
    CHECK(bilp_oracle(dead, 5e6).outage());
}

TEST_CASE("ties prefer cellular, then the lower id") {
    const std::vector<LinkCandidate> c{sat(1, 4e6), cell(9, 4e6), cell(2, 4e6)};
    const auto d = select_link(c, 5e6);
    REQUIRE(d.selection);
    CHECK(d.selection->kind == LinkKind::cellular);
    CHECK(d.selection->node_id == 2);
    CHECK(d.selected_index == 2);
    CHECK(bilp_oracle(c, 5e6).selected_index == 2);
}

TEST_CASE("select_link matches the exhaustive BILP on random instances") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const auto c = random_candidates(rng, 1 + static_cast<std::size_t>(trial % 12));
        const auto fast = select_link(c, 5e6);
        const auto exact = bilp_oracle(c, 5e6);
        CHECK(fast.selected_index == exact.selected_index);
        CHECK(fast.delay_s == exact.delay_s);
        CHECK(fast.assignment == exact.assignment);
    }
}

TEST_CASE("exactly one link is selected and it is the fastest") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = random_candidates(rng, 1 + static_cast<std::size_t>(trial % 30));
        const auto d = select_link(c, 5e6);
        int ones = 0;
        for (auto x : d.assignment) ones += x;
        CHECK(ones == 1);
        for (const auto& cand : c) CHECK(d.rate_bps >= cand.rate_bps);
    }
}

TEST_CASE("choice is invariant to the message size") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_candidates(rng, 8);
        const int base = select_link(c, 5e6).selected_index;
        for (double s : {1.0, 1e3, 1e8, 1e12}) CHECK(select_link(c, s).selected_index == base);
    }
}

TEST_CASE("raising the winner's rate keeps it selected; adding a link never worsens the delay") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        auto c = random_candidates(rng, 6);
        const auto d = select_link(c, 5e6);
        c[static_cast<std::size_t>(d.selected_index)].rate_bps *= 1.5;
        CHECK(select_link(c, 5e6).selected_index == d.selected_index);

        const auto before = select_link(c, 5e6).delay_s;
        c.push_back(sat(99, 1e5));
        CHECK(select_link(c, 5e6).delay_s <= before);
    }
}

TEST_CASE("fixed delays shift the decision") {
    const std::vector<LinkCandidate> c{cell(1, 10e6), sat(1, 5e6)};
    CHECK(select_link(c, 5e6).selection->kind == LinkKind::cellular);
    const FixedDelays fd{1.0, 0.0};
    const auto d = select_link(c, 5e6, fd);
    CHECK(d.selection->kind == LinkKind::satellite);
    CHECK(d.delay_s == doctest::Approx(1.0));
    CHECK(bilp_oracle(c, 5e6, fd).selected_index == d.selected_index);
}

TEST_CASE("delay and input validation") {
    CHECK(compute_delay(5e6, 1e6) == 5.0);
    CHECK(std::isinf(compute_delay(5e6, 0.0)));
    CHECK_THROWS_AS(compute_delay(0.0, 1e6), DomainError);
    CHECK_THROWS_AS(select_link({}, -1.0), DomainError);
    std::vector<LinkCandidate> many(21, cell(1, 1e6));
    CHECK_THROWS_AS(bilp_oracle(many, 5e6), DomainError);
}

TEST_CASE("message schedule") {
    MessageSchedule m;
    CHECK(m.size_at(0) == 5e6);
    CHECK(m.size_at(100000) == 5e6);
    CHECK_NOTHROW(validate(m));
    m.sizes_bits = {1e6, 2e6};
    CHECK(m.size_at(1) == 2e6);
    CHECK_THROWS_AS(m.size_at(2), DomainError);
    m.sizes_bits = {1.5};
    CHECK_THROWS_AS(validate(m), ConfigError);
    m.sizes_bits = {0.0};
    CHECK_THROWS_AS(validate(m), ConfigError);
    m = {};
    m.expiry_slots = 3;
    CHECK_THROWS_AS(validate(m), NotImplementedError);
}
