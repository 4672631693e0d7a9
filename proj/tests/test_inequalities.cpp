#include <doctest.h>

#include <cmath>

#include "dfi/inequalities.hpp"
#include "dfi/pmf.hpp"
#include "dfi/quantities.hpp"
#include "dfi/tightness.hpp"

using namespace dfi;

namespace {

const Pmf kDelta({1.0});

Pmf zero_prefixed(const Pmf& p) {
    std::vector<double> values;
    values.reserve(p.support_size() + 1);
    values.push_back(0.0);
    values.insert(values.end(), p.values().begin(), p.values().end());
    return Pmf(std::move(values), p.tail_mass_bound());
}

}  // namespace

TEST_SUITE("inequalities") {

TEST_CASE("cramer_rao equality case is the point mass, both sides exactly 0") {
    const auto c = check_cramer_rao(kDelta);
    CHECK(c.lhs == 0.0);
    CHECK(c.rhs == 0.0);
    CHECK(c.gap == 0.0);
    CHECK(c.satisfied);
    CHECK(c.equality_case);
    CHECK_FALSE(c.strict);
}

TEST_CASE("cramer_rao hand-evaluated examples") {
    // mu = 0.5, sigma^2 = 0.25, I_d = 2, p0 = 0.5
    const auto b = check_cramer_rao(Pmf({0.5, 0.5}));
    CHECK(b.lhs == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(b.rhs == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(b.satisfied);
    CHECK_FALSE(b.equality_case);

    const auto u = check_cramer_rao(from_family(DistributionFamily::uniform(4), 1e-12));
    CHECK(u.lhs == doctest::Approx(0.96875).epsilon(1e-13));
    CHECK(u.rhs == doctest::Approx(0.140625).epsilon(1e-13));
    CHECK(u.satisfied);
}

TEST_CASE("cramer_rao refuses heavy tails") {
    CHECK_THROWS_AS(check_cramer_rao(Pmf({1.0 - 1e-5}, 1e-5)), std::invalid_argument);
}

TEST_CASE("simplified cramer_rao requires p(0) = 0") {
    // [0, 1]: two boundary terms give I_d = 8, sigma^2 = 0.
    const auto shifted_delta = check_cramer_rao_simplified(Pmf({0.0, 1.0}));
    CHECK(shifted_delta.lhs == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(shifted_delta.rhs == 1.0);
    CHECK(shifted_delta.satisfied);

    // Shifted uniform: variance unchanged by the shift (1.25); the shift
    // adds a rising edge at 0, so I_d = 2 and lhs = (1.25+0.5)*2 = 3.5.
    const auto su = check_cramer_rao_simplified(Pmf({0.0, 0.25, 0.25, 0.25, 0.25}));
    CHECK(su.lhs == doctest::Approx(3.5).epsilon(1e-13));
    CHECK(su.satisfied);

    CHECK_THROWS_AS(check_cramer_rao_simplified(Pmf({0.5, 0.5})), std::invalid_argument);
}

TEST_CASE("simplified report agrees with the full report when p(0) = 0") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto p = zero_prefixed(corpus_pmf(/*seed=*/5150, i, /*max_support=*/32));
        const auto full = check_cramer_rao(p);
        const auto simplified = check_cramer_rao_simplified(p);
        // With p0 = 0 the full bound reduces to (sigma^2 + 1/2) I_d >= 1.
        CHECK(std::abs(full.gap - simplified.gap) <= 1e-12);
        CHECK(std::abs(full.lhs - simplified.lhs) <= 1e-12);
    }
}

TEST_CASE("max_pmf bound examples") {
    const auto d = check_max_pmf(kDelta);
    CHECK(d.lhs == 4.0);
    CHECK(d.rhs == 1.0);
    CHECK(d.gap == doctest::Approx(3.0));
    CHECK(d.strict);
    CHECK(d.satisfied);

    // Near-tight corner: geometric with small q.
    const auto g = check_max_pmf(from_family(DistributionFamily::geometric(0.1), 1e-12));
    CHECK(g.lhs == doctest::Approx(4.0 * std::pow(1.0 - std::sqrt(0.9), 2)).epsilon(1e-9));
    CHECK(g.rhs == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(g.gap == doctest::Approx(5.13e-4).epsilon(0.01));
    CHECK(g.gap > 0.0);

    const auto u = check_max_pmf(from_family(DistributionFamily::uniform(100), 1e-12));
    CHECK(u.lhs == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(u.rhs == doctest::Approx(0.0001).epsilon(1e-12));
    CHECK(u.gap == doctest::Approx(0.0399).epsilon(1e-10));
}

TEST_CASE("stam examples") {
    const auto d = check_stam(kDelta);
    CHECK(d.lhs == 4.0);
    CHECK(d.satisfied);

    for (std::int64_t n : {2, 4, 10}) {
        const auto c = check_stam(from_family(DistributionFamily::uniform(n), 1e-12));
        CHECK(c.lhs == doctest::Approx(4.0 * static_cast<double>(n)).epsilon(1e-12));
        CHECK(c.satisfied);
    }

    // q -> 0 limit of N_d I_d is e^2.
    const auto g = check_stam(from_family(DistributionFamily::geometric(0.001), 1e-12));
    CHECK(g.lhs == doctest::Approx(std::exp(2.0)).epsilon(0.02));
    CHECK(g.satisfied);
}

TEST_CASE("stam_type examples") {
    const auto d = check_stam_type(kDelta);
    CHECK(d.lhs == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(d.satisfied);

    const auto u = check_stam_type(from_family(DistributionFamily::uniform(4), 1e-12));
    CHECK(u.lhs == doctest::Approx(11.5).epsilon(1e-12));
    CHECK(u.satisfied);
}

TEST_CASE("stam_type lhs is exactly half the stam lhs when p(0) = 0") {
    const Pmf half({0.0, 0.5, 0.5});
    const auto s = check_stam(half);
    const auto t = check_stam_type(half);
    CHECK(std::abs(t.lhs - 0.5 * s.lhs) <= 1e-12);
    CHECK(s.satisfied);
    CHECK(t.satisfied);

    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto p = zero_prefixed(corpus_pmf(/*seed=*/31, i, /*max_support=*/32));
        const auto stam = check_stam(p);
        const auto type = check_stam_type(p);
        CHECK(std::abs(type.lhs - 0.5 * stam.lhs) <= 1e-12);
        if (type.gap > 0.0) CHECK(stam.gap > 1.0);
    }
}

TEST_CASE("check_all composition") {
    const auto delta_checks = check_all(kDelta);
    REQUIRE(delta_checks.size() == 4);  // simplified form not applicable
    for (const auto& c : delta_checks) CHECK(c.satisfied);
    CHECK(delta_checks[0].name == InequalityName::cramer_rao);
    CHECK(delta_checks[0].equality_case);

    const auto with_simplified = check_all(Pmf({0.0, 1.0}));
    REQUIRE(with_simplified.size() == 5);
    CHECK(with_simplified[1].name == InequalityName::cramer_rao_simplified);

    // Heavy tail: variance-bearing checks dropped, strict checks remain.
    const auto heavy = check_all(Pmf({1.0 - 1e-5}, 1e-5));
    REQUIRE(heavy.size() == 3);
    CHECK(heavy[0].name == InequalityName::max_pmf_bound);
}

TEST_CASE("universality on a random corpus") {
    int equality_cases = 0;
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const auto p = corpus_pmf(/*seed=*/777, i, /*max_support=*/64);
        for (const auto& c : check_all(p)) {
            CHECK(c.satisfied);
            if (c.strict) {
                CHECK(c.gap > 0.0);
            } else {
                CHECK(c.gap >= -1e-9);
            }
            if (c.name == InequalityName::cramer_rao && c.equality_case) {
                ++equality_cases;
                // Equality only within total variation 1e-8 of the point mass.
                double tv = std::abs(p.values()[0] - 1.0);
                for (std::size_t j = 1; j < p.support_size(); ++j) tv += p.values()[j];
                CHECK(tv / 2.0 <= 1e-8);
            }
        }
    }
    CHECK(equality_cases > 0);  // support-1 draws are the point mass
}

TEST_CASE("json record shape") {
    const auto c = check_stam(kDelta);
    const auto text = check_to_json(c);
    CHECK(text.find("\"name\":\"stam\"") != std::string::npos);
    CHECK(text.find("\"lhs\":4.0") != std::string::npos);
    CHECK(text.find("\"satisfied\":true") != std::string::npos);
    CHECK(text.find("\"equality_case\":false") != std::string::npos);
}

}  // TEST_SUITE
