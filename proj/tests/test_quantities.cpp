#include <doctest.h>

#include <cmath>
#include <vector>

#include "dfi/pmf.hpp"
#include "dfi/quantities.hpp"
#include "dfi/tightness.hpp"

using namespace dfi;

namespace {

const Pmf kDelta({1.0});
const Pmf kUniform4 = from_family(DistributionFamily::uniform(4), 1e-12);
const Pmf kBernoulliHalf({0.5, 0.5});

}  // namespace

TEST_SUITE("quantities") {

TEST_CASE("sqrt_transform") {
    CHECK(sqrt_transform(kDelta) == std::vector<double>{1.0});
    const auto phi = sqrt_transform(Pmf({0.25, 0.75}));
    CHECK(phi[0] == doctest::Approx(0.5));
    CHECK(phi[1] == doctest::Approx(0.8660254037844386));
    // Zero entries are fine.
    CHECK(sqrt_transform(Pmf({0.0, 1.0})) == std::vector<double>{0.0, 1.0});
}

TEST_CASE("dfi_direct on point mass is exactly 4") {
    const auto d = dfi_direct(kDelta);
    CHECK(d.value == 4.0);
    CHECK(d.error_bound == 0.0);
}

TEST_CASE("dfi_direct on uniform N is 4/N") {
    CHECK(dfi_direct(kUniform4).value == doctest::Approx(1.0).epsilon(1e-15));
    const auto u10 = from_family(DistributionFamily::uniform(10), 1e-12);
    CHECK(dfi_direct(u10).value == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("dfi_direct on geometric matches the closed form within its bound") {
    const auto p = from_family(DistributionFamily::geometric(0.75), 1e-12);
    const auto d = dfi_direct(p);
    CHECK(std::abs(d.value - 1.0) <= d.error_bound + 1e-12);
    CHECK(d.error_bound > 0.0);  // truncated: nonzero certified bound
    CHECK(d.error_bound < 1e-10);
}

TEST_CASE("dfi_direct on bernoulli(0.5) is 2") {
    CHECK(dfi_direct(kBernoulliHalf).value == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("autocorrelation") {
    CHECK(autocorrelation(kUniform4, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(autocorrelation(kDelta, 1) == 0.0);
    CHECK(autocorrelation(kUniform4, 1) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(autocorrelation(kUniform4, 4) == 0.0);  // lag beyond support
}

TEST_CASE("dfi_autocorr identity") {
    CHECK(dfi_autocorr(kDelta) == doctest::Approx(4.0));
    CHECK(dfi_autocorr(kUniform4) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dfi_autocorr(kBernoulliHalf) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("dfi_autocorr refuses truncated pmfs") {
    const auto p = from_family(DistributionFamily::geometric(0.5), 1e-12);
    REQUIRE(p.tail_mass_bound() > 0.0);
    CHECK_THROWS_AS(dfi_autocorr(p), std::invalid_argument);
}

TEST_CASE("hellinger_sq basics") {
    const std::vector<double> a{0.2, 0.3, 0.5};
    CHECK(hellinger_sq(a, a) == 0.0);
    const std::vector<double> delta0{1.0};
    const std::vector<double> delta1{0.0, 1.0};
    CHECK(hellinger_sq(delta0, delta1) == doctest::Approx(1.0));
    // symmetry
    const std::vector<double> b{0.6, 0.4};
    CHECK(hellinger_sq(a, b) == doctest::Approx(hellinger_sq(b, a)));
    CHECK_THROWS_AS(hellinger_sq(std::vector<double>{-0.1}, a), std::invalid_argument);
}

TEST_CASE("dfi equals 8 times hellinger to the shifted pmf") {
    auto s = shifted(kUniform4);
    s.values.push_back(0.0);  // boundary term for the finite support
    CHECK(hellinger_sq(kUniform4.values(), s.values) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(8.0 * hellinger_sq(kUniform4.values(), s.values) ==
          doctest::Approx(dfi_direct(kUniform4).value).epsilon(1e-14));
}

TEST_CASE("mean and variance") {
    CHECK(mean(kUniform4) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(variance(kUniform4) == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(mean(kDelta) == 0.0);
    CHECK(variance(kDelta) == 0.0);
    const auto g = from_family(DistributionFamily::geometric(0.5), 1e-12);
    CHECK(mean(g) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(variance(g) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("entropy and entropy power") {
    CHECK(entropy(kDelta) == 0.0);
    CHECK(entropy_power(kDelta) == 1.0);
    for (int n : {2, 4, 100}) {
        const auto u = from_family(DistributionFamily::uniform(n), 1e-12);
        CHECK(entropy(u) == doctest::Approx(std::log(n)).epsilon(1e-13));
        CHECK(entropy_power(u) == doctest::Approx(static_cast<double>(n) * n).epsilon(1e-12));
    }
    const auto g = from_family(DistributionFamily::geometric(0.5), 1e-12);
    CHECK(entropy_power(g) == doctest::Approx(16.0).epsilon(1e-9));
}

TEST_CASE("max_pmf with lowest-index tie break") {
    const auto m = max_pmf(kUniform4);
    CHECK(m.value == 0.25);
    CHECK(m.index == 0);
    const auto g = max_pmf(from_family(DistributionFamily::geometric(0.3), 1e-12));
    CHECK(g.value == doctest::Approx(0.3));
    CHECK(g.index == 0);
    const auto p = from_family(DistributionFamily::poisson(2.5), 1e-12);
    CHECK(max_pmf(p).value == doctest::Approx(std::exp(-2.5) * 2.5 * 2.5 / 2.0).epsilon(1e-12));
}

TEST_CASE("quantity_report aggregates") {
    const auto u = quantity_report(kUniform4);
    CHECK(u.dfi == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(u.entropy == doctest::Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(u.entropy_power == doctest::Approx(16.0).epsilon(1e-13));
    CHECK(u.mean == doctest::Approx(1.5));
    CHECK(u.variance == doctest::Approx(1.25));
    CHECK(u.max_pmf == 0.25);
    CHECK(u.p0 == 0.25);
    CHECK(u.autocorr_lag1 == doctest::Approx(0.75));
    CHECK(u.error_bound_dfi == 0.0);

    const auto d = quantity_report(kDelta);
    CHECK(d.dfi == 4.0);
    CHECK(d.entropy == 0.0);
    CHECK(d.entropy_power == 1.0);
    CHECK(d.mean == 0.0);
    CHECK(d.variance == 0.0);
    CHECK(d.max_pmf == 1.0);
    CHECK(d.p0 == 1.0);
    CHECK(d.autocorr_lag1 == 0.0);

    const auto g = quantity_report(from_family(DistributionFamily::geometric(0.75), 1e-12));
    CHECK(std::abs(g.dfi - 1.0) <= g.error_bound_dfi + 1e-12);
    CHECK(g.max_pmf == doctest::Approx(0.75));
    CHECK(g.mean == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK(g.variance == doctest::Approx(4.0 / 9.0).epsilon(1e-8));
}

TEST_CASE("operations reject invalid pmfs") {
    const Pmf bad({0.5, 0.6});
    CHECK_THROWS_AS(quantity_report(bad), std::invalid_argument);
    CHECK_THROWS_AS(dfi_direct(bad), std::invalid_argument);
    CHECK_THROWS_AS(entropy(bad), std::invalid_argument);
}

TEST_CASE("equivalence of the three dfi forms on random zero-tail pmfs") {
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto p = corpus_pmf(/*seed=*/1234, i, /*max_support=*/64);
        const double direct = dfi_direct(p).value;
        const double via_autocorr = dfi_autocorr(p);
        CHECK(std::abs(direct - via_autocorr) <= 1e-12);

        auto s = shifted(p);
        s.values.push_back(0.0);
        const double via_hellinger = 8.0 * hellinger_sq(p.values(), s.values);
        CHECK(std::abs(direct - via_hellinger) <= 1e-12);
    }
}

TEST_CASE("dfi range and entropy nonnegativity on random pmfs") {
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto p = corpus_pmf(/*seed=*/99, i, /*max_support=*/64);
        const auto r = quantity_report(p);
        CHECK(r.dfi >= 0.0);
        CHECK(r.dfi <= 8.0 + 1e-12);
        CHECK(r.entropy >= 0.0);
        CHECK(r.entropy_power >= 1.0 - 1e-12);
        CHECK(r.max_pmf >= r.p0);
        const double denom = static_cast<double>(p.support_size()) +
                             (p.tail_mass_bound() > 0.0 ? 1.0 : 0.0);
        CHECK(r.max_pmf >= 1.0 / denom - 1e-15);
    }
}

TEST_CASE("dfi invariant under appending trailing zeros") {
    const Pmf base({0.125, 0.5, 0.375});
    auto padded_values = base.values();
    padded_values.push_back(0.0);
    padded_values.push_back(0.0);
    const Pmf padded(padded_values);
    CHECK(dfi_direct(base).value == dfi_direct(padded).value);
}

}  // TEST_SUITE
