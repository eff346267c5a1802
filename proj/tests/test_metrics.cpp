#include <doctest.h>

#include <random>
#include <stdexcept>

#include "dualsat/metrics.hpp"

using namespace dualsat;

TEST_CASE("spectral efficiency") {
    CHECK(spectral_efficiency({}) == 0.0);
    CHECK(spectral_efficiency({1.5, 0.5}) == 2.0);
    CHECK_THROWS_AS(spectral_efficiency({1.0, -0.1}), std::invalid_argument);
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> ud(0.0, 3.0);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> a(5), b(7), ab;
        for (auto& x : a) x = ud(gen);
        for (auto& x : b) x = ud(gen);
        ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        CHECK(spectral_efficiency(ab) == doctest::Approx(spectral_efficiency(a) + spectral_efficiency(b)));
    }
}

TEST_CASE("jain index examples") {
    CHECK(jain_index({2.0, 2.0, 2.0}) == doctest::Approx(1.0));
    CHECK(jain_index({0.0, 0.0, 5.0, 0.0}) == doctest::Approx(0.25));
    CHECK(jain_index({3.0, 1.0}) == doctest::Approx(0.8));
    CHECK_THROWS_AS(jain_index({}), std::invalid_argument);
    CHECK_THROWS_AS(jain_index({0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(jain_index({1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("jain index bounds and scale invariance") {
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<int> len(1, 30);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (int t = 0; t < 10000; ++t) {
        const int n = len(gen);
        std::vector<double> r(n);
        for (auto& x : r) x = ud(gen) < 0.3 ? 0.0 : 10.0 * ud(gen);
        r[0] += 1e-3;
        const double j = jain_index(r);
        CHECK(j >= 1.0 / n - 1e-12);
        CHECK(j <= 1.0 + 1e-12);
        const double c = std::exp(8.0 * ud(gen) - 4.0);
        std::vector<double> s = r;
        for (auto& x : s) x *= c;
        CHECK(jain_index(s) == doctest::Approx(j).epsilon(1e-12));
    }
}

TEST_CASE("power efficiency") {
    CHECK(power_efficiency(2.0, 0.0) == doctest::Approx(2.0));
    CHECK(power_efficiency(2.0, 10.0) == doctest::Approx(0.2));
    CHECK(power_efficiency(3.0, 29.0) == doctest::Approx(3.0 / 794.328).epsilon(1e-5));
    // sub-linear SE growth between two powers lowers PE
    CHECK(power_efficiency(4.0, 20.0) < power_efficiency(3.0, 10.0));
}

TEST_CASE("rate cdf") {
    const auto c = rate_cdf({2.0, 1.0, 3.0});
    CHECK(c.samples() == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(c.at(1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(c.below(1.0) == 0.0);
    CHECK(c.at(3.0) == 1.0);
    const auto d = rate_cdf({0.5, 1.0, 1.0, 1.0, 2.0});
    CHECK(d.at(1.0) - d.below(1.0) == doctest::Approx(3.0 / 5.0));
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> ud(0.0, 5.0);
    std::vector<double> r(200);
    for (auto& x : r) x = ud(gen);
    const auto e = rate_cdf(r);
    for (std::size_t i = 1; i < e.samples().size(); ++i) CHECK(e.samples()[i] >= e.samples()[i - 1]);
    double prev = 0.0;
    for (double x = -1.0; x < 6.0; x += 0.05) {
        CHECK(e.at(x) >= prev);
        prev = e.at(x);
    }
}

TEST_CASE("summary report") {
    const std::vector<double> rates = {0.0, 0.05, 1.0, 3.0};
    const auto m = summarize_rates(rates, 10.0, 0.1);
    CHECK(m.se_total == doctest::Approx(4.05));
    CHECK(m.pe == doctest::Approx(0.405));
    CHECK(m.unavailable == doctest::Approx(0.5));
    CHECK(m.jain == doctest::Approx(jain_index(rates)));
    CHECK(m.cdf == std::vector<double>{0.0, 0.05, 1.0, 3.0});
}
