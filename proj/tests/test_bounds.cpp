#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sparsectrl/bounds.hpp"
#include "sparsectrl/errors.hpp"
#include "test_util.hpp"

using namespace sparsectrl;

namespace {

// Spreadsheet-style re-evaluation: own binomials, own member lists, own
// powers, summed in long double. Shares nothing with the library path except
// the formulas themselves.
long double binom_ld(int n, int k) {
    if (k < 0 || k > n) return 0.0L;
    long double r = 1.0L;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

long double q_ld(int t, const SupportFamily& family) {
    switch (family.kind()) {
        case FamilyKind::Unconstrained:
            return binom_ld(family.n(), t);
        case FamilyKind::Piecewise:
            return static_cast<long double>(
                testutil::q_oracle(t, testutil::piecewise_members(family.n(), family.s(),
                                                                  family.m())));
        case FamilyKind::Block:
            return static_cast<long double>(
                testutil::q_oracle(t, testutil::block_members(family.n(), family.s(),
                                                              family.m())));
        case FamilyKind::Explicit:
            return static_cast<long double>(testutil::q_oracle(t, family.explicit_sets()));
    }
    return 0.0L;
}

long double reference_bound(int n, int s, double p, const SupportFamily& family,
                            const BoundParams& params, GraphKind model) {
    long double total = 0.0L;
    for (int i = 0; i <= s; ++i) {
        long double term = q_ld(i, family);
        if (model == GraphKind::Undirected) {
            term *= std::pow(1.0L - p, 0.5L * i * (2.0L * n - i - 1.0L));
            term *= 1.0L - params.big_c * std::exp(-params.small_c *
                                                   std::pow(static_cast<long double>(p) * (n - i),
                                                            1.0L / 32.0L));
        } else {
            term *= std::pow(1.0L - p, static_cast<long double>(i) * (n - 1));
            term *= 1.0L - std::exp(-params.small_c * static_cast<long double>(p) * (n - i));
        }
        total += term;
    }
    return total;
}

} // namespace

TEST_CASE("bounds validate inputs") {
    const auto family = SupportFamily::unconstrained(12, 3);
    CHECK_THROWS_AS(undirected_bound(12, 12, 0.5, SupportFamily::unconstrained(12, 12)),
                    std::invalid_argument);
    CHECK_THROWS_AS(undirected_bound(12, 3, 1.5, family), std::invalid_argument);
    CHECK_THROWS_AS(undirected_bound(10, 3, 0.5, family), std::invalid_argument);
    CHECK_THROWS_AS(undirected_bound(12, 3, 0.5, family, BoundParams{0.0, 1.0}),
                    std::invalid_argument);
    // Theorems require the family to cover all N indices.
    const auto partial = SupportFamily::explicit_family(12, {{0, 1, 2}, {3, 4, 5}});
    CHECK_THROWS_AS(undirected_bound(12, 3, 0.5, partial), model_assumption_error);
    CHECK_THROWS_AS(directed_bound(12, 3, 0.5, partial), model_assumption_error);
}

TEST_CASE("undirected bound: validity range flag") {
    const auto family = SupportFamily::unconstrained(12, 3);
    // Admissible range is [1/9, 8/9].
    CHECK(undirected_bound(12, 3, 0.5, family).valid);
    CHECK(undirected_bound(12, 3, 1.0 / 9.0, family).valid);
    CHECK_FALSE(undirected_bound(12, 3, 0.05, family).valid);
    CHECK_FALSE(undirected_bound(12, 3, 0.95, family).valid);
    // Out-of-range p still evaluates.
    CHECK(undirected_bound(12, 3, 0.05, family).raw_q > 0.0);
}

TEST_CASE("directed bound: validity range flag") {
    const auto family = SupportFamily::unconstrained(12, 3);
    const double edge = std::log(9.0) / 9.0;
    CHECK(directed_bound(12, 3, edge + 1e-6, family).valid);
    CHECK_FALSE(directed_bound(12, 3, edge - 1e-6, family).valid);
    CHECK_FALSE(directed_bound(12, 3, 1.0 - edge + 1e-6, family).valid);
}

TEST_CASE("undirected bound: bracket limit as C -> 0") {
    const auto family = SupportFamily::unconstrained(12, 2);
    const double p = 0.4;
    const auto tiny = undirected_bound(12, 2, p, family, BoundParams{1e-300, 1.0});
    long double expected = 0.0L;
    for (int i = 0; i <= 2; ++i)
        expected += binom_ld(12, i) * std::pow(1.0L - p, 0.5L * i * (23.0L - i));
    CHECK(std::abs(tiny.raw_q - static_cast<double>(expected)) <= 1e-12 * expected);
}

TEST_CASE("directed bound: p = 1 kills every i >= 1 term") {
    const auto family = SupportFamily::unconstrained(10, 3);
    const auto result = directed_bound(10, 3, 1.0, family);
    for (int i = 1; i <= 3; ++i) CHECK(result.terms[static_cast<std::size_t>(i)] == 0.0);
    CHECK(result.raw_q == doctest::Approx(1.0 - std::exp(-10.0)).epsilon(1e-14));
}

TEST_CASE("bounds match independent term-by-term evaluation to 1e-12 relative") {
    int points = 0;
    for (const int n : {8, 12, 16}) {
        for (const int s : {1, 2, 4}) {
            for (const double p : {0.1, 0.3, 0.5, 0.8}) {
                for (const double c_val : {0.5, 1.0}) {
                    const BoundParams params{1.0, c_val};
                    std::vector<SupportFamily> families;
                    families.push_back(SupportFamily::unconstrained(n, s));
                    if (n % s == 0 && s > 1) {
                        families.push_back(SupportFamily::piecewise(n, s, s));
                        families.push_back(SupportFamily::block(n, s, s));
                    }
                    for (const auto& family : families) {
                        const auto undirected = undirected_bound(n, s, p, family, params);
                        const auto directed = directed_bound(n, s, p, family, params);
                        const long double ref_u =
                            reference_bound(n, s, p, family, params, GraphKind::Undirected);
                        const long double ref_d =
                            reference_bound(n, s, p, family, params, GraphKind::Directed);
                        CHECK(std::abs(undirected.raw_q - static_cast<double>(ref_u)) <=
                              1e-12 * std::max(1.0, std::abs(static_cast<double>(ref_u))));
                        CHECK(std::abs(directed.raw_q - static_cast<double>(ref_d)) <=
                              1e-12 * std::max(1.0, std::abs(static_cast<double>(ref_d))));
                        ++points;
                    }
                }
            }
        }
    }
    CHECK(points >= 50);
}

TEST_CASE("terms sum to raw_q and q is clamped") {
    const auto family = SupportFamily::unconstrained(12, 3);
    for (const double p : {0.0, 0.2, 0.6, 1.0}) {
        const auto result = undirected_bound(12, 3, p, family);
        long double sum = 0.0L;
        for (double term : result.terms) sum += term;
        CHECK(std::abs(result.raw_q - static_cast<double>(sum)) <= 1e-15);
        CHECK(result.q >= 0.0);
        CHECK(result.q <= 1.0);
        CHECK(result.q == doctest::Approx(std::clamp(result.raw_q, 0.0, 1.0)));
    }
}

TEST_CASE("i = 0 term is exactly the bracket") {
    const auto family = SupportFamily::unconstrained(12, 3);
    for (const double p : {0.1, 0.5, 0.9}) {
        const auto result = undirected_bound(12, 3, p, family);
        const double expected = 1.0 - std::exp(-std::pow(p * 12.0, 1.0 / 32.0));
        CHECK(result.terms[0] == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("bounds are monotone in the budget s") {
    for (const int n : {10, 14}) {
        for (const double p : {0.2, 0.5, 0.8}) {
            double previous_u = -1.0;
            double previous_d = -1.0;
            for (int s = 1; s <= 5; ++s) {
                const auto family = SupportFamily::unconstrained(n, s);
                const double u = undirected_bound(n, s, p, family).raw_q;
                const double d = directed_bound(n, s, p, family).raw_q;
                CHECK(u >= previous_u - 1e-15);
                CHECK(d >= previous_d - 1e-15);
                previous_u = u;
                previous_d = d;
            }
        }
    }
}

TEST_CASE("family ordering carries over to the bounds") {
    for (const int n : {12, 24}) {
        const int s = 3;
        const auto u1 = SupportFamily::unconstrained(n, s);
        const auto u2 = SupportFamily::piecewise(n, s, 3);
        const auto u3 = SupportFamily::block(n, s, 3);
        for (const double p : {0.1, 0.4, 0.7}) {
            CHECK(undirected_bound(n, s, p, u3).raw_q <=
                  undirected_bound(n, s, p, u2).raw_q + 1e-15);
            CHECK(undirected_bound(n, s, p, u2).raw_q <=
                  undirected_bound(n, s, p, u1).raw_q + 1e-15);
            CHECK(directed_bound(n, s, p, u3).raw_q <=
                  directed_bound(n, s, p, u2).raw_q + 1e-15);
            const double s3 = structural_bound(n, s, p, u3, GraphKind::Undirected);
            const double s2 = structural_bound(n, s, p, u2, GraphKind::Undirected);
            const double s1 = structural_bound(n, s, p, u1, GraphKind::Undirected);
            CHECK(s3 <= s2 + 1e-15);
            CHECK(s2 <= s1 + 1e-15);
        }
    }
}

TEST_CASE("structural bound degenerate values") {
    const auto family = SupportFamily::unconstrained(10, 2);
    // p = 1: only i = 0 survives.
    CHECK(structural_bound(10, 2, 1.0, family, GraphKind::Undirected) == doctest::Approx(1.0));
    // p = 0: the sum is sum_i Q(i, U) >= 1, clamped.
    CHECK(structural_bound(10, 2, 0.0, family, GraphKind::Directed) == doctest::Approx(1.0));
}

TEST_CASE("regression pins: N=12, s=1, p=0.5, unconstrained, C=c=1") {
    const auto family = SupportFamily::unconstrained(12, 1);
    const BoundParams params{1.0, 1.0};
    const auto undirected = undirected_bound(12, 1, 0.5, family, params);
    const auto directed = directed_bound(12, 1, 0.5, family, params);
    const double ref_u = static_cast<double>(
        reference_bound(12, 1, 0.5, family, params, GraphKind::Undirected));
    const double ref_d = static_cast<double>(
        reference_bound(12, 1, 0.5, family, params, GraphKind::Directed));
    CHECK(undirected.raw_q == doctest::Approx(ref_u).epsilon(1e-13));
    CHECK(directed.raw_q == doctest::Approx(ref_d).epsilon(1e-13));
    CHECK(undirected.valid);
    CHECK(directed.valid);
}
