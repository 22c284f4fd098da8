#include "porpob/error.hpp"
#include "porpob/estimators.hpp"
#include "porpob/scm_sim.hpp"
#include "porpob/statistic.hpp"

#include "support.hpp"

#include <doctest.h>

#include <numeric>

using namespace porpob;

namespace {

const std::vector<std::vector<double>> kStudents = {
    {30, 40, 50}, {40, 50, 60}, {50, 60, 70}, {30, 50, 40},
    {40, 60, 50}, {60, 70, 40}, {50, 60, 40}, {100, 5, 0},
};

Ranking R(std::vector<int> v) {
    const int k = static_cast<int>(v.size());
    return Ranking::from_ints(v, k);
}

} // namespace

TEST_CASE("counterfactual_map examples") {
    const auto s = oracle::make_study({{10, 20, 30}, {1, 2, 3}});
    CHECK(counterfactual_map(s, ActionId(1), ActionId(2), 20) == 3);
    CHECK(counterfactual_map(s, ActionId(1), ActionId(1), 5) == 10);
    const auto t = oracle::make_study({{0, 1}, {5, 6}});
    CHECK(counterfactual_map(t, ActionId(1), ActionId(2), 0) == 6);
    CHECK_THROWS_AS(counterfactual_map(t, ActionId(1), ActionId(3), 0), KeyError);
}

TEST_CASE("estimate_por small cases") {
    // Single-sample arms are below the study minimum, so pad with a far-away copy.
    const auto s = oracle::make_study({{2, 2}, {1, 1}});
    CHECK(estimate_por(s, R({1, 2})).value == 1.0);
    CHECK(estimate_por(s, R({2, 1})).value == 0.0);
    CHECK_THROWS_AS(estimate_por(s, R({1, 2, 3})), ValidationError);
}

TEST_CASE("example 1 homogeneous SCM gives (3,2,1) with certainty") {
    const auto spec = ScmSpec::preset("example1");
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto s = sample_study(spec, 400, seed);
        CHECK(estimate_por(s, R({3, 2, 1})).value == 1.0);
        const auto [rank, est] = best_ranking(s);
        CHECK(rank == R({3, 2, 1}));
        CHECK(est.value == 1.0);
        const auto [a, pob] = best_action(s);
        CHECK(a == ActionId(3));
        CHECK(pob.value == 1.0);
    }
}

TEST_CASE("example 2 large N") {
    const auto s = sample_study(ScmSpec::preset("example2"), 20000, 3);
    CHECK(estimate_pob(s, ActionId(3)).value == doctest::Approx(0.6).epsilon(0.05));
    CHECK(best_action(s).first == ActionId(3));
    const auto [rank, est] = best_ranking(s);
    CHECK(rank == R({3, 2, 1}));
    CHECK(est.value == doctest::Approx(0.6).epsilon(0.05));
}

TEST_CASE("roe means and tie-break") {
    std::vector<std::vector<double>> cols(3);
    for (const auto& row : kStudents) {
        for (int j = 0; j < 3; ++j) cols[j].push_back(row[j]);
    }
    const auto roe = estimate_roe(oracle::make_study(cols));
    CHECK(roe.means == std::vector<double>{50, 49.375, 43.75});
    CHECK(roe.ranking_by_mean == R({1, 2, 3}));

    const auto c = estimate_roe(oracle::make_study({{7, 7}, {7, 7}, {7, 7}}));
    CHECK(c.ranking_by_mean == R({1, 2, 3}));
    const auto d = estimate_roe(oracle::make_study({{0, 2}, {1, 1, 1}}));
    CHECK(d.means == std::vector<double>{1, 1});
    CHECK(d.ranking_by_mean == R({1, 2}));
}

TEST_CASE("best_ranking cap and K=2 dominance") {
    const auto s = oracle::make_study({{1, 2, 3}, {4, 5, 6}});
    CHECK(best_ranking(s).first == R({2, 1}));
    CHECK(best_action(oracle::make_study({{1, 2}, {1, 2}})).first == ActionId(1));
    oracle::Arms nine(9, std::vector<double>{0, 1});
    CHECK_THROWS_AS(best_ranking(oracle::make_study(nine)), ValidationError);
    CHECK_NOTHROW(best_ranking(oracle::make_study(nine), 9));
}

TEST_CASE("exact oracle on the student table") {
    const PoMatrix m(kStudents, {"A", "B", "C"});
    CHECK(exact_pob(m, ActionId(1)).value == 0.125);
    CHECK(exact_pob(m, ActionId(2)).value == 0.5);
    CHECK(exact_pob(m, ActionId(3)).value == 0.375);
    CHECK(exact_por(m, R({3, 2, 1})).value == 0.375);
    CHECK(exact_por(m, R({2, 3, 1})).value == 0.25);
    CHECK(exact_por(m, R({2, 1, 3})).value == 0.25);
    CHECK(exact_por(m, R({1, 2, 3})).value == 0.125);
    CHECK(exact_por(m, R({1, 3, 2})).value == 0.0);
    CHECK(exact_por(m, R({3, 1, 2})).value == 0.0);
    double total = 0;
    for (const auto& r : all_rankings(3)) total += exact_por(m, r).value;
    CHECK(total == 1.0);
    for (int a = 1; a <= 3; ++a) {
        double sum = 0;
        for (const auto& r : all_rankings(3)) {
            if (r.first() == ActionId(a)) sum += exact_por(m, r).value;
        }
        CHECK(sum == exact_pob(m, ActionId(a)).value);
    }
}

TEST_CASE("exact oracle single row and ties") {
    const PoMatrix one({{30, 40, 50}});
    CHECK(exact_pob(one, ActionId(3)).value == 1.0);
    CHECK(exact_pob(one, ActionId(1)).value == 0.0);
    const PoMatrix tied({{5, 5, 3}, {1, 2, 3}});
    const auto e = exact_pob(tied, ActionId(1));
    CHECK(e.value == 0.0);
    CHECK(e.tied_rows == 1);
    CHECK(exact_por(tied, R({1, 2, 3})).tied_rows == 1);
    CHECK(exact_por(tied, R({3, 2, 1})).value == 0.5);
}

TEST_CASE("estimators agree with brute force") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const int k = 2 + static_cast<int>(seed % 3);
        const auto arms = oracle::random_arms(seed, k, 2, 30);
        const auto s = oracle::make_study(arms);
        for (const auto& r : all_rankings(k)) CHECK(estimate_por(s, r).value == oracle::por(arms, r.to_ints()));
        for (int a = 1; a <= k; ++a) CHECK(estimate_pob(s, ActionId(a)).value == oracle::pob(arms, a));
    }
}

TEST_CASE("ties in data count as failures") {
    const auto s = oracle::make_study({{1, 2, 3}, {1, 2, 3}});
    const auto e = estimate_por(s, R({1, 2}));
    // Y_(i) maps to Y_(i+1) of the copy; only the clamped top sample lands on itself.
    CHECK(e.value == 0.0);
    CHECK(e.tied_samples == 1);
    CHECK(estimate_pob(s, ActionId(2)).tied_samples == 1);
    const auto t = oracle::make_study({{1, 2, 3, 4}, {0, 2, 2, 2}});
    const auto f = estimate_por(t, R({1, 2}));
    CHECK(f.hits == 2);
    CHECK(f.tied_samples == 1);
}

TEST_CASE("K=2 reduction is bitwise") {
    for (std::uint64_t seed = 100; seed < 150; ++seed) {
        const auto s = oracle::make_study(oracle::random_arms(seed, 2, 2, 60));
        CHECK(estimate_por(s, R({1, 2})).value == estimate_pob(s, ActionId(1)).value);
        CHECK(estimate_por(s, R({2, 1})).value == estimate_pob(s, ActionId(2)).value);
    }
}

TEST_CASE("fixed-base marginalization in integers") {
    for (std::uint64_t seed = 200; seed < 230; ++seed) {
        const int k = 3 + static_cast<int>(seed % 2);
        const auto s = oracle::make_study(oracle::random_arms(seed, k, 5, 80));
        for (int a = 1; a <= k; ++a) {
            std::size_t hits = 0;
            for (const auto& r : all_rankings(k)) {
                if (r.first() == ActionId(a)) hits += estimate_por(s, r).hits;
            }
            const auto pob = estimate_pob(s, ActionId(a));
            CHECK(hits == pob.hits);
        }
    }
}

TEST_CASE("monotone transform invariance") {
    Rng rng(77);
    for (int t = 0; t < 20; ++t) {
        const auto g = oracle::PiecewiseLinear::random(rng);
        auto arms = oracle::random_arms(1000 + static_cast<std::uint64_t>(t), 3, 10, 50);
        const auto s = oracle::make_study(arms);
        for (auto& a : arms) {
            for (double& v : a) v = g(v);
        }
        const auto gs = oracle::make_study(arms);
        for (const auto& r : all_rankings(3)) CHECK(estimate_por(s, r).value == estimate_por(gs, r).value);
        for (int a = 1; a <= 3; ++a) CHECK(estimate_pob(s, ActionId(a)).value == estimate_pob(gs, ActionId(a)).value);
        CHECK(best_ranking(s).first == best_ranking(gs).first);
        CHECK(best_action(s).first == best_action(gs).first);
    }
}

TEST_CASE("roe argmax invariant under positive affine maps") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto arms = oracle::random_arms(seed, 4, 5, 20);
        const auto before = estimate_roe(oracle::make_study(arms)).ranking_by_mean.first();
        for (auto& a : arms) {
            for (double& v : a) v = 2.5 * v + 7.0;
        }
        CHECK(estimate_roe(oracle::make_study(arms)).ranking_by_mean.first() == before);
    }
}

TEST_CASE("relabeling equivariance") {
    const std::vector<int> perm{3, 1, 4, 2}; // old action i+1 becomes perm[i]
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto arms = oracle::random_arms(seed * 31, 4, 5, 40);
        oracle::Arms moved(4);
        for (int i = 0; i < 4; ++i) moved[perm[i] - 1] = arms[i];
        const auto s = oracle::make_study(arms);
        const auto p = oracle::make_study(moved);
        for (const auto& r : all_rankings(4)) {
            std::vector<int> pr;
            for (int a : r.to_ints()) pr.push_back(perm[a - 1]);
            CHECK(estimate_por(s, r).value == estimate_por(p, R(pr)).value);
        }
        for (int a = 1; a <= 4; ++a) {
            CHECK(estimate_pob(s, ActionId(a)).value == estimate_pob(p, ActionId(perm[a - 1])).value);
        }
    }
}

TEST_CASE("statistic wrapper") {
    const auto s = oracle::make_study({{1, 2, 3}, {4, 5, 6}});
    CHECK(Statistic::por(R({2, 1})).evaluate(s) == 1.0);
    CHECK(Statistic::roe(ActionId(2)).evaluate(s) == 5.0);
    CHECK(Statistic::por(R({2, 1})).label() == "por(2,1)");
    CHECK(Statistic::parse_kind("por-upper") == Statistic::Kind::PorUpper);
    CHECK_FALSE(Statistic::parse_kind("nope").has_value());
}
