#include "helpers.hpp"

#include <graphgames/cycles.hpp>
#include <graphgames/testing/generators.hpp>

#include <gtest/gtest.h>

#include <chrono>
#include <set>

using namespace graphgames;

namespace {

std::vector<std::size_t> plateau_vertices(const PlateauInfo& info)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < info.is_plateau_point.size(); ++i)
        if (info.is_plateau_point[i]) out.push_back(i);
    return out;
}

std::vector<Weight> concat_seqs(std::initializer_list<std::vector<Weight>> parts)
{
    std::vector<Weight> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<Weight> n_one_zero_cycle(int N, int k)
{
    std::vector<Weight> a{Weight(N)};
    for (int i = 0; i < k; ++i) {
        a.push_back(Weight(1));
        a.push_back(Weight(0));
    }
    return a;
}

// Independent Def 4.2 check by walking outward from each vertex.
bool plateau_by_definition(const std::vector<Weight>& a, std::size_t i, bool cyclic)
{
    std::size_t n = a.size();
    for (int dir : {1, -1}) {
        for (std::size_t step = 1; step < (cyclic ? n : n + 1); ++step) {
            long j = long(i) + dir * long(step);
            if (!cyclic && (j < 0 || j >= long(n))) break;
            const Weight& w = a[std::size_t((j % long(n) + long(n)) % long(n))];
            if (w != a[i]) {
                if (w > a[i]) return false;
                break;
            }
        }
    }
    return true;
}

} // namespace

TEST(Plateaus, Examples)
{
    auto c = plateau_points(W({0, 1, 0, 2}), true);
    EXPECT_EQ(plateau_vertices(c), (std::vector<std::size_t>{1, 3}));

    auto flat = plateau_points(W({4, 4, 4, 4, 4}), true);
    ASSERT_EQ(flat.plateaus.size(), 1u);
    EXPECT_EQ(flat.plateaus[0].length, 5u);

    auto p = plateau_points(W({1, 2, 3}), false);
    EXPECT_EQ(plateau_vertices(p), (std::vector<std::size_t>{2}));
    EXPECT_EQ(p.left_flank, 2u);
    EXPECT_EQ(p.right_flank, 0u);

    auto wrap = plateau_points(W({3, 1, 2, 3}), true);
    ASSERT_EQ(wrap.plateaus.size(), 1u);
    EXPECT_EQ(wrap.plateaus[0].start, 3u);
    EXPECT_EQ(wrap.plateaus[0].length, 2u);
    EXPECT_EQ(wrap.neighboring[1], (std::vector<std::size_t>{0}));
}

TEST(Plateaus, MatchDefinitionAndFlanks)
{
    gen::Rng rng(7);
    for (int it = 0; it < 500; ++it) {
        auto a = gen::random_weights(rng, std::size_t(gen::uniform(rng, 1, 12)), 0, 3);
        for (bool cyclic : {false, true}) {
            auto info = plateau_points(a, cyclic);
            for (std::size_t i = 0; i < a.size(); ++i) {
                EXPECT_EQ(info.is_plateau_point[i], plateau_by_definition(a, i, cyclic));
                EXPECT_FALSE(info.neighboring[i].empty());
                EXPECT_LE(info.neighboring[i].size(), 2u);
            }
            if (!cyclic) {
                for (std::size_t i = 0; i + 1 < info.left_flank; ++i) EXPECT_LE(a[i], a[i + 1]);
                for (std::size_t i = a.size() - info.right_flank; i + 1 < a.size(); ++i) EXPECT_GE(a[i], a[i + 1]);
            }
        }
    }
}

TEST(SolveCycle, Examples)
{
    EXPECT_EQ(solve_cycle(W({0, 1, 0, 1, 0, 0, 1, 0, 2, 0, 0, 2, 0, 2, 0})).value, Weight(-1));
    EXPECT_EQ(solve_cycle(W({0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0})).value, Weight(-1));
    EXPECT_EQ(solve_cycle(W({0, 5, 2, 1, 2, 1})).value, Weight(5));
    EXPECT_EQ(solve_cycle(W({0, 3, 3, 1, 2, 1})).value, Weight(2));
    EXPECT_EQ(solve_cycle(W({2, 3, 1, 2, 0})).value, Weight(2));
    EXPECT_EQ(solve_cycle(W({0, 1, 0, 2})).value, Weight(3));
    EXPECT_EQ(solve_cycle(W({7})).value, Weight(7));
    EXPECT_EQ(solve_cycle(W({1, 4})).value, Weight(3));
}

TEST(SolveCycle, OptimalVerticesRealizeValue)
{
    auto a = W({0, 5, 2, 1, 2, 1});
    auto s = solve_cycle(a);
    ASSERT_FALSE(s.optimal_vertices.empty());
    for (auto i : s.optimal_vertices) EXPECT_EQ(cycle_move_outcome(a, i), s.value);
    auto outcomes = outcome_per_move(cyc(a));
    for (auto i : s.optimal_vertices) EXPECT_EQ(outcomes.at(int(i) + 1), s.value);
}

TEST(SolveUnbroachedPath, Examples)
{
    EXPECT_EQ(solve_unbroached_path(W({0, 1, 0, 2})).value, Weight(3));
    EXPECT_EQ(solve_unbroached_path(W({3, 1, 2})).value, Weight(4));
    EXPECT_EQ(solve_unbroached_path(W({1, 2, 3})).value, Weight(2));
    EXPECT_EQ(solve_unbroached_path(W({1, 0, 1, 1, 0})).value, Weight(1));
    EXPECT_EQ(solve_unbroached_path(W({1, 2, 3, 4, 5})).value, Weight(3));
    EXPECT_EQ(solve_cycle(W({1, 0, 1, 1, 0})).value, Weight(1));
}

TEST(Rotations, Examples)
{
    auto r = cycle_value_via_rotations(W({0, 1, 0, 2}));
    EXPECT_EQ(r.combined, Weight(3));
    for (auto& v : r.path_values) EXPECT_EQ(v, Weight(3));

    auto q = cycle_value_via_rotations(W({1, 2, 3, 4, 5}));
    EXPECT_EQ(q.combined, Weight(3));
    std::set<Weight> distinct(q.path_values.begin(), q.path_values.end());
    EXPECT_EQ(distinct, (std::set<Weight>{3, 5, 7}));
    EXPECT_EQ(q.combined, solve_cycle(W({1, 2, 3, 4, 5})).value);
}

TEST(Rotations, SomeRotationOfOddSequenceIsSlice)
{
    gen::Rng rng(11);
    for (int it = 0; it < 300; ++it) {
        std::size_t n = std::size_t(2 * gen::uniform(rng, 0, 6) + 1);
        auto a = gen::random_fractions(rng, n, -3, 4);
        bool found = false;
        for (std::size_t r = 0; r < n && !found; ++r) {
            std::vector<Weight> b;
            for (std::size_t t = 0; t < n; ++t) b.push_back(a[(r + t) % n]);
            found = is_slice<Weight>(std::span<const Weight>(b));
        }
        EXPECT_TRUE(found);
    }
}

TEST(EvenPlateaus, Examples)
{
    EXPECT_TRUE(delete_even_plateaus(W({1, 2, 3, 3, 2, 1})).empty());
    EXPECT_TRUE(delete_even_plateaus(W({1, 3, 4, 4, 3, 2, 2, 1})).empty());
    EXPECT_TRUE(delete_even_plateaus(W({1, 3, 3, 2, 2, 1})).empty());
    EXPECT_TRUE(delete_even_plateaus(W({2, 1, 2, 3, 3, 2, 1, 2})).empty());
    auto r = delete_even_plateaus(W({0, 1, 0, 1, 1, 0}));
    EXPECT_FALSE(r.empty());
    EXPECT_EQ(solve_cycle(W({0, 1, 0, 1, 1, 0})).value, Weight(1));
    for (auto s : {W({1, 2, 3, 3, 2, 1}), W({1, 3, 3, 2, 2, 1}), W({2, 1, 2, 3, 3, 2, 1, 2}), W({1, 3, 4, 4, 3, 2, 2, 1})})
        EXPECT_EQ(solve_cycle(s).value, Weight(0));
}

TEST(EvenPlateaus, EmptyFixpointIffZeroForEvenCycles)
{
    gen::Rng rng(12);
    for (int it = 0; it < 400; ++it) {
        std::size_t n = std::size_t(2 * gen::uniform(rng, 1, 5));
        auto a = gen::random_weights(rng, n, 0, 3);
        bool zero = solve_cycle(a).value.sign() == 0;
        EXPECT_EQ(delete_even_plateaus(a).empty(), zero) << join_weights(a);
    }
}

TEST(EvenPlateaus, DeletionPreservesValue)
{
    gen::Rng rng(13);
    for (int it = 0; it < 300; ++it) {
        auto a = gen::random_weights(rng, std::size_t(gen::uniform(rng, 3, 11)), 0, 3);
        auto info = plateau_points(a, true);
        for (auto& p : info.plateaus) {
            if (p.length % 2 || p.length == a.size()) continue;
            std::vector<Weight> b;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (!p.contains(i, a.size())) b.push_back(a[i]);
            EXPECT_EQ(solve_cycle(b).value, solve_cycle(a).value);
        }
    }
}

TEST(Margins, Examples)
{
    EXPECT_EQ(four_ninths_margin(W({0, 1, 0, 1, 0, 0, 1, 0, 2, 0, 0, 2, 0, 2, 0})), Weight(0));
    EXPECT_EQ(four_ninths_margin(W({1, 1, 1})), R("4/3"));
    EXPECT_EQ(four_ninths_margin(W({0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0})), Weight(0));
    EXPECT_THROW(four_ninths_margin(W({1, -1, 2})), std::invalid_argument);
}

TEST(Margins, NonnegativeOnRandomPizzas)
{
    gen::Rng rng(14);
    for (int it = 0; it < 400; ++it) {
        auto a = gen::random_fractions(rng, std::size_t(gen::uniform(rng, 1, 25)), 0, 3);
        EXPECT_GE(four_ninths_margin(a), Weight(0)) << join_weights(a);
    }
}

TEST(MuBound, Examples)
{
    EXPECT_EQ(mu_bound(R("1/3")), R("1/3"));
    EXPECT_EQ(mu_bound(Weight(0)), R("1/9"));
    EXPECT_EQ(mu_bound(Weight(1)), Weight(1));
    EXPECT_EQ(mu_bound(R("1/6")), R("2/9"));
    EXPECT_THROW(mu_bound(R("-1/2")), std::invalid_argument);
    EXPECT_THROW(mu_bound(R("3/2")), std::invalid_argument);
}

TEST(MuBound, SharpAndHoldsOnOddCycles)
{
    for (auto mu : {R("1/3"), R("1/2"), R("3/4"), Weight(1)}) {
        auto a = std::vector<Weight>{Weight(-2) * mu, Weight(1) - mu, Weight(1) - mu};
        Weight g = abs_total(a);
        EXPECT_EQ(solve_cycle(a).value, -mu_bound(mu) * g);
    }
    gen::Rng rng(15);
    for (int it = 0; it < 500; ++it) {
        std::size_t n = std::size_t(2 * gen::uniform(rng, 1, 7) + 1);
        auto a = gen::random_weights(rng, n, -gen::uniform(rng, 0, 6), 5);
        Weight g = abs_total(a);
        if (g.sign() == 0) continue;
        Weight m = *std::min_element(a.begin(), a.end());
        Weight mu = m.sign() < 0 ? -m / g : Weight(0);
        Weight v = solve_cycle(a).value;
        EXPECT_GE(v, -mu_bound(mu) * g) << join_weights(a);
        if (m / g <= R("-1/3")) {
            EXPECT_GE(v, m) << join_weights(a);
        }
    }
}

TEST(Generators, GkFamily)
{
    EXPECT_EQ(gen_gk(2), W({0, 1, 0, 1, 0, 0, 1, 0, 2, 0, 0, 2, 0, 2, 0}));
    for (int k = 2; k <= 8; ++k) EXPECT_EQ(solve_cycle(gen_gk(k)).value, Weight(-(k - 1))) << k;
    EXPECT_THROW(gen_gk(1), std::invalid_argument);
}

TEST(Generators, PlusMinusOneCycles)
{
    EXPECT_EQ(solve_cycle(gen_pm1_cycle(21)).value, Weight(-3));
    for (int n = 3; n <= 61; n += 2) {
        auto g = gen_pm1_cycle(n);
        ASSERT_EQ(g.size(), std::size_t(n));
        for (auto& w : g) EXPECT_TRUE(w == Weight(1) || w == Weight(-1));
        EXPECT_EQ(solve_cycle(g).value, Weight(-2 * ((n - 3) / 18) - 1)) << n;
    }
    EXPECT_THROW(gen_pm1_cycle(4), std::invalid_argument);
    EXPECT_THROW(gen_pm1_cycle(1), std::invalid_argument);
}

TEST(Generators, PlusMinusOneMinimumIsExhaustive)
{
    for (int n = 3; n <= 15; n += 2) {
        Weight lowest(n);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<Weight> a;
            for (int i = 0; i < n; ++i) a.push_back(Weight(mask >> i & 1 ? 1 : -1));
            lowest = std::min(lowest, solve_cycle(a).value);
        }
        EXPECT_EQ(lowest, Weight(-2 * ((n - 3) / 18) - 1)) << n;
    }
}

TEST(Generators, PiPizza)
{
    auto g = gen_pi_pizza(W({2, 3, 4}), 2);
    auto h = R("3/2");
    EXPECT_EQ(g, (std::vector<Weight>{0, 1, 0, 1, 0, 0, h, 0, h, 0, 0, 2, 0, 2, 0}));
    auto tiling = special_slices(g);
    ASSERT_TRUE(tiling);
    EXPECT_EQ(tiling->slice_weights, W({-2, -3, -4}));
    gen::Rng rng(16);
    for (int it = 0; it < 60; ++it) {
        auto xs = gen::random_weights(rng, std::size_t(2 * gen::uniform(rng, 0, 2) + 1), 1, 6);
        auto p = gen_pi_pizza(xs, gen::uniform(rng, 1, 3));
        EXPECT_GE(four_ninths_margin(p), Weight(0));
    }
    EXPECT_THROW(gen_pi_pizza(W({1, 0}), 2), std::invalid_argument);
}

TEST(SpecialSlices, DeltaExamples)
{
    EXPECT_EQ(delta_statistic(W({0, 2, 0})), Weight(2));
    EXPECT_EQ(delta_statistic(W({0, 1, 0, 1, 0})), Weight(0));
    EXPECT_EQ(delta_statistic(W({0, 1, 0, 2, 0})), Weight(1));
    EXPECT_EQ(delta_statistic(W({0, 2, 0, 2, 0})), Weight(0));
    EXPECT_EQ(delta_statistic(W({0, 1, 0, 4, 0, 1, 0})), Weight(4));
    EXPECT_THROW(delta_statistic(W({0, 1, 1, 0})), std::invalid_argument);
    EXPECT_THROW(delta_statistic(W({0, 0, 0})), std::invalid_argument);
}

TEST(SpecialSlices, DeltaIsNonnegativeAndZeroAtHalf)
{
    gen::Rng rng(17);
    for (int it = 0; it < 500; ++it) {
        auto p = gen::random_weights(rng, std::size_t(gen::uniform(rng, 1, 6)), 1, 5);
        Weight d = delta_statistic(special_slice(p));
        EXPECT_GE(d, Weight(0));
        Weight total, prefix;
        for (auto& x : p) total += x;
        bool half = false;
        for (auto& x : p) {
            prefix += x;
            if (Weight(2) * prefix == total) half = true;
        }
        EXPECT_EQ(d.sign() == 0, half);
    }
}

TEST(SpecialSlices, Tiling)
{
    EXPECT_FALSE(special_slices(W({0, 1, 0, 1})));
    EXPECT_FALSE(special_slices(W({0, 1, 0, 0, 0, 1, 0})));
    EXPECT_FALSE(special_slices(W({0, 1, 2, 0, 0, 1, 0})));
    auto t = special_slices(W({1, 0, 0, 1, 0, 0, 2, 0, 2, 0, 0, 1, 0}));
    ASSERT_TRUE(t);
    EXPECT_EQ(t->offset, 2u);
    EXPECT_EQ(t->slice_weights, W({-1, -4, -2}));
    EXPECT_THROW(extremal_family(W({1, 1, 1})), std::invalid_argument);
}

TEST(SpecialSlices, KnownExtremalPizzas)
{
    auto fifteen = W({0, 1, 0, 1, 0, 0, 1, 0, 2, 0, 0, 2, 0, 2, 0});
    EXPECT_EQ(extremal_family(fifteen), ExtremalFamily::a);
    auto zero_one = W({0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0});
    EXPECT_EQ(extremal_family(zero_one), ExtremalFamily::a);

    auto b1 = concat_seqs({special_slice(W({1, 1, 1})), special_slice(W({1, 1})), special_slice(W({2, 2})),
                           special_slice(W({4, 4})), special_slice(W({5, 5}))});
    EXPECT_EQ(extremal_family(b1), ExtremalFamily::b1);
    EXPECT_EQ(four_ninths_margin(b1), Weight(0));

    auto b2 = concat_seqs({special_slice(W({1, 1, 1})), special_slice(W({1, 1})), special_slice(W({2, 2})),
                           special_slice(W({5, 5})), special_slice(W({4, 4}))});
    EXPECT_EQ(extremal_family(b2), ExtremalFamily::b2);
    EXPECT_EQ(four_ninths_margin(b2), Weight(0));

    std::vector<Weight> reversed(b1.rbegin(), b1.rend());
    EXPECT_EQ(extremal_family(reversed), ExtremalFamily::b1);
}

TEST(SpecialSlices, PerturbedFamilyAIsNotExtremal)
{
    auto g = concat_seqs({special_slice(W({2, 2})), special_slice(W({1, 4, 1})), special_slice(W({4, 4}))});
    EXPECT_FALSE(is_extremal_special_pizza(g));
    EXPECT_GT(four_ninths_margin(g), Weight(0));

    auto h = concat_seqs({special_slice(W({1, 3})), special_slice(W({1, 1, 1})), special_slice(W({2, 2}))});
    EXPECT_FALSE(is_extremal_special_pizza(h));
    EXPECT_GT(four_ninths_margin(h), Weight(0));
}

TEST(SpecialSlices, ClassificationAgreesWithMarginOnGeneratedFamilies)
{
    gen::Rng rng(18);
    auto random_split = [&](int total) {
        std::vector<Weight> p;
        while (total > 0) {
            int x = gen::uniform(rng, 1, total);
            p.push_back(Weight(x));
            total -= x;
        }
        return p;
    };
    int checked = 0;
    for (int it = 0; it < 400; ++it) {
        std::vector<int> sums = it % 2 ? std::vector<int>{3, 2, 4, 8, 10} : std::vector<int>{2, 3, 4};
        if (it % 4 == 3) std::swap(sums[3], sums[4]);
        std::vector<Weight> g;
        for (int s : sums) {
            auto sl = special_slice(random_split(s));
            g.insert(g.end(), sl.begin(), sl.end());
        }
        if (g.size() > 41) continue;
        bool extremal = is_extremal_special_pizza(g);
        Weight margin = four_ninths_margin(g);
        EXPECT_GE(margin, Weight(0));
        EXPECT_EQ(extremal, margin.sign() == 0) << join_weights(g);
        ++checked;
    }
    EXPECT_GT(checked, 200);
}

TEST(CycleEquivalence, Examples)
{
    auto c = W({0, 1, 0, 1, 1, 0, 1, 0});
    EXPECT_TRUE(cycles_equivalent(c, c));
    EXPECT_TRUE(cycles_equivalent(W({3, 1, 4, 1, 5}), W({4, 1, 5, 3, 1})));
    EXPECT_FALSE(cycles_equivalent(W({1, 2, 3}), W({1, 2})));
    EXPECT_FALSE(equivalent_via_dp(cyc(c), menu(W({-1, 1}))));
    EXPECT_EQ(value_interval_dp(concat(cyc(c), menu(W({-1, 1})))), Weight(2));
    EXPECT_EQ(solve_cycle(c).value, Weight(2));
}

TEST(CycleEquivalence, MatchesSelfPairingAcrossRotationsAndReversal)
{
    gen::Rng rng(19);
    for (int it = 0; it < 60; ++it) {
        auto a = gen::random_weights(rng, std::size_t(gen::uniform(rng, 1, 7)), -2, 3);
        std::vector<Weight> rev(a.rbegin(), a.rend());
        EXPECT_TRUE(cycles_equivalent(a, rev));
        auto b = gen::random_weights(rng, a.size(), -2, 3);
        bool eq = cycles_equivalent(a, b);
        EXPECT_EQ(eq, cycles_equivalent(b, a));
        if (eq) {
            EXPECT_EQ(solve_cycle(a).value, solve_cycle(b).value);
        }
    }
}

TEST(CycleProperties, PlateauRestrictionIsLossless)
{
    gen::Rng rng(20);
    for (int it = 0; it < 500; ++it) {
        std::size_t n = std::size_t(gen::uniform(rng, 1, 17));
        auto a = it % 3 ? gen::random_weights(rng, n, -3, 4) : gen::random_fractions(rng, n, -2, 3);
        auto fast = solve_cycle(a), full = solve_cycle(a, true);
        EXPECT_EQ(fast.value, full.value) << join_weights(a);
        auto info = plateau_points(a, true);
        for (auto& p : info.plateaus)
            for (std::size_t t = 1; t < p.length; ++t)
                EXPECT_EQ(cycle_move_outcome(a, (p.start + t) % n), cycle_move_outcome(a, p.start));
        auto pfast = solve_unbroached_path(a), pfull = solve_unbroached_path(a, true);
        EXPECT_EQ(pfast.value, pfull.value) << join_weights(a);
    }
}

TEST(CycleProperties, AgreesWithOracles)
{
    gen::Rng rng(21);
    for (int it = 0; it < 300; ++it) {
        std::size_t n = std::size_t(gen::uniform(rng, 1, 14));
        auto a = it % 2 ? gen::random_weights(rng, n, -3, 5) : gen::random_fractions(rng, n, -2, 3);
        Weight c = solve_cycle(a).value, p = solve_unbroached_path(a).value;
        EXPECT_EQ(c, value_interval_dp(cyc(a))) << join_weights(a);
        EXPECT_EQ(p, value_interval_dp(path(a))) << join_weights(a);
        if (n <= 12) {
            EXPECT_EQ(c, value_exhaustive(cyc(a))) << join_weights(a);
            EXPECT_EQ(p, value_exhaustive(path(a))) << join_weights(a);
        }
    }
}

TEST(CycleProperties, PathVersusCycleAndRotationIdentity)
{
    gen::Rng rng(22);
    for (int it = 0; it < 500; ++it) {
        std::size_t n = std::size_t(gen::uniform(rng, 1, 12));
        auto a = gen::random_weights(rng, n, -3, 5);
        Weight c = solve_cycle(a).value, p = solve_unbroached_path(a).value;
        if (n % 2) EXPECT_GE(p, c) << join_weights(a);
        else EXPECT_LE(p, c) << join_weights(a);
        EXPECT_EQ(cycle_value_via_rotations(a).combined, c) << join_weights(a);
    }
}

TEST(CycleProperties, ParityRuleForNOneZeroCycles)
{
    for (int N = 0; N <= 3; ++N)
        for (int k = N + 1; k <= 6; ++k)
            EXPECT_EQ(solve_cycle(n_one_zero_cycle(N, k)).value, Weight((N + k) % 2)) << N << "," << k;
    EXPECT_EQ(solve_cycle(n_one_zero_cycle(3, 4)).value, Weight(1));
    EXPECT_EQ(solve_cycle(n_one_zero_cycle(3, 5)).value, Weight(0));
}

TEST(CycleProperties, LargeCycleIsFast)
{
    gen::Rng rng(23);
    auto a = gen::random_weights(rng, 2000, 0, 9);
    auto start = std::chrono::steady_clock::now();
    auto s = solve_cycle(a);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(secs, 2.0);
    EXPECT_FALSE(s.optimal_vertices.empty());
}
