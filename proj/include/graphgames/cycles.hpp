#pragma once

#include "oracle.hpp"
#include "reduction.hpp"
#include "shorthand.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace graphgames {

// A maximal run of equal weights; on a cycle the run may wrap past the end.
struct Plateau {
    std::size_t start = 0;
    std::size_t length = 0;
    Weight weight;

    bool contains(std::size_t i, std::size_t n) const { return (i + n - start) % n < length; }
};

struct PlateauInfo {
    bool cyclic = false;
    std::vector<Plateau> plateaus;
    std::vector<bool> is_plateau_point;
    std::vector<std::vector<std::size_t>> neighboring; // plateau indices per vertex
    std::size_t left_flank = 0;  // path only: non-decreasing prefix before the first plateau
    std::size_t right_flank = 0; // path only: non-increasing suffix after the last plateau
};

namespace detail {

struct Run {
    std::size_t start, length;
};

inline std::vector<Run> equal_runs(const std::vector<Weight>& a, bool cyclic)
{
    std::size_t n = a.size();
    std::vector<Run> runs;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && a[j] == a[i]) ++j;
        runs.push_back({i, j - i});
        i = j;
    }
    if (cyclic && runs.size() > 1 && a.front() == a.back()) {
        runs.back().length += runs.front().length;
        runs.erase(runs.begin());
    }
    return runs;
}

} // namespace detail

inline PlateauInfo plateau_points(const std::vector<Weight>& a, bool cyclic)
{
    if (a.empty()) throw std::invalid_argument("plateau_points needs at least one weight");
    std::size_t n = a.size();
    PlateauInfo info;
    info.cyclic = cyclic;
    info.is_plateau_point.assign(n, false);
    info.neighboring.assign(n, {});

    auto runs = detail::equal_runs(a, cyclic);
    std::size_t r = runs.size();
    std::vector<long> run_plateau(r, -1);
    for (std::size_t j = 0; j < r; ++j) {
        const Weight& w = a[runs[j].start];
        bool left_ok, right_ok;
        if (cyclic) {
            left_ok = r == 1 || a[runs[(j + r - 1) % r].start] < w;
            right_ok = r == 1 || a[runs[(j + 1) % r].start] < w;
        } else {
            left_ok = j == 0 || a[runs[j - 1].start] < w;
            right_ok = j + 1 == r || a[runs[j + 1].start] < w;
        }
        if (left_ok && right_ok) {
            run_plateau[j] = long(info.plateaus.size());
            info.plateaus.push_back({runs[j].start, runs[j].length, w});
        }
    }

    for (std::size_t j = 0; j < r; ++j) {
        std::vector<std::size_t> refs;
        if (run_plateau[j] >= 0) {
            refs.push_back(std::size_t(run_plateau[j]));
        } else if (cyclic) {
            std::size_t k = (j + r - 1) % r;
            while (run_plateau[k] < 0) k = (k + r - 1) % r;
            refs.push_back(std::size_t(run_plateau[k]));
            k = (j + 1) % r;
            while (run_plateau[k] < 0) k = (k + 1) % r;
            if (std::size_t(run_plateau[k]) != refs.front()) refs.push_back(std::size_t(run_plateau[k]));
        } else {
            for (std::size_t k = j; k-- > 0;)
                if (run_plateau[k] >= 0) {
                    refs.push_back(std::size_t(run_plateau[k]));
                    break;
                }
            for (std::size_t k = j + 1; k < r; ++k)
                if (run_plateau[k] >= 0) {
                    refs.push_back(std::size_t(run_plateau[k]));
                    break;
                }
        }
        std::sort(refs.begin(), refs.end());
        for (std::size_t t = 0; t < runs[j].length; ++t) {
            std::size_t v = (runs[j].start + t) % n;
            info.is_plateau_point[v] = run_plateau[j] >= 0;
            info.neighboring[v] = refs;
        }
    }

    if (!cyclic) {
        info.left_flank = info.plateaus.front().start;
        auto& last = info.plateaus.back();
        info.right_flank = n - (last.start + last.length);
    }
    return info;
}

struct LineSolution {
    Weight value;
    std::vector<std::size_t> optimal_vertices; // 0-based positions
    std::vector<std::pair<std::size_t, Weight>> outcomes; // evaluated candidates
};

// The tes left after taking position i from the cycle, read clockwise from i+1.
inline std::vector<Weight> cycle_rest(const std::vector<Weight>& a, std::size_t i)
{
    std::vector<Weight> rest;
    rest.reserve(a.size() - 1);
    for (std::size_t t = 1; t < a.size(); ++t) rest.push_back(a[(i + t) % a.size()]);
    return rest;
}

inline Weight cycle_move_outcome(const std::vector<Weight>& a, std::size_t i)
{
    if (a.size() == 1) return a[0];
    return a[i] - value_of_reduced(reduce_tes(cycle_rest(a, i)));
}

inline Weight path_move_outcome(const std::vector<Weight>& a, std::size_t i)
{
    std::vector<Weight> left(a.rend() - std::ptrdiff_t(i), a.rend());
    std::vector<Weight> right(a.begin() + std::ptrdiff_t(i) + 1, a.end());
    return a[i] - value_of_reduced(add(reduce_part({PartKind::st, left}), reduce_part({PartKind::st, right})));
}

namespace detail {

template <class F>
std::vector<Weight> evaluate_all(const std::vector<std::size_t>& idx, F f)
{
    std::vector<Weight> out(idx.size());
    std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), 8);
    if (idx.size() < 64 || workers == 1) {
        for (std::size_t k = 0; k < idx.size(); ++k) out[k] = f(idx[k]);
        return out;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t k = w; k < idx.size(); k += workers) out[k] = f(idx[k]);
        });
    for (auto& t : pool) t.join();
    return out;
}

template <class F>
LineSolution solve_line(const std::vector<Weight>& a, bool cyclic, bool audit, F outcome)
{
    if (a.empty()) throw std::invalid_argument("empty sequence");
    LineSolution sol;
    PlateauInfo info;
    std::vector<std::size_t> candidates;
    if (audit) {
        for (std::size_t i = 0; i < a.size(); ++i) candidates.push_back(i);
    } else {
        info = plateau_points(a, cyclic);
        for (auto& p : info.plateaus) candidates.push_back(p.start);
    }
    auto values = evaluate_all(candidates, outcome);
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] > values[best]) best = k;
    sol.value = values[best];
    for (std::size_t k = 0; k < candidates.size(); ++k) sol.outcomes.emplace_back(candidates[k], values[k]);
    if (audit) {
        for (std::size_t k = 0; k < candidates.size(); ++k)
            if (values[k] == sol.value) sol.optimal_vertices.push_back(candidates[k]);
    } else {
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (values[k] != sol.value) continue;
            auto& p = info.plateaus[k];
            for (std::size_t t = 0; t < p.length; ++t) sol.optimal_vertices.push_back((p.start + t) % a.size());
        }
    }
    std::sort(sol.optimal_vertices.begin(), sol.optimal_vertices.end());
    std::sort(sol.outcomes.begin(), sol.outcomes.end(), [](auto& x, auto& y) { return x.first < y.first; });
    return sol;
}

} // namespace detail

// Value of the unbroached cycle; only one vertex per plateau is tried unless audit is set.
inline LineSolution solve_cycle(const std::vector<Weight>& a, bool audit = false)
{
    return detail::solve_line(a, true, audit, [&](std::size_t i) { return cycle_move_outcome(a, i); });
}

inline LineSolution solve_unbroached_path(const std::vector<Weight>& a, bool audit = false)
{
    return detail::solve_line(a, false, audit, [&](std::size_t i) { return path_move_outcome(a, i); });
}

struct RotationValues {
    std::vector<Weight> path_values; // rotation r starts at position r
    Weight combined;
};

inline RotationValues cycle_value_via_rotations(const std::vector<Weight>& a)
{
    if (a.empty()) throw std::invalid_argument("empty sequence");
    RotationValues out;
    std::size_t n = a.size();
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<Weight> b;
        b.reserve(n);
        for (std::size_t t = 0; t < n; ++t) b.push_back(a[(r + t) % n]);
        out.path_values.push_back(solve_unbroached_path(b).value);
    }
    if (n % 2 == 1) out.combined = *std::min_element(out.path_values.begin(), out.path_values.end());
    else out.combined = *std::max_element(out.path_values.begin(), out.path_values.end());
    return out;
}

struct EvenPlateauReduction {
    std::vector<Weight> remaining;
    std::size_t deleted = 0;
    bool empty() const { return remaining.empty(); }
};

inline EvenPlateauReduction delete_even_plateaus(std::vector<Weight> a)
{
    EvenPlateauReduction out;
    while (!a.empty()) {
        auto info = plateau_points(a, true);
        auto it = std::find_if(info.plateaus.begin(), info.plateaus.end(), [](auto& p) { return p.length % 2 == 0; });
        if (it == info.plateaus.end()) break;
        std::vector<Weight> next;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!it->contains(i, a.size())) next.push_back(a[i]);
        out.deleted += it->length;
        a = std::move(next);
    }
    out.remaining = std::move(a);
    return out;
}

inline Weight abs_total(const std::vector<Weight>& a)
{
    Weight t;
    for (auto& w : a) t += abs(w);
    return t;
}

inline Weight four_ninths_margin(const std::vector<Weight>& a)
{
    for (auto& w : a)
        if (w.sign() < 0) throw std::invalid_argument("pizza weights must be nonnegative");
    return solve_cycle(a).value + abs_total(a) / Weight(9);
}

inline Weight mu_bound(const Weight& mu)
{
    if (mu.sign() < 0 || mu > Weight(1)) throw std::invalid_argument("mu must lie in [0,1]");
    if (mu <= Weight(1, 3)) return Weight(1, 9) + Weight(2, 3) * mu;
    return mu;
}

inline std::vector<Weight> gen_gk(int k)
{
    if (k < 2) throw std::invalid_argument("g_k needs k >= 2");
    if (k <= 3) return {0, 1, -(k - 2), 1, 0, 0, k - 1, 0, 2, 0, 0, 2, -(k - 2), 2, 0};
    return {0, 1, -(k - 2), 1, 0, 0, 2, -(k - 3), 2, 0, 0, 2, -(k - 2), 2, 0};
}

// (0,p_1,0,...,p_k,0)
inline std::vector<Weight> special_slice(const std::vector<Weight>& p)
{
    std::vector<Weight> s{Weight(0)};
    for (auto& x : p) {
        s.push_back(x);
        s.push_back(Weight(0));
    }
    return s;
}

// Odd cycle with weights +-1 whose value is -2*floor((n-3)/18)-1.
inline std::vector<Weight> gen_pm1_cycle(int n)
{
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("n must be odd and at least 3");
    int k = (n - 3) / 18;
    if (k == 0) return std::vector<Weight>(std::size_t(n), Weight(-1));
    std::vector<Weight> g;
    for (int ones : {2 * k, 3 * k, 4 * k}) {
        auto s = special_slice(std::vector<Weight>(std::size_t(ones), Weight(1)));
        g.insert(g.end(), s.begin(), s.end());
    }
    g.resize(std::size_t(n), Weight(0));
    for (auto& w : g) w = Weight(2) * w - Weight(1);
    return g;
}

// Each x_i becomes (0,x_i/n,0,...,x_i/n,0) with n copies of x_i/n.
inline std::vector<Weight> gen_pi_pizza(const std::vector<Weight>& xs, int n)
{
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (xs.empty()) throw std::invalid_argument("need at least one piece");
    std::vector<Weight> g;
    for (auto& x : xs) {
        if (x.sign() <= 0) throw std::invalid_argument("pieces must be positive");
        auto s = special_slice(std::vector<Weight>(std::size_t(n), x / Weight(n)));
        g.insert(g.end(), s.begin(), s.end());
    }
    return g;
}

struct SpecialSlicePizza {
    std::size_t offset = 0; // position of the first slice's leading 0
    std::vector<std::vector<Weight>> slices;
    std::vector<Weight> slice_weights;
};

inline bool is_special_slice(const std::vector<Weight>& s)
{
    if (s.size() < 3 || s.size() % 2 == 0) return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i % 2 == 0 && s[i].sign() != 0) return false;
        if (i % 2 == 1 && s[i].sign() <= 0) return false;
    }
    return true;
}

inline std::optional<SpecialSlicePizza> special_slices(const std::vector<Weight>& a)
{
    std::size_t n = a.size();
    std::vector<std::size_t> cuts; // a slice starts at each cut
    for (std::size_t i = 0; i < n; ++i)
        if (a[i].sign() == 0 && a[(i + n - 1) % n].sign() == 0) cuts.push_back(i);
    if (cuts.empty() || n < 3) return std::nullopt;
    SpecialSlicePizza p;
    p.offset = cuts.front();
    for (std::size_t c = 0; c < cuts.size(); ++c) {
        std::size_t from = cuts[c], to = c + 1 < cuts.size() ? cuts[c + 1] : cuts.front() + n;
        std::vector<Weight> s;
        for (std::size_t i = from; i < to; ++i) s.push_back(a[i % n]);
        if (!is_special_slice(s)) return std::nullopt;
        Weight x;
        for (std::size_t i = 1; i < s.size(); i += 2) x += s[i];
        p.slices.push_back(std::move(s));
        p.slice_weights.push_back(-x);
    }
    return p;
}

inline Weight delta_statistic(const std::vector<Weight>& s)
{
    if (!is_special_slice(s)) throw std::invalid_argument("not a special slice");
    std::vector<Weight> p;
    for (std::size_t i = 1; i < s.size(); i += 2) p.push_back(s[i]);
    Weight total;
    for (auto& x : p) total += x;
    Weight prefix;
    std::size_t i0 = 0;
    for (; i0 < p.size(); ++i0) {
        if (Weight(2) * (prefix + p[i0]) >= total) break;
        prefix += p[i0];
    }
    Weight after = total - prefix - p[i0];
    return p[i0] - abs(prefix - after);
}

enum class ExtremalFamily { none, a, b1, b2 };

inline ExtremalFamily extremal_family(const std::vector<Weight>& a)
{
    auto tiling = special_slices(a);
    if (!tiling) throw std::invalid_argument("pizza is not tiled by special slices");
    std::size_t m = tiling->slices.size();
    std::vector<Weight> x, d;
    Weight total;
    for (std::size_t i = 0; i < m; ++i) {
        x.push_back(-tiling->slice_weights[i]);
        d.push_back(delta_statistic(tiling->slices[i]));
        total += x.back();
    }
    if (m == 3) {
        Weight s = Weight(9) / total;
        for (std::size_t i = 0; i < 3; ++i) {
            Weight y = x[i] * s, dy = d[i] * s;
            bool ok = y == Weight(3) ? dy <= Weight(1) : (y == Weight(2) || y == Weight(4)) && dy.sign() == 0;
            if (!ok) return ExtremalFamily::none;
        }
        std::vector<Weight> ys{x[0] * s, x[1] * s, x[2] * s};
        std::sort(ys.begin(), ys.end());
        return ys == std::vector<Weight>{2, 3, 4} ? ExtremalFamily::a : ExtremalFamily::none;
    }
    if (m != 5) return ExtremalFamily::none;
    Weight s = Weight(27) / total;
    for (int dir : {1, -1})
        for (std::size_t r = 0; r < 5; ++r) {
            std::vector<std::size_t> at(5);
            for (std::size_t j = 0; j < 5; ++j) at[j] = (r + 5 + std::size_t(dir) * j) % 5;
            auto y = [&](std::size_t j) { return x[at[j]] * s; };
            auto dl = [&](std::size_t j) { return d[at[j]] * s; };
            if (y(0) != Weight(3)) continue;
            Weight t = y(1) / Weight(2);
            if (t.sign() <= 0 || t > Weight(1) || y(2) != Weight(3) + t) continue;
            ExtremalFamily fam;
            std::size_t di, ei;
            if (y(3) == Weight(9) - t && y(4) == Weight(12) - Weight(2) * t) {
                fam = ExtremalFamily::b1;
                di = 3, ei = 4;
            } else if (y(3) == Weight(12) - Weight(2) * t && y(4) == Weight(9) - t) {
                fam = ExtremalFamily::b2;
                di = 4, ei = 3;
            } else {
                continue;
            }
            if (dl(1).sign() == 0 && dl(ei).sign() == 0 && dl(0) <= Weight(3) - Weight(2) * t &&
                dl(2) <= Weight(3) - Weight(3) * t && dl(di) <= Weight(3) - t)
                return fam;
        }
    return ExtremalFamily::none;
}

inline bool is_extremal_special_pizza(const std::vector<Weight>& a) { return extremal_family(a) != ExtremalFamily::none; }

// Equivalence of arbitrary invertible boards of equal parity by the interval DP.
inline bool equivalent_via_dp(const Board& g1, const Board& g2, const Caps& caps = default_caps())
{
    if (g1.size() % 2 != g2.size() % 2) return false;
    return value_interval_dp(concat(g1, g2), Rules::normal, caps).sign() == 0;
}

inline bool cycles_equivalent(const std::vector<Weight>& c1, const std::vector<Weight>& c2, const Caps& caps = default_caps())
{
    return equivalent_via_dp(cyc(c1), cyc(c2), caps);
}

} // namespace graphgames
