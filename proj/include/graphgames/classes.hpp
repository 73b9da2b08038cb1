#pragma once

#include "oracle.hpp"
#include "reduction.hpp"
#include "shorthand.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace graphgames {

// A class [a_1,...,a_n] of menu games: equal pairs cancel, parity survives.
struct G0Class {
    std::vector<Weight> weights; // strictly ascending
    bool odd = false;

    friend bool operator==(const G0Class&, const G0Class&) = default;
};

// [a_1,...,a_n] + ev(x)
struct ClassElement {
    G0Class cls;
    Weight ev_x;

    friend bool operator==(const ClassElement&, const ClassElement&) = default;
};

inline G0Class canonical_class(std::vector<Weight> weights)
{
    G0Class c;
    c.odd = weights.size() % 2 == 1;
    std::sort(weights.begin(), weights.end());
    for (auto& w : weights) {
        if (!c.weights.empty() && c.weights.back() == w) c.weights.pop_back();
        else c.weights.push_back(w);
    }
    return c;
}

inline ClassElement canonical_class(std::vector<Weight> weights, Weight ev_x)
{
    if (ev_x.sign() < 0) throw std::invalid_argument("ev weight must be nonnegative");
    return {canonical_class(std::move(weights)), std::move(ev_x)};
}

inline G0Class operator+(const G0Class& a, const G0Class& b)
{
    std::vector<Weight> all = a.weights;
    all.insert(all.end(), b.weights.begin(), b.weights.end());
    G0Class c = canonical_class(std::move(all));
    c.odd = a.odd != b.odd;
    return c;
}

inline ClassElement operator+(const ClassElement& a, const ClassElement& b) { return {a.cls + b.cls, a.ev_x + b.ev_x}; }

inline ClassElement class_of(const ReducedForm& r)
{
    G0Class c;
    c.weights.assign(r.menu.rbegin(), r.menu.rend());
    c.odd = r.odd;
    return {c, r.ev_x};
}

inline Board board_of(const ClassElement& c)
{
    Board m = menu(c.cls.weights);
    if (c.ev_x.sign() == 0) return m;
    return concat(m, st({Weight(0), c.ev_x}));
}

// XOR of the rays (-inf, p) over the points p.
struct ThetaSet {
    std::vector<Weight> points; // strictly ascending

    bool left_ray() const { return points.size() % 2 == 1; }

    bool contains(const Weight& t) const
    {
        auto above = points.end() - std::upper_bound(points.begin(), points.end(), t);
        return above % 2 == 1 && !std::binary_search(points.begin(), points.end(), t);
    }

    // Bounded pieces (lo, hi); the ray (-inf, points[0]) is reported by left_ray().
    std::vector<std::pair<Weight, Weight>> intervals() const
    {
        std::vector<std::pair<Weight, Weight>> out;
        for (std::size_t i = left_ray() ? 1 : 0; i + 1 < points.size(); i += 2) out.emplace_back(points[i], points[i + 1]);
        return out;
    }

    Weight measure() const
    {
        if (left_ray()) throw std::domain_error("set with a left ray has infinite measure");
        Weight m;
        for (auto& [lo, hi] : intervals()) m += hi - lo;
        return m;
    }

    friend bool operator==(const ThetaSet&, const ThetaSet&) = default;
};

inline ThetaSet theta(const G0Class& c) { return {c.weights}; }

inline ThetaSet symmetric_difference(const ThetaSet& a, const ThetaSet& b)
{
    std::vector<Weight> all = a.points;
    all.insert(all.end(), b.points.begin(), b.points.end());
    return {canonical_class(std::move(all)).weights};
}

// c + mu(A \ (-inf,c)) - mu((-inf,c) \ A) for a set with a left ray.
inline Weight odd_set_value(const ThetaSet& a, const Weight& c)
{
    if (!a.left_ray()) throw std::domain_error("odd_set_value needs a set with a left ray");
    const auto& p = a.points;
    std::size_t n = p.size();
    Weight v = c;
    for (std::size_t k = 0; k <= n; ++k) {
        bool inside = (n - k) % 2 == 1;
        const Weight* lo = k == 0 ? nullptr : &p[k - 1];
        const Weight* hi = k == n ? nullptr : &p[k];
        if (inside) {
            Weight from = lo && *lo > c ? *lo : c;
            if (*hi > from) v += *hi - from;
        } else {
            Weight to = hi && *hi < c ? *hi : c;
            if (to > *lo) v -= to - *lo;
        }
    }
    return v;
}

inline Weight class_value(const G0Class& c, const Weight& ev_x = Weight(0))
{
    auto t = theta(c);
    if (!c.odd) return t.measure() - ev_x;
    Weight below = t.points.front() - Weight(1);
    return odd_set_value(t, below) + ev_x;
}

inline Weight class_value(const ClassElement& e) { return class_value(e.cls, e.ev_x); }

// Empty result means the distance is infinite.
inline std::optional<Weight> class_distance(const ClassElement& a, const ClassElement& b)
{
    if (a.cls.odd != b.cls.odd) return std::nullopt;
    return symmetric_difference(theta(a.cls), theta(b.cls)).measure() + abs(a.ev_x - b.ev_x);
}

inline Weight c_of_g(const Board& b, const Caps& caps = default_caps())
{
    Weight y = -board_stats(b).abs_total - Weight(1);
    Weight v = value_oracle(concat(b, menu({y})), Rules::normal, caps);
    return b.size() % 2 == 0 ? v - y : v + y;
}

inline bool is_invertible(const Board& b, const Caps& caps = default_caps())
{
    Weight y = Weight(-2) * board_stats(b).abs_total - Weight(1);
    return value_oracle(concat({b, b, menu({y})}), Rules::normal, caps) == y;
}

struct NotInvertible : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline bool independent(const std::vector<Board>& boards, const Caps& caps = default_caps())
{
    std::size_t odd = 0;
    Weight sum;
    for (auto& b : boards) {
        if (!is_invertible(b, caps)) throw NotInvertible("independence is defined for invertible games only");
        odd += b.size() % 2;
        sum += value_oracle(b, Rules::normal, caps);
    }
    return odd <= 1 && value_oracle(concat(boards), Rules::normal, caps) == sum;
}

// [b1] <= [b2]
inline bool class_leq(const Board& b1, const Board& b2, const Caps& caps = default_caps())
{
    for (auto* b : {&b1, &b2})
        if (!is_invertible(*b, caps)) throw NotInvertible("order is defined for invertible games only");
    if (b2.size() % 2 == 0 && b1.size() % 2 == 1) return false;
    return value_oracle(concat(b2, b1), Rules::normal, caps) ==
           value_oracle(b2, Rules::normal, caps) - value_oracle(b1, Rules::normal, caps);
}

enum class Dominance { dominates, does_not, unknown };

inline const char* dominance_name(Dominance d)
{
    switch (d) {
    case Dominance::dominates: return "dominates";
    case Dominance::does_not: return "does_not";
    default: return "unknown";
    }
}

// Distance between two boards when it can be computed exactly; empty when it cannot.
struct ExactDistance {
    bool known = false;
    std::optional<Weight> value; // empty with known set means infinite
};

inline ExactDistance exact_distance(const Board& g1, const Board& g2, const Caps& caps = default_caps())
{
    if (g1.size() % 2 != g2.size() % 2) return {true, std::nullopt};
    auto r1 = reduce_board(g1), r2 = reduce_board(g2);
    if (r1 && r2) return {true, class_distance(class_of(*r1), class_of(*r2))};
    try {
        if (is_invertible(g1, caps) && is_invertible(g2, caps))
            return {true, value_oracle(concat(g1, g2), Rules::normal, caps)};
    } catch (const CapExceeded&) {
    }
    return {};
}

// Whether the v-move in b1 metrically dominates the w-move in b2.
inline Dominance metric_dominates(const Board& b1, int v, const Board& b2, int w, const Caps& caps = default_caps())
{
    if (!is_legal(b1, v)) throw IllegalMove(v, "vertex " + std::to_string(v) + " is not a legal move");
    if (!is_legal(b2, w)) throw IllegalMove(w, "vertex " + std::to_string(w) + " is not a legal move");
    auto d = exact_distance(apply_move(b1, v), apply_move(b2, w), caps);
    if (!d.known) return Dominance::unknown;
    if (!d.value) return Dominance::does_not;
    return *d.value <= b1.weight(v) - b2.weight(w) ? Dominance::dominates : Dominance::does_not;
}

// max |val(g1+h) - val(g2+h)| over the supplied h; a lower bound for the distance.
inline Weight sampled_distance_lower_bound(const Board& g1, const Board& g2, const std::vector<Board>& hs,
                                           const Caps& caps = default_caps())
{
    Weight best;
    for (auto& h : hs) {
        Weight d = abs(value_oracle(concat(g1, h), Rules::normal, caps) - value_oracle(concat(g2, h), Rules::normal, caps));
        best = std::max(best, d);
    }
    return best;
}

} // namespace graphgames
