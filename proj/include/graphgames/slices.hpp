#pragma once

#include "rational.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphgames {

enum class Flavor { tes, stack };

struct Segment {
    std::size_t begin = 0, end = 0; // [begin, end) over the input
    std::size_t size() const { return end - begin; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

template <class T>
struct BasicDecomposition {
    Flavor flavor = Flavor::tes;
    std::vector<Segment> segments;
    std::vector<T> weights;
    std::optional<Segment> remainder; // stack flavor only
    T remainder_weight{};             // x; zero when the remainder is missing
};

using SliceDecomposition = BasicDecomposition<Weight>;

// Σ_{i=1}^{2k} (-1)^{i-1} a_i <= 0 for every k.
template <class T>
bool asc_holds(std::span<const T> a)
{
    T s{};
    for (std::size_t i = 0; i + 1 < a.size(); i += 2) {
        s += a[i];
        s -= a[i + 1];
        if (s > T{}) return false;
    }
    return true;
}

inline bool asc_holds(const std::vector<Weight>& a) { return asc_holds<Weight>(std::span<const Weight>(a)); }

template <class T>
T alternating_sum(std::span<const T> a)
{
    T s{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i % 2 == 0) s += a[i];
        else s -= a[i];
    }
    return s;
}

template <class T>
bool asc_reversed(std::span<const T> a)
{
    T s{};
    for (std::size_t i = 0; i + 1 < a.size(); i += 2) {
        s += a[a.size() - 1 - i];
        s -= a[a.size() - 2 - i];
        if (s > T{}) return false;
    }
    return true;
}

struct Classification {
    enum Kind { ev_sequence, slice, neither } kind = neither;
    Weight weight;
};

template <class T>
bool is_slice(std::span<const T> a)
{
    return a.size() % 2 == 1 && asc_holds(a) && asc_reversed(a);
}

template <class T>
bool is_ev_sequence(std::span<const T> a)
{
    return a.size() % 2 == 0 && asc_holds(a);
}

inline Classification classify(std::span<const Weight> a)
{
    if (is_ev_sequence(a)) return {Classification::ev_sequence, -alternating_sum(a)};
    if (is_slice(a)) return {Classification::slice, alternating_sum(a)};
    return {Classification::neither, Weight(0)};
}

inline Classification classify(const std::vector<Weight>& a) { return classify(std::span<const Weight>(a)); }

namespace detail {

// Part A of the partition algorithms, run on the window [lo, hi) read forwards
// (at(i) = a[lo+i]) or backwards (at(i) = a[hi-1-i]). Appends slice lengths and
// weights, returns how many elements were consumed.
template <class T, class At>
std::size_t split_slices(At at, std::size_t len, std::vector<std::size_t>& lengths, std::vector<T>& weights)
{
    std::size_t off = 0;
    while (true) {
        T sum{};
        T best{};
        std::size_t best_j = 0;
        bool split = false;
        for (std::size_t i = 0; off + i + 1 < len; i += 2) {
            sum += at(off + i);
            if (best_j == 0 || sum <= best) {
                best = sum;
                best_j = i + 1;
            }
            sum -= at(off + i + 1);
            if (sum > T{}) {
                lengths.push_back(best_j);
                weights.push_back(best);
                off += best_j;
                split = true;
                break;
            }
        }
        if (!split) return off;
    }
}

// Largest odd j <= limit minimising the prefix alternating sum of window starting at lo.
template <class T>
std::pair<std::size_t, T> argmin_odd_prefix(std::span<const T> a, std::size_t lo, std::size_t limit)
{
    T sum{};
    T best{};
    std::size_t best_j = 0;
    for (std::size_t j = 1; j <= limit; j += 2) {
        sum += a[lo + j - 1];
        if (best_j == 0 || sum <= best) {
            best = sum;
            best_j = j;
        }
        if (j + 1 <= limit) sum -= a[lo + j];
    }
    return {best_j, best};
}

} // namespace detail

// Algorithm I: partition into slices with U-shaped weights.
template <class T>
BasicDecomposition<T> partition_tes(std::span<const T> a)
{
    BasicDecomposition<T> d;
    d.flavor = Flavor::tes;
    std::size_t n = a.size();
    if (n == 0) return d;

    std::vector<std::size_t> left_len, right_len;
    std::vector<T> left_w, right_w;
    std::size_t lo = detail::split_slices<T>([&](std::size_t i) -> const T& { return a[i]; }, n, left_len, left_w);
    std::size_t hi = n - detail::split_slices<T>([&](std::size_t i) -> const T& { return a[n - 1 - i]; }, n - lo,
                                                 right_len, right_w);

    std::size_t pos = 0;
    for (std::size_t i = 0; i < left_len.size(); ++i) {
        d.segments.push_back({pos, pos + left_len[i]});
        d.weights.push_back(left_w[i]);
        pos += left_len[i];
    }
    std::size_t q = hi - lo;
    if (q % 2 == 1) {
        d.segments.push_back({lo, hi});
        d.weights.push_back(alternating_sum(a.subspan(lo, q)));
    } else {
        auto [j, w] = detail::argmin_odd_prefix(a, lo, q - 1);
        d.segments.push_back({lo, lo + j});
        d.weights.push_back(w);
        d.segments.push_back({lo + j, hi});
        d.weights.push_back(alternating_sum(a.subspan(lo + j, hi - lo - j)));
    }
    std::vector<Segment> tail;
    std::size_t end = n;
    for (std::size_t i = 0; i < right_len.size(); ++i) {
        tail.push_back({end - right_len[i], end});
        end -= right_len[i];
    }
    for (std::size_t i = tail.size(); i-- > 0;) {
        d.segments.push_back(tail[i]);
        d.weights.push_back(right_w[i]);
    }
    return d;
}

// Algorithm II: slices with strictly decreasing weights followed by an optional ev-sequence.
template <class T>
BasicDecomposition<T> partition_stack(std::span<const T> a)
{
    BasicDecomposition<T> d;
    d.flavor = Flavor::stack;
    std::size_t n = a.size();
    if (n == 0) return d;

    std::vector<std::size_t> len;
    std::vector<T> w;
    std::size_t lo = detail::split_slices<T>([&](std::size_t i) -> const T& { return a[i]; }, n, len, w);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < len.size(); ++i) {
        d.segments.push_back({pos, pos + len[i]});
        d.weights.push_back(w[i]);
        pos += len[i];
    }
    std::size_t q = n - lo;
    std::size_t rest = lo;
    if (q % 2 == 1) {
        auto [j, s] = detail::argmin_odd_prefix(a, lo, q);
        d.segments.push_back({lo, lo + j});
        d.weights.push_back(s);
        rest = lo + j;
    }
    if (rest < n) {
        d.remainder = Segment{rest, n};
        d.remainder_weight = -alternating_sum(a.subspan(rest, n - rest));
    }
    return d;
}

inline SliceDecomposition partition_tes(const std::vector<Weight>& a) { return partition_tes<Weight>(std::span<const Weight>(a)); }
inline SliceDecomposition partition_stack(const std::vector<Weight>& a) { return partition_stack<Weight>(std::span<const Weight>(a)); }

template <class T>
bool is_u_shaped(const std::vector<T>& s)
{
    std::size_t m = s.size();
    for (std::size_t j = 1; j + 1 < m; ++j)
        if (!(s[j] < s[j + 1] || s[j] < s[j - 1])) return false;
    return true;
}

template <class T>
bool is_weakly_u_shaped(const std::vector<T>& s)
{
    std::size_t m = s.size();
    if (m <= 1) return true;
    std::size_t p = 1;
    while (p < m && s[p] <= s[p - 1]) ++p;
    for (std::size_t i = p; i + 1 < m; ++i)
        if (s[i + 1] < s[i]) return false;
    return true;
}

// Full O(n) re-check of a decomposition; returns a description of the first problem found.
template <class T>
std::optional<std::string> check_decomposition(std::span<const T> a, const BasicDecomposition<T>& d)
{
    if (d.segments.size() != d.weights.size()) return "segment/weight count mismatch";
    std::size_t pos = 0;
    for (std::size_t i = 0; i < d.segments.size(); ++i) {
        auto sg = d.segments[i];
        if (sg.begin != pos || sg.end <= sg.begin || sg.end > a.size()) return "segments do not tile the input";
        auto part = a.subspan(sg.begin, sg.size());
        if (!is_slice(part)) return "segment " + std::to_string(i) + " is not a slice";
        if (!(alternating_sum(part) == d.weights[i])) return "segment " + std::to_string(i) + " has the wrong weight";
        pos = sg.end;
    }
    if (d.flavor == Flavor::tes) {
        if (d.remainder) return "tes decomposition carries a remainder";
        if (!is_u_shaped(d.weights)) return "weights are not U-shaped";
    } else {
        for (std::size_t i = 1; i < d.weights.size(); ++i)
            if (!(d.weights[i] < d.weights[i - 1])) return "stack weights are not strictly decreasing";
        if (d.remainder) {
            if (d.remainder->begin != pos) return "remainder does not follow the slices";
            auto part = a.subspan(d.remainder->begin, d.remainder->size());
            if (!is_ev_sequence(part)) return "remainder is not an ev-sequence";
            if (!(-alternating_sum(part) == d.remainder_weight)) return "remainder has the wrong weight";
            pos = d.remainder->end;
        } else if (!(d.remainder_weight == T{})) {
            return "missing remainder with nonzero weight";
        }
    }
    if (pos != a.size()) return "decomposition does not cover the input";
    return std::nullopt;
}

inline std::optional<std::string> check_decomposition(const std::vector<Weight>& a, const SliceDecomposition& d)
{
    return check_decomposition<Weight>(std::span<const Weight>(a), d);
}

// Refines `outer` (a decomposition of inner.weights) back onto the original sequence.
inline SliceDecomposition compose_weights(const SliceDecomposition& outer, const SliceDecomposition& inner)
{
    std::size_t m = inner.weights.size();
    std::size_t covered = outer.segments.empty() ? 0 : outer.segments.back().end;
    if (outer.remainder) covered = outer.remainder->end;
    if (covered != m) throw std::invalid_argument("outer decomposition does not cover the inner weight sequence");
    auto span_of = [&](Segment s) { return Segment{inner.segments[s.begin].begin, inner.segments[s.end - 1].end}; };
    SliceDecomposition d;
    d.flavor = outer.flavor;
    for (std::size_t i = 0; i < outer.segments.size(); ++i) {
        d.segments.push_back(span_of(outer.segments[i]));
        d.weights.push_back(outer.weights[i]);
    }
    std::optional<Segment> rem;
    Weight x;
    if (outer.remainder) {
        rem = span_of(*outer.remainder);
        x += outer.remainder_weight;
    }
    if (inner.remainder) {
        if (rem) rem->end = inner.remainder->end;
        else rem = inner.remainder;
        x += inner.remainder_weight;
    }
    if (rem) {
        if (d.flavor == Flavor::tes) throw std::invalid_argument("tes composition cannot carry an ev remainder");
        d.remainder = rem;
        d.remainder_weight = x;
    }
    return d;
}

// Merges a weight-0 ev remainder into the preceding slice when the merged segment is still a slice.
inline SliceDecomposition absorb_zero_remainder(const std::vector<Weight>& a, SliceDecomposition d)
{
    if (d.remainder && d.remainder_weight.sign() == 0 && !d.segments.empty()) {
        Segment merged{d.segments.back().begin, d.remainder->end};
        if (is_slice(std::span<const Weight>(a).subspan(merged.begin, merged.size()))) {
            d.segments.back() = merged;
            d.remainder.reset();
        }
    }
    return d;
}

} // namespace graphgames
