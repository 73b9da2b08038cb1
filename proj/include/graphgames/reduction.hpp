#pragma once

#include "board.hpp"
#include "shorthand.hpp"
#include "slices.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphgames {

// <s_1,...,s_m> + ev(x) with equal menu pairs cancelled.
struct ReducedForm {
    std::vector<Weight> menu; // strictly decreasing after cancellation
    Weight ev_x;
    bool odd = false;

    friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
};

namespace detail {

inline void cancel_sorted_desc(std::vector<Weight>& v)
{
    std::vector<Weight> out;
    out.reserve(v.size());
    for (auto& w : v) {
        if (!out.empty() && out.back() == w) out.pop_back();
        else out.push_back(std::move(w));
    }
    v = std::move(out);
}

// Merge a weakly U-shaped sequence into descending order in linear time.
inline std::vector<Weight> descending_from_u(const std::vector<Weight>& s)
{
    if (!is_weakly_u_shaped(s)) {
        auto v = s;
        std::sort(v.begin(), v.end(), std::greater<>());
        return v;
    }
    std::size_t k = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] < s[k]) k = i;
    std::vector<Weight> out;
    out.reserve(s.size());
    std::size_t i = 0, j = s.size();
    while (i <= k && j > k + 1) {
        if (s[i] >= s[j - 1]) out.push_back(s[i++]);
        else out.push_back(s[--j]);
    }
    while (i <= k) out.push_back(s[i++]);
    while (j > k + 1) out.push_back(s[--j]);
    return out;
}

} // namespace detail

inline ReducedForm make_reduced(std::vector<Weight> weights, Weight x = Weight(0))
{
    if (x.sign() < 0) throw std::invalid_argument("ev weight must be nonnegative");
    ReducedForm r;
    r.odd = weights.size() % 2 == 1;
    std::sort(weights.begin(), weights.end(), std::greater<>());
    detail::cancel_sorted_desc(weights);
    r.menu = std::move(weights);
    r.ev_x = std::move(x);
    return r;
}

inline ReducedForm reduce_tes(const std::vector<Weight>& seq)
{
    auto d = partition_tes(seq);
    ReducedForm r;
    r.odd = d.weights.size() % 2 == 1;
    r.menu = detail::descending_from_u(d.weights);
    detail::cancel_sorted_desc(r.menu);
    return r;
}

inline ReducedForm reduce_stack(const std::vector<Weight>& seq)
{
    auto d = partition_stack(seq);
    ReducedForm r;
    r.odd = d.weights.size() % 2 == 1;
    r.menu = d.weights; // strictly decreasing already
    r.ev_x = d.remainder_weight;
    return r;
}

inline ReducedForm add(const ReducedForm& a, const ReducedForm& b)
{
    ReducedForm r;
    r.odd = a.odd != b.odd;
    r.ev_x = a.ev_x + b.ev_x;
    std::merge(a.menu.begin(), a.menu.end(), b.menu.begin(), b.menu.end(), std::back_inserter(r.menu), std::greater<>());
    detail::cancel_sorted_desc(r.menu);
    return r;
}

enum class PartKind { st, tes };

struct Part {
    PartKind kind;
    std::vector<Weight> seq;
};

inline ReducedForm reduce_part(const Part& p)
{
    if (p.seq.empty()) return {};
    return p.kind == PartKind::st ? reduce_stack(p.seq) : reduce_tes(p.seq);
}

inline ReducedForm reduce_concat(const std::vector<Part>& parts)
{
    ReducedForm r;
    for (auto& p : parts) r = add(r, reduce_part(p));
    return r;
}

inline Weight value_of_reduced(const ReducedForm& r)
{
    Weight v;
    for (std::size_t i = 0; i < r.menu.size(); ++i) {
        if (i % 2 == 0) v += r.menu[i];
        else v -= r.menu[i];
    }
    return r.menu.size() % 2 == 0 ? v - r.ev_x : v + r.ev_x;
}

inline std::string to_text(const ReducedForm& r)
{
    std::string out = "<";
    for (std::size_t i = 0; i < r.menu.size(); ++i) out += (i ? "," : "") + r.menu[i].str();
    out += ">";
    if (r.ev_x.sign() != 0) out += "+ev(" + r.ev_x.str() + ")";
    return out;
}

// Stack and tes components of a board, each single vertex taken as a one-vertex stack.
struct BoardParts {
    std::vector<Part> parts;
    std::vector<std::vector<int>> ids; // vertex ids along each part
};

inline std::optional<BoardParts> board_parts(const Board& b)
{
    BoardParts out;
    for (auto& cs : component_shapes(b)) {
        if (cs.shape != Shape::single && cs.shape != Shape::stack && cs.shape != Shape::tes) return std::nullopt;
        out.parts.push_back({cs.shape == Shape::tes ? PartKind::tes : PartKind::st, weights_along(b, cs.order)});
        out.ids.push_back(cs.order);
    }
    return out;
}

inline std::optional<ReducedForm> reduce_board(const Board& b)
{
    auto bp = board_parts(b);
    if (!bp) return std::nullopt;
    return reduce_concat(bp->parts);
}

enum class End { left, right };

struct MoveChoice {
    bool any = false; // m = 0: every move is optimal
    std::size_t part = 0;
    End end = End::left;
    Weight slice_weight;
};

inline MoveChoice optimal_move_concat(const std::vector<Part>& parts)
{
    MoveChoice best;
    bool found = false;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto& p = parts[i];
        if (p.seq.empty()) continue;
        auto consider = [&](const Weight& w, End e) {
            if (!found || w > best.slice_weight) {
                best = {false, i, e, w};
                found = true;
            }
        };
        if (p.kind == PartKind::st) {
            auto d = partition_stack(p.seq);
            if (!d.weights.empty()) consider(d.weights.front(), End::left);
        } else {
            auto d = partition_tes(p.seq);
            consider(d.weights.front(), End::left);
            if (d.weights.size() > 1) consider(d.weights.back(), End::right);
        }
    }
    if (!found) best.any = true;
    return best;
}

struct PlayStep {
    std::size_t part;
    End end;
    Weight weight;
    int player; // 1 or 2
};

// One optimal line of play: each move is recomputed from the reduced form of the remnant.
inline std::vector<PlayStep> optimal_play_line(std::vector<Part> parts)
{
    std::vector<PlayStep> line;
    int player = 1;
    while (true) {
        auto mc = optimal_move_concat(parts);
        std::size_t idx = mc.part;
        End end = mc.end;
        if (mc.any) {
            auto it = std::find_if(parts.begin(), parts.end(), [](const Part& p) { return !p.seq.empty(); });
            if (it == parts.end()) break;
            idx = static_cast<std::size_t>(it - parts.begin());
            end = End::left;
        }
        auto& s = parts[idx].seq;
        if (end == End::left) {
            line.push_back({idx, end, s.front(), player});
            s.erase(s.begin());
        } else {
            line.push_back({idx, end, s.back(), player});
            s.pop_back();
        }
        player = 3 - player;
    }
    return line;
}

// Replace the slice seq[seg] by its weight.
inline std::vector<Weight> condense_slice(const std::vector<Weight>& seq, Segment seg)
{
    if (seg.end > seq.size() || seg.begin >= seg.end) throw std::out_of_range("condense_slice: bad segment");
    std::span<const Weight> part(seq.data() + seg.begin, seg.size());
    if (!is_slice(part)) throw std::invalid_argument("condense_slice: segment is not a slice");
    std::vector<Weight> out(seq.begin(), seq.begin() + seg.begin);
    out.push_back(alternating_sum(part));
    out.insert(out.end(), seq.begin() + seg.end, seq.end());
    return out;
}

struct Detached {
    Board rest;
    Weight weight;
};

// g ~ (g \ v) + <wt(v)> for an available vertex of globally maximal weight.
inline Detached detach_max(const Board& b, int v)
{
    if (!b.has_vertex(v) || !b.is_available(v)) throw std::invalid_argument("detach_max: vertex is not available");
    auto st = board_stats(b);
    if (b.weight(v) != st.max_weight) throw std::invalid_argument("detach_max: vertex weight is not the global maximum");
    return {apply_move(b, v), b.weight(v)};
}

// tes/st(a_1,...,a_n) ~ <a_1> + tes/st(a_2,...,a_n) whenever a_1 >= a_2.
inline std::pair<Weight, std::vector<Weight>> detach_end(const std::vector<Weight>& seq)
{
    if (seq.empty()) throw std::invalid_argument("detach_end: empty sequence");
    if (seq.size() >= 2 && seq[0] < seq[1]) throw std::invalid_argument("detach_end: first weight is below the second");
    return {seq[0], std::vector<Weight>(seq.begin() + 1, seq.end())};
}

} // namespace graphgames

namespace graphgames {

// Merges u, v, w into one vertex of weight wt(u) - wt(v) + wt(w) when v is an unavailable
// global maximum joined only to u and w, u and w have degree <= 2 (1 if available),
// and their component is broached.
inline Board condense_triple(const Board& b, int u, int v, int w)
{
    auto fail = [](const std::string& why) { return std::invalid_argument("condense_triple: " + why); };
    if (u == v || v == w || u == w) throw fail("vertices must be distinct");
    for (int x : {u, v, w})
        if (!b.has_vertex(x)) throw fail("unknown vertex " + std::to_string(x));
    if (b.weight(v) != board_stats(b).max_weight) throw fail("middle vertex is not a global maximum");
    if (b.is_available(v)) throw fail("middle vertex is available");
    auto nv = b.neighbors(v);
    if (nv.size() != 2 || !std::count(nv.begin(), nv.end(), u) || !std::count(nv.begin(), nv.end(), w))
        throw fail("middle vertex must be adjacent to exactly the outer two");
    for (int x : {u, w}) {
        auto d = b.neighbors(x).size();
        if (d > 2 || (b.is_available(x) && d != 1)) throw fail("outer vertex degree condition fails");
    }
    bool broached = false;
    for (auto& comp : b.components())
        if (std::count(comp.begin(), comp.end(), v))
            for (int x : comp)
                if (b.is_available(x)) broached = true;
    if (!broached) throw fail("component is unbroached");

    int p = std::min(u, w);
    std::vector<Vertex> vs;
    std::vector<int> av;
    for (auto& x : b.vertices()) {
        if (x.id == u || x.id == v || x.id == w) continue;
        vs.push_back(x);
        if (b.is_available(x.id)) av.push_back(x.id);
    }
    vs.push_back({p, b.weight(u) - b.weight(v) + b.weight(w)});
    if (b.is_available(u) || b.is_available(w)) av.push_back(p);
    std::vector<Edge> es;
    for (auto [x, y] : b.edges()) {
        auto map = [&](int z) { return z == u || z == w ? p : z; };
        if (x == v || y == v) continue;
        int a = map(x), c = map(y);
        if (a != c) es.emplace_back(a, c);
    }
    return Board(std::move(vs), std::move(es), std::move(av));
}

} // namespace graphgames
