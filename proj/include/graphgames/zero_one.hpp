#pragma once

#include "classes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace graphgames {

struct NotEGame : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotSimplistic : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline bool is_e_game(const Board& b)
{
    for (auto& v : b.vertices())
        if (v.weight != Weight(0) && v.weight != Weight(1)) return false;
    for (auto& comp : b.components())
        if (std::none_of(comp.begin(), comp.end(), [&](int v) { return b.is_available(v); })) return false;
    return true;
}

inline void require_e_game(const Board& b)
{
    if (!is_e_game(b)) throw NotEGame("not an e-game: weights must be 0 or 1 and every component must be broached");
}

// Connected components of the subgraph induced by the 1-vertices, ordered by least id.
inline std::vector<std::vector<int>> one_clusters(const Board& b)
{
    std::vector<std::vector<int>> out;
    std::set<int> seen;
    for (int s : b.ids()) {
        if (b.weight(s) != Weight(1) || seen.count(s)) continue;
        std::vector<int> comp{s}, stack{s};
        seen.insert(s);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : b.neighbors(x))
                if (b.weight(y) == Weight(1) && seen.insert(y).second) {
                    comp.push_back(y);
                    stack.push_back(y);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

namespace detail {

inline std::set<int> zero_neighbors(const Board& b, const std::vector<int>& cluster)
{
    std::set<int> out;
    for (int x : cluster)
        for (int y : b.neighbors(x))
            if (b.weight(y) == Weight(0)) out.insert(y);
    return out;
}

} // namespace detail

// Odd clusters shrink to one 1-vertex (id = least id in the cluster); even clusters vanish and
// their 0-neighbours become pairwise adjacent.
inline Board reduce_e_game(const Board& b)
{
    require_e_game(b);
    std::vector<Vertex> vs;
    std::set<Edge> es;
    std::set<int> avail;
    for (auto& v : b.vertices())
        if (v.weight == Weight(0)) {
            vs.push_back(v);
            if (b.is_available(v.id)) avail.insert(v.id);
        }
    for (auto& [x, y] : b.edges())
        if (b.weight(x) == Weight(0) && b.weight(y) == Weight(0)) es.insert({std::min(x, y), std::max(x, y)});
    for (auto& cl : one_clusters(b)) {
        auto zs = detail::zero_neighbors(b, cl);
        bool any_avail = std::any_of(cl.begin(), cl.end(), [&](int v) { return b.is_available(v); });
        if (cl.size() % 2 == 1) {
            int id = cl.front();
            vs.push_back({id, Weight(1)});
            if (any_avail) avail.insert(id);
            for (int z : zs) es.insert({std::min(id, z), std::max(id, z)});
        } else {
            for (auto i = zs.begin(); i != zs.end(); ++i)
                for (auto j = std::next(i); j != zs.end(); ++j) es.insert({*i, *j});
            if (any_avail) avail.insert(zs.begin(), zs.end());
        }
    }
    return Board(std::move(vs), {es.begin(), es.end()}, {avail.begin(), avail.end()});
}

inline std::vector<int> available_ones(const Board& b)
{
    std::vector<int> out;
    for (int v : b.available())
        if (b.weight(v) == Weight(1)) out.push_back(v);
    return out;
}

// Available 0-vertices whose adjacent 1-clusters have even total size.
inline std::vector<int> safe_moves(const Board& b)
{
    require_e_game(b);
    if (!available_ones(b).empty()) throw std::invalid_argument("an available 1-vertex exists; it should be taken first");
    auto clusters = one_clusters(b);
    std::map<int, std::size_t> cluster_of;
    for (std::size_t i = 0; i < clusters.size(); ++i)
        for (int v : clusters[i]) cluster_of[v] = i;
    std::vector<int> out;
    for (int v : b.available()) {
        if (b.weight(v) != Weight(0)) continue;
        std::set<std::size_t> adj;
        for (int y : b.neighbors(v))
            if (b.weight(y) == Weight(1)) adj.insert(cluster_of.at(y));
        std::size_t total = 0;
        for (auto c : adj) total += clusters[c].size();
        if (total % 2 == 0) out.push_back(v);
    }
    return out;
}

inline bool is_simplistic(const Board& b)
{
    Board r = reduce_e_game(b);
    for (auto& v : r.vertices()) {
        if (v.weight == Weight(0) && !r.is_available(v.id)) return false;
        if (v.weight == Weight(1) && !r.is_available(v.id) && r.neighbors(v.id).size() % 2 == 1) return false;
    }
    return true;
}

enum class SimplisticKind { empty, minus_one, zero, zero_minus_one };

inline const char* simplistic_kind_text(SimplisticKind k)
{
    switch (k) {
    case SimplisticKind::empty: return "<>";
    case SimplisticKind::minus_one: return "<-1>";
    case SimplisticKind::zero: return "<0>";
    default: return "<0,-1>";
    }
}

struct SimplisticClass {
    SimplisticKind kind;           // class of the game once available 1-vertices are detached
    std::size_t detached_ones = 0; // available 1-vertices detached from the reduction
    G0Class cls;                   // class of the whole game
};

inline SimplisticClass simplistic_class(const Board& b)
{
    if (!is_simplistic(b)) throw NotSimplistic("game is not simplistic");
    Board r = reduce_e_game(b);
    auto ones = available_ones(r);
    Board rest = remove_vertices(r, ones);
    std::size_t zeros = 0, hidden = 0;
    for (auto& v : rest.vertices()) (v.weight == Weight(0) ? zeros : hidden) += 1;
    SimplisticClass out;
    out.detached_ones = ones.size();
    std::vector<Weight> menu_weights(ones.size(), Weight(1));
    if (zeros % 2 == 1) {
        out.kind = hidden % 2 ? SimplisticKind::zero_minus_one : SimplisticKind::zero;
        menu_weights.push_back(Weight(0));
    } else {
        out.kind = hidden % 2 ? SimplisticKind::minus_one : SimplisticKind::empty;
    }
    if (hidden % 2) menu_weights.push_back(Weight(-1));
    out.cls = canonical_class(std::move(menu_weights));
    return out;
}

inline Weight simplistic_value(const Board& b) { return class_value(simplistic_class(b).cls); }

// Take an available 1-vertex, else a safe move, else the least legal move.
inline int simplistic_strategy_move(const Board& b)
{
    if (!is_simplistic(b)) throw NotSimplistic("game is not simplistic");
    auto moves = legal_moves(b);
    if (moves.empty()) throw std::invalid_argument("no legal move on an empty board");
    auto ones = available_ones(b);
    if (!ones.empty()) return ones.front();
    auto safe = safe_moves(b);
    if (!safe.empty()) return safe.front();
    return moves.front();
}

// Fixtures: g1 and g2 have every 0 available but odd-degree hidden 1s; the primed versions the reverse.
namespace fixtures {

inline Board path_board(const std::vector<int>& w, const std::vector<int>& avail)
{
    std::vector<Vertex> vs;
    std::vector<Edge> es;
    for (std::size_t i = 0; i < w.size(); ++i) {
        vs.push_back({int(i) + 1, Weight(w[i])});
        if (i) es.emplace_back(int(i), int(i) + 1);
    }
    return Board(std::move(vs), std::move(es), avail);
}

// Adds u (weight 1) joined to w (weight 0) and to the vertex `hub`; w is available.
inline Board with_tail(const Board& b, int hub)
{
    auto vs = b.vertices();
    auto es = b.edges();
    auto av = b.available();
    int u = int(vs.size()) + 1, w = u + 1;
    vs.push_back({u, Weight(1)});
    vs.push_back({w, Weight(0)});
    es.emplace_back(hub, u);
    es.emplace_back(u, w);
    av.push_back(w);
    return Board(std::move(vs), std::move(es), std::move(av));
}

inline Board g1() { return path_board({1, 0, 1, 0, 1, 0}, {2, 4, 6}); }
inline Board g2() { return with_tail(path_board({1, 0, 1, 0, 1, 0, 1}, {2, 4, 6}), 4); }
inline Board g1_prime() { return path_board({0, 0, 1, 0, 1, 0, 1, 0}, {4, 6, 8}); }
inline Board g2_prime() { return with_tail(path_board({0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0}, {4, 6, 8}), 6); }

} // namespace fixtures

} // namespace graphgames
