#pragma once

#include "cycles.hpp"
#include "oracle.hpp"
#include "reduction.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graphgames {

// Largest single cycle or unbroached path handed to the plateau solver.
inline constexpr std::size_t line_solver_cap = 5000;

struct Analysis {
    Weight best;                    // max over moves of wt(v) - val(g\v); 0 on an empty board
    std::map<int, Weight> outcomes; // every legal move, unless partial is set
    std::vector<int> optimal_moves; // ascending ids
    std::string backend;
    bool partial = false; // only plateau representatives were evaluated
};

namespace detail {

inline std::optional<ComponentShape> single_line(const Board& b)
{
    auto shapes = component_shapes(b);
    if (shapes.size() != 1) return std::nullopt;
    auto& s = shapes.front();
    if (s.shape != Shape::cycle && s.shape != Shape::path) return std::nullopt;
    return s;
}

inline void finish(Analysis& a)
{
    a.optimal_moves.clear();
    if (a.outcomes.empty()) return;
    a.best = std::max_element(a.outcomes.begin(), a.outcomes.end(), [](auto& x, auto& y) { return x.second < y.second; })->second;
    for (auto& [v, o] : a.outcomes)
        if (o == a.best) a.optimal_moves.push_back(v);
}

} // namespace detail

// Backend chain: reduction, plateau solver, interval DP, exhaustive search. Throws CapExceeded
// when no backend covers the board.
inline Analysis analyze(const Board& b, Rules r = Rules::normal, bool full = true, const Caps& caps = default_caps())
{
    Analysis a;
    if (b.empty()) {
        a.backend = "empty";
        return a;
    }
    if (r == Rules::normal) {
        if (reduce_board(b)) {
            a.backend = "reduction";
            for (int v : legal_moves(b)) a.outcomes[v] = b.weight(v) - value_of_reduced(*reduce_board(apply_move(b, v)));
            detail::finish(a);
            return a;
        }
        if (auto line = detail::single_line(b); line && line->order.size() <= line_solver_cap) {
            bool cyc = line->shape == Shape::cycle;
            a.backend = cyc ? "cycle" : "path";
            auto w = weights_along(b, line->order);
            auto sol = cyc ? solve_cycle(w, full) : solve_unbroached_path(w, full);
            for (auto& [i, o] : sol.outcomes) a.outcomes[line->order[i]] = o;
            a.best = sol.value;
            for (auto i : sol.optimal_vertices) a.optimal_moves.push_back(line->order[i]);
            std::sort(a.optimal_moves.begin(), a.optimal_moves.end());
            a.partial = !full;
            return a;
        }
    }
    if (auto parts = detail::interval_parts(b)) {
        try {
            a.outcomes = detail::IntervalDP(std::move(*parts), r, caps).outcomes();
            a.backend = "interval-dp";
            detail::finish(a);
            return a;
        } catch (const CapExceeded&) {
            if (b.size() > caps.exhaustive) throw;
        }
    }
    if (b.size() > caps.exhaustive)
        throw CapExceeded("no backend covers this board: size " + std::to_string(b.size()) + " exceeds the exhaustive cap " +
                          std::to_string(caps.exhaustive) + " and the board is not a stack/tes sum, single cycle or path, or within interval DP caps");
    a.outcomes = detail::Exhaustive(b, r).outcomes();
    a.backend = "exhaustive";
    detail::finish(a);
    return a;
}

// Value of a fresh turn: the best move, or the pass allowed by the rules.
inline Weight value_from_best(Rules r, const Board& b, const Weight& best)
{
    return detail::combine(r, !b.empty(), best, b.size());
}

struct Decision {
    bool pass = false;
    int vertex = -1;
    Weight best;
};

// Lowest-id optimal move; passes only when passing is allowed and every move loses.
inline Decision choose_move(const Board& b, Rules r, bool pass_allowed, const Caps& caps = default_caps())
{
    if (b.empty()) throw std::invalid_argument("no move on an empty board");
    auto a = analyze(b, r, true, caps);
    Decision d;
    d.best = a.best;
    if (pass_allowed && r != Rules::normal && a.best.sign() < 0) d.pass = true;
    else d.vertex = a.optimal_moves.front();
    return d;
}

// Whether the engine can play every position reachable from b.
inline std::optional<std::string> engine_refusal(const Board& b, Rules r, const Caps& caps = default_caps())
{
    try {
        analyze(b, r, false, caps);
    } catch (const CapExceeded& e) {
        return std::string(e.what());
    }
    return std::nullopt;
}

} // namespace graphgames
