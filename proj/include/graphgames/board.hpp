#pragma once

#include "rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphgames {

struct InvalidBoard : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IllegalMove : std::invalid_argument {
    int vertex;
    IllegalMove(int v, const std::string& why) : std::invalid_argument(why), vertex(v) {}
};

struct Vertex {
    int id;
    Weight weight;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

using Edge = std::pair<int, int>;

// A position g = (G, A): vertex-weighted simple graph plus the available set.
class Board {
public:
    Board() = default;

    Board(std::vector<Vertex> vertices, std::vector<Edge> edges, std::vector<int> available)
        : vertices_(std::move(vertices))
    {
        std::sort(vertices_.begin(), vertices_.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (i && vertices_[i].id == vertices_[i - 1].id)
                throw InvalidBoard("duplicate vertex id " + std::to_string(vertices_[i].id));
            index_[vertices_[i].id] = i;
        }
        std::set<Edge> es;
        for (auto [a, b] : edges) {
            if (!index_.count(a) || !index_.count(b))
                throw InvalidBoard("edge references unknown vertex " + std::to_string(index_.count(a) ? b : a));
            if (a == b) continue;
            es.insert(std::minmax(a, b));
        }
        edges_.assign(es.begin(), es.end());
        adj_.assign(vertices_.size(), {});
        for (auto [a, b] : edges_) {
            adj_[index_[a]].push_back(b);
            adj_[index_[b]].push_back(a);
        }
        for (auto& l : adj_) std::sort(l.begin(), l.end());

        avail_.assign(vertices_.size(), false);
        for (int v : available) {
            auto it = index_.find(v);
            if (it == index_.end()) throw InvalidBoard("available vertex " + std::to_string(v) + " does not exist");
            avail_[it->second] = true;
        }
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (adj_[i].empty()) avail_[i] = true;
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }

    bool has_vertex(int id) const { return index_.count(id) > 0; }
    std::size_t index_of(int id) const
    {
        auto it = index_.find(id);
        if (it == index_.end()) throw std::out_of_range("no vertex " + std::to_string(id));
        return it->second;
    }
    const Weight& weight(int id) const { return vertices_[index_of(id)].weight; }
    const std::vector<int>& neighbors(int id) const { return adj_[index_of(id)]; }
    bool is_available(int id) const { return avail_[index_of(id)]; }

    std::vector<int> available() const
    {
        std::vector<int> out;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (avail_[i]) out.push_back(vertices_[i].id);
        return out;
    }

    std::vector<int> ids() const
    {
        std::vector<int> out;
        for (auto& v : vertices_) out.push_back(v.id);
        return out;
    }

    // Connected components as sorted id lists, ordered by smallest id.
    std::vector<std::vector<int>> components() const
    {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(vertices_.size(), false);
        for (std::size_t s = 0; s < vertices_.size(); ++s) {
            if (seen[s]) continue;
            std::vector<int> comp;
            std::vector<std::size_t> stack{s};
            seen[s] = true;
            while (!stack.empty()) {
                std::size_t i = stack.back();
                stack.pop_back();
                comp.push_back(vertices_[i].id);
                for (int nb : adj_[i]) {
                    std::size_t j = index_.at(nb);
                    if (!seen[j]) {
                        seen[j] = true;
                        stack.push_back(j);
                    }
                }
            }
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
        return out;
    }

    Weight abs_total() const
    {
        Weight t;
        for (auto& v : vertices_) t += abs(v.weight);
        return t;
    }

    friend bool operator==(const Board& a, const Board& b)
    {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.avail_ == b.avail_;
    }

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<bool> avail_;
    std::map<int, std::size_t> index_;
};

inline std::vector<int> legal_moves(const Board& b)
{
    std::vector<int> out;
    for (auto& comp : b.components()) {
        bool broached = std::any_of(comp.begin(), comp.end(), [&](int v) { return b.is_available(v); });
        for (int v : comp)
            if (!broached || b.is_available(v)) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_legal(const Board& b, int v)
{
    if (!b.has_vertex(v)) return false;
    if (b.is_available(v)) return true;
    auto lm = legal_moves(b);
    return std::binary_search(lm.begin(), lm.end(), v);
}

// Removes an arbitrary vertex set S; the survivors adjacent to S become available.
inline Board remove_vertices(const Board& b, const std::vector<int>& gone)
{
    std::set<int> s(gone.begin(), gone.end());
    std::vector<Vertex> vs;
    std::vector<Edge> es;
    std::vector<int> av;
    for (auto& v : b.vertices()) {
        if (s.count(v.id)) continue;
        vs.push_back(v);
        bool a = b.is_available(v.id);
        for (int nb : b.neighbors(v.id))
            if (s.count(nb)) a = true;
        if (a) av.push_back(v.id);
    }
    for (auto& e : b.edges())
        if (!s.count(e.first) && !s.count(e.second)) es.push_back(e);
    return Board(std::move(vs), std::move(es), std::move(av));
}

inline Board apply_move(const Board& b, int v)
{
    if (!b.has_vertex(v)) throw IllegalMove(v, "vertex " + std::to_string(v) + " is not on the board");
    if (!is_legal(b, v)) throw IllegalMove(v, "vertex " + std::to_string(v) + " is not a legal move");
    return remove_vertices(b, {v});
}

// Disjoint union; ids renumbered 1.. in (operand, original id) order.
inline Board concat(const std::vector<Board>& parts)
{
    std::vector<Vertex> vs;
    std::vector<Edge> es;
    std::vector<int> av;
    int next = 1;
    for (auto& p : parts) {
        std::map<int, int> re;
        for (auto& v : p.vertices()) {
            re[v.id] = next;
            vs.push_back({next, v.weight});
            if (p.is_available(v.id)) av.push_back(next);
            ++next;
        }
        for (auto [a, c] : p.edges()) es.emplace_back(re[a], re[c]);
    }
    return Board(std::move(vs), std::move(es), std::move(av));
}

inline Board concat(const Board& a, const Board& b) { return concat(std::vector<Board>{a, b}); }

inline Board affine(const Board& b, const Weight& a, const Weight& c)
{
    if (a.sign() <= 0) throw std::invalid_argument("affine scale must be positive");
    std::vector<Vertex> vs;
    for (auto& v : b.vertices()) vs.push_back({v.id, a * v.weight + c});
    return Board(std::move(vs), b.edges(), b.available());
}

inline Board relabel(const Board& b, const std::map<int, int>& ids)
{
    std::vector<Vertex> vs;
    std::vector<Edge> es;
    std::vector<int> av;
    for (auto& v : b.vertices()) vs.push_back({ids.at(v.id), v.weight});
    for (auto [x, y] : b.edges()) es.emplace_back(ids.at(x), ids.at(y));
    for (int v : b.available()) av.push_back(ids.at(v));
    return Board(std::move(vs), std::move(es), std::move(av));
}

struct BoardStats {
    std::size_t size = 0;
    bool odd = false;
    Weight abs_total;
    Weight max_weight;
    std::size_t unbroached_components = 0;
};

inline BoardStats board_stats(const Board& b)
{
    BoardStats s;
    s.size = b.size();
    s.odd = s.size % 2 == 1;
    s.abs_total = b.abs_total();
    for (std::size_t i = 0; i < b.vertices().size(); ++i)
        if (i == 0 || b.vertices()[i].weight > s.max_weight) s.max_weight = b.vertices()[i].weight;
    for (auto& comp : b.components())
        if (std::none_of(comp.begin(), comp.end(), [&](int v) { return b.is_available(v); })) ++s.unbroached_components;
    return s;
}

} // namespace graphgames
