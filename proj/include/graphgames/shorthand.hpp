#pragma once

#include "board.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace graphgames {

enum class Kind { menu, st, tes, path, cyc };

struct Shorthand {
    Kind kind = Kind::menu;
    std::vector<Weight> weights;
};

inline std::string kind_name(Kind k)
{
    switch (k) {
    case Kind::menu: return "menu";
    case Kind::st: return "st";
    case Kind::tes: return "tes";
    case Kind::path: return "path";
    case Kind::cyc: return "cyc";
    }
    return "?";
}

inline Board build_board(const Shorthand& s)
{
    const auto& w = s.weights;
    int n = static_cast<int>(w.size());
    if (s.kind != Kind::menu && n == 0) throw InvalidBoard(kind_name(s.kind) + " needs at least one weight");
    std::vector<Vertex> vs;
    for (int i = 0; i < n; ++i) vs.push_back({i + 1, w[i]});
    std::vector<Edge> es;
    std::vector<int> av;
    if (s.kind != Kind::menu)
        for (int i = 1; i < n; ++i) es.emplace_back(i, i + 1);
    switch (s.kind) {
    case Kind::menu:
        for (int i = 1; i <= n; ++i) av.push_back(i);
        break;
    case Kind::st: av = {1}; break;
    case Kind::tes: av = {1, n}; break;
    case Kind::path: break;
    case Kind::cyc:
        if (n >= 3) es.emplace_back(n, 1);
        break;
    }
    return Board(std::move(vs), std::move(es), std::move(av));
}

inline std::vector<Weight> weights_of(std::initializer_list<Weight> l) { return std::vector<Weight>(l); }

inline Board st(std::vector<Weight> w) { return build_board({Kind::st, std::move(w)}); }
inline Board tes(std::vector<Weight> w) { return build_board({Kind::tes, std::move(w)}); }
inline Board path(std::vector<Weight> w) { return build_board({Kind::path, std::move(w)}); }
inline Board cyc(std::vector<Weight> w) { return build_board({Kind::cyc, std::move(w)}); }
inline Board menu(std::vector<Weight> w) { return build_board({Kind::menu, std::move(w)}); }

inline std::vector<Weight> parse_weights(std::string_view csv)
{
    std::vector<Weight> out;
    std::size_t b = 0;
    bool blank = true;
    for (char c : csv)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) return out;
    while (true) {
        std::size_t e = csv.find(',', b);
        out.push_back(Weight::parse(csv.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b)));
        if (e == std::string_view::npos) break;
        b = e + 1;
    }
    return out;
}

inline std::string join_weights(const std::vector<Weight>& w, const char* sep = ",")
{
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += sep;
        out += w[i].str();
    }
    return out;
}

inline std::string to_text(const Shorthand& s)
{
    if (s.kind == Kind::menu) return "<" + join_weights(s.weights) + ">";
    return kind_name(s.kind) + "(" + join_weights(s.weights) + ")";
}

// Grammar: term ('+' term)*, term = kind '(' csv ')' | '<' csv '>'.
// The glyphs ⊕ and ⟨ ⟩ are accepted as aliases.
inline std::vector<Shorthand> parse_shorthand_terms(std::string_view text)
{
    std::string s;
    for (std::size_t i = 0; i < text.size();) {
        auto starts = [&](std::string_view g) { return text.substr(i, g.size()) == g; };
        if (starts("⊕")) { s += '+'; i += 3; }
        else if (starts("⟨")) { s += '<'; i += 3; }
        else if (starts("⟩")) { s += '>'; i += 3; }
        else if (starts("−")) { s += '-'; i += 3; }
        else s += text[i++];
    }
    std::vector<Shorthand> out;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto bad = [&](const std::string& why) { return InvalidBoard("shorthand '" + std::string(text) + "': " + why); };
    while (true) {
        skip();
        Shorthand term;
        char close;
        if (i < s.size() && s[i] == '<') {
            term.kind = Kind::menu;
            close = '>';
            ++i;
        } else {
            std::size_t b = i;
            while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
            std::string name = s.substr(b, i - b);
            if (name == "st") term.kind = Kind::st;
            else if (name == "tes") term.kind = Kind::tes;
            else if (name == "path") term.kind = Kind::path;
            else if (name == "cyc") term.kind = Kind::cyc;
            else if (name == "menu") term.kind = Kind::menu;
            else throw bad("unknown kind '" + name + "'");
            skip();
            if (i >= s.size() || s[i] != '(') throw bad("expected '('");
            close = ')';
            ++i;
        }
        std::size_t e = s.find(close, i);
        if (e == std::string::npos) throw bad(std::string("missing '") + close + "'");
        try {
            term.weights = parse_weights(std::string_view(s).substr(i, e - i));
        } catch (const std::invalid_argument& ex) {
            throw bad(ex.what());
        }
        if (term.kind != Kind::menu && term.weights.empty()) throw bad(kind_name(term.kind) + " needs at least one weight");
        out.push_back(std::move(term));
        i = e + 1;
        skip();
        if (i == s.size()) break;
        if (s[i] != '+') throw bad("expected '+' between terms");
        ++i;
    }
    return out;
}

inline Board parse_board_text(std::string_view text)
{
    std::vector<Board> parts;
    for (auto& t : parse_shorthand_terms(text)) parts.push_back(build_board(t));
    if (parts.size() == 1) return parts[0];
    return concat(parts);
}

enum class Shape { single, stack, tes, path, cycle, other };

struct ComponentShape {
    Shape shape = Shape::other;
    std::vector<int> order; // vertex ids along the path/cycle; stacks start at the available end
};

inline std::vector<ComponentShape> component_shapes(const Board& b)
{
    std::vector<ComponentShape> out;
    for (auto& comp : b.components()) {
        ComponentShape cs;
        std::size_t n = comp.size();
        if (n == 1) {
            cs.shape = Shape::single;
            cs.order = comp;
            out.push_back(cs);
            continue;
        }
        std::size_t deg_sum = 0;
        bool low = true;
        std::vector<int> ends;
        for (int v : comp) {
            auto d = b.neighbors(v).size();
            deg_sum += d;
            if (d > 2) low = false;
            if (d == 1) ends.push_back(v);
        }
        std::vector<int> av;
        for (int v : comp)
            if (b.is_available(v)) av.push_back(v);
        auto walk = [&](int start, int second) {
            std::vector<int> ord{start};
            int prev = start, cur = second;
            while (cur != start && ord.size() < n) {
                ord.push_back(cur);
                int nxt = -1;
                for (int nb : b.neighbors(cur))
                    if (nb != prev) nxt = nb;
                if (nxt == -1) break;
                prev = cur;
                cur = nxt;
            }
            return ord;
        };
        if (low && deg_sum / 2 == n - 1 && ends.size() == 2) {
            int a = ends[0], z = ends[1];
            if (av.empty()) {
                cs.shape = Shape::path;
            } else if (av.size() == 2 && ((av[0] == a && av[1] == z) || (av[0] == z && av[1] == a))) {
                cs.shape = Shape::tes;
            } else if (av.size() == 1 && (av[0] == a || av[0] == z)) {
                cs.shape = Shape::stack;
                if (av[0] == z) std::swap(a, z);
            }
            if (cs.shape != Shape::other) cs.order = walk(a, b.neighbors(a)[0]);
        } else if (low && deg_sum / 2 == n && ends.empty() && av.empty()) {
            int s = comp.front();
            auto& nb = b.neighbors(s);
            cs.order = walk(s, std::min(nb[0], nb[1]));
            if (cs.order.size() == n) cs.shape = Shape::cycle;
            else cs.order.clear();
        }
        if (cs.shape == Shape::other) cs.order = comp;
        out.push_back(std::move(cs));
    }
    return out;
}

inline std::vector<Weight> weights_along(const Board& b, const std::vector<int>& order)
{
    std::vector<Weight> w;
    for (int v : order) w.push_back(b.weight(v));
    return w;
}

// Shorthand rendering of a board whose components all have recognised shapes; empty string otherwise.
inline std::string describe(const Board& b)
{
    if (b.empty()) return "<>";
    std::string out;
    std::vector<Weight> singles;
    for (auto& cs : component_shapes(b)) {
        auto w = weights_along(b, cs.order);
        std::string term;
        switch (cs.shape) {
        case Shape::single: singles.push_back(w[0]); continue;
        case Shape::stack: term = to_text({Kind::st, w}); break;
        case Shape::tes: term = to_text({Kind::tes, w}); break;
        case Shape::path: term = to_text({Kind::path, w}); break;
        case Shape::cycle: term = to_text({Kind::cyc, w}); break;
        case Shape::other: return "";
        }
        out += (out.empty() ? "" : "+") + term;
    }
    if (!singles.empty()) out += (out.empty() ? "" : "+") + to_text({Kind::menu, singles});
    return out;
}

} // namespace graphgames
