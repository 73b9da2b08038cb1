#pragma once

#include "shorthand.hpp"

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphgames {

enum class Rules { normal, p, a, s };

inline std::string rules_name(Rules r)
{
    switch (r) {
    case Rules::normal: return "normal";
    case Rules::p: return "p";
    case Rules::a: return "a";
    case Rules::s: return "s";
    }
    return "?";
}

inline Rules parse_rules(const std::string& s)
{
    if (s == "normal" || s.empty()) return Rules::normal;
    if (s == "p") return Rules::p;
    if (s == "a") return Rules::a;
    if (s == "s") return Rules::s;
    throw std::invalid_argument("unknown rules '" + s + "' (normal, p, a, s)");
}

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Caps {
    std::size_t exhaustive = 20;
    std::size_t dp_components = 3;
    std::size_t dp_component_size = 24;
    std::size_t dp_states = 2'000'000;
};

// PIZZA_ENGINE_CAP: either a bare number (exhaustive cap) or
// comma-separated key=value pairs over exhaustive, dp_components, dp_size, dp_states.
inline Caps caps_from_env()
{
    Caps c;
    const char* env = std::getenv("PIZZA_ENGINE_CAP");
    if (!env || !*env) return c;
    std::string s(env);
    auto num = [](const std::string& v) { return static_cast<std::size_t>(std::stoull(v)); };
    try {
        if (s.find('=') == std::string::npos) {
            c.exhaustive = std::min<std::size_t>(num(s), 30);
            return c;
        }
        std::size_t b = 0;
        while (b < s.size()) {
            std::size_t e = s.find(',', b);
            std::string kv = s.substr(b, e == std::string::npos ? std::string::npos : e - b);
            auto eq = kv.find('=');
            std::string k = kv.substr(0, eq), v = eq == std::string::npos ? "" : kv.substr(eq + 1);
            if (k == "exhaustive") c.exhaustive = std::min<std::size_t>(num(v), 30);
            else if (k == "dp_components") c.dp_components = num(v);
            else if (k == "dp_size") c.dp_component_size = num(v);
            else if (k == "dp_states") c.dp_states = num(v);
            if (e == std::string::npos) break;
            b = e + 1;
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("bad PIZZA_ENGINE_CAP value '" + s + "'");
    }
    return c;
}

inline const Caps& default_caps()
{
    static const Caps c = caps_from_env();
    return c;
}

namespace detail {

inline Weight combine(Rules r, bool any, const Weight& best, std::size_t remaining)
{
    if (!any) return Weight(0);
    switch (r) {
    case Rules::normal: return best;
    case Rules::p: return best.sign() < 0 ? Weight(0) : best;
    case Rules::a: return (remaining % 2 == 0 && best.sign() < 0) ? Weight(0) : best;
    case Rules::s: return abs(best);
    }
    return best;
}

class Exhaustive {
public:
    Exhaustive(const Board& b, Rules r) : rules_(r), n_(b.size())
    {
        ids_ = b.ids();
        for (auto& v : b.vertices()) w_.push_back(v.weight);
        adj_.assign(n_, 0);
        for (auto [a, c] : b.edges()) {
            auto i = b.index_of(a), j = b.index_of(c);
            adj_[i] |= 1u << j;
            adj_[j] |= 1u << i;
        }
        for (int v : b.available()) avail0_ |= 1u << b.index_of(v);
        memo_.resize(std::size_t(1) << n_);
        done_.assign(std::size_t(1) << n_, 0);
    }

    Weight value() { return value(0, avail0_); }

    std::map<int, Weight> outcomes()
    {
        std::map<int, Weight> out;
        std::uint32_t full = n_ == 32 ? ~0u : ((1u << n_) - 1);
        std::uint32_t moves = legal(0, avail0_, full);
        for (std::uint32_t m = moves; m; m &= m - 1) {
            int v = std::countr_zero(m);
            out[ids_[v]] = w_[v] - child(0, avail0_, full, v);
        }
        return out;
    }

private:
    Rules rules_;
    std::size_t n_;
    std::vector<int> ids_;
    std::vector<Weight> w_;
    std::vector<std::uint32_t> adj_;
    std::uint32_t avail0_ = 0;
    std::vector<Weight> memo_;
    std::vector<std::uint8_t> done_;

    std::uint32_t legal(std::uint32_t, std::uint32_t avail, std::uint32_t present) const
    {
        std::uint32_t reach = avail, frontier = avail;
        while (frontier) {
            std::uint32_t next = 0;
            for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj_[std::countr_zero(f)];
            next &= present & ~reach;
            reach |= next;
            frontier = next;
        }
        return avail | (present & ~reach);
    }

    Weight child(std::uint32_t removed, std::uint32_t avail, std::uint32_t present, int v)
    {
        std::uint32_t bit = 1u << v;
        std::uint32_t np = present & ~bit;
        return value(removed | bit, (avail | adj_[v]) & np);
    }

    Weight value(std::uint32_t removed, std::uint32_t avail)
    {
        if (done_[removed]) return memo_[removed];
        std::uint32_t full = (1u << n_) - 1;
        std::uint32_t present = full & ~removed;
        std::uint32_t moves = legal(removed, avail, present);
        Weight best;
        bool any = false;
        for (std::uint32_t m = moves; m; m &= m - 1) {
            int v = std::countr_zero(m);
            Weight o = w_[v] - child(removed, avail, present, v);
            if (!any || o > best) best = o;
            any = true;
        }
        Weight res = combine(rules_, any, best, std::popcount(present));
        done_[removed] = 1;
        memo_[removed] = res;
        return res;
    }
};

// One component of an interval-shaped board, with its local state space.
struct IntervalPart {
    Shape shape;
    std::vector<Weight> w;
    std::vector<int> ids;

    std::size_t n() const { return w.size(); }

    std::size_t states() const
    {
        std::size_t k = n();
        switch (shape) {
        case Shape::single: return std::size_t(1) << k; // menu of isolated vertices: removed mask
        case Shape::stack: return k + 1;
        case Shape::tes: return (k + 1) * (k + 1);
        case Shape::path: return 1 + (k + 1) * (k + 1);
        case Shape::cycle: return 1 + k * k;
        default: return 0;
        }
    }

    std::size_t remaining(std::size_t s) const
    {
        std::size_t k = n();
        switch (shape) {
        case Shape::single: return k - std::popcount(s);
        case Shape::stack: return k - s;
        case Shape::tes: return k - s / (k + 1) - s % (k + 1);
        case Shape::path: return s == 0 ? k : (s - 1) / (k + 1) + (s - 1) % (k + 1);
        case Shape::cycle: return s == 0 ? k : (s - 1) % k;
        default: return 0;
        }
    }

    // (vertex index within part, next local state)
    void moves(std::size_t s, std::vector<std::pair<std::size_t, std::size_t>>& out) const
    {
        out.clear();
        std::size_t k = n();
        switch (shape) {
        case Shape::single:
            for (std::size_t i = 0; i < k; ++i)
                if (!(s >> i & 1)) out.emplace_back(i, s | (std::size_t(1) << i));
            break;
        case Shape::stack:
            if (s < k) out.emplace_back(s, s + 1);
            break;
        case Shape::tes: {
            std::size_t l = s / (k + 1), rc = s % (k + 1), len = k - l - rc;
            if (len >= 1) out.emplace_back(l, (l + 1) * (k + 1) + rc);
            if (len >= 2) out.emplace_back(k - 1 - rc, l * (k + 1) + rc + 1);
            break;
        }
        case Shape::path: {
            auto enc = [&](std::size_t L, std::size_t R) { return 1 + L * (k + 1) + R; };
            if (s == 0) {
                for (std::size_t i = 0; i < k; ++i) out.emplace_back(i, enc(i, k - 1 - i));
            } else {
                std::size_t L = (s - 1) / (k + 1), R = (s - 1) % (k + 1);
                if (L > 0) out.emplace_back(L - 1, enc(L - 1, R));
                if (R > 0) out.emplace_back(k - R, enc(L, R - 1));
            }
            break;
        }
        case Shape::cycle: {
            auto enc = [&](std::size_t st, std::size_t len) { return 1 + st * k + len; };
            if (s == 0) {
                for (std::size_t i = 0; i < k; ++i) out.emplace_back(i, enc((i + 1) % k, k - 1));
            } else {
                std::size_t st = (s - 1) / k, len = (s - 1) % k;
                if (len >= 1) out.emplace_back(st, enc((st + 1) % k, len - 1));
                if (len >= 2) out.emplace_back((st + len - 1) % k, enc(st, len - 1));
            }
            break;
        }
        default: break;
        }
    }
};

inline std::optional<std::vector<IntervalPart>> interval_parts(const Board& b)
{
    std::vector<IntervalPart> parts;
    IntervalPart singles{Shape::single, {}, {}};
    for (auto& cs : component_shapes(b)) {
        if (cs.shape == Shape::other) return std::nullopt;
        if (cs.shape == Shape::single) {
            singles.w.push_back(b.weight(cs.order[0]));
            singles.ids.push_back(cs.order[0]);
            continue;
        }
        parts.push_back({cs.shape, weights_along(b, cs.order), cs.order});
    }
    if (!singles.w.empty()) parts.push_back(std::move(singles));
    return parts;
}

class IntervalDP {
public:
    IntervalDP(std::vector<IntervalPart> parts, Rules r, const Caps& caps) : parts_(std::move(parts)), rules_(r)
    {
        if (parts_.size() > caps.dp_components)
            throw CapExceeded("interval DP: " + std::to_string(parts_.size()) + " components exceed cap " +
                              std::to_string(caps.dp_components));
        std::size_t total = 1;
        for (auto& p : parts_) {
            if (p.n() > caps.dp_component_size || (p.shape == Shape::single && p.n() > 20))
                throw CapExceeded("interval DP: component of size " + std::to_string(p.n()) + " exceeds cap " +
                                  std::to_string(caps.dp_component_size));
            radix_.push_back(total);
            std::size_t s = p.states();
            if (total > caps.dp_states / s)
                throw CapExceeded("interval DP: joint state space exceeds cap " + std::to_string(caps.dp_states));
            total *= s;
        }
        memo_.resize(total);
        done_.assign(total, 0);
    }

    Weight value() { return value(0); }

    std::map<int, Weight> outcomes()
    {
        std::map<int, Weight> out;
        std::vector<std::pair<std::size_t, std::size_t>> mv;
        for (std::size_t c = 0; c < parts_.size(); ++c) {
            parts_[c].moves(0, mv);
            for (auto [vi, ns] : mv) out[parts_[c].ids[vi]] = parts_[c].w[vi] - value(ns * radix_[c]);
        }
        return out;
    }

private:
    std::vector<IntervalPart> parts_;
    Rules rules_;
    std::vector<std::size_t> radix_;
    std::vector<Weight> memo_;
    std::vector<std::uint8_t> done_;

    Weight value(std::size_t state)
    {
        if (done_[state]) return memo_[state];
        std::size_t rem = 0;
        Weight best;
        bool any = false;
        std::vector<std::pair<std::size_t, std::size_t>> mv;
        for (std::size_t c = 0; c < parts_.size(); ++c) {
            std::size_t local = state / radix_[c] % parts_[c].states();
            rem += parts_[c].remaining(local);
            parts_[c].moves(local, mv);
            for (auto [vi, ns] : mv) {
                std::size_t next = state - local * radix_[c] + ns * radix_[c];
                Weight o = parts_[c].w[vi] - value(next);
                if (!any || o > best) best = o;
                any = true;
            }
        }
        Weight res = combine(rules_, any, best, rem);
        done_[state] = 1;
        memo_[state] = res;
        return res;
    }
};

} // namespace detail

inline Weight value_exhaustive(const Board& b, Rules r = Rules::normal, const Caps& caps = default_caps())
{
    if (b.size() > caps.exhaustive || b.size() > 30)
        throw CapExceeded("exhaustive search: board of size " + std::to_string(b.size()) + " exceeds cap " +
                          std::to_string(caps.exhaustive));
    return detail::Exhaustive(b, r).value();
}

inline bool is_interval_shaped(const Board& b) { return detail::interval_parts(b).has_value(); }

inline Weight value_interval_dp(const Board& b, Rules r = Rules::normal, const Caps& caps = default_caps())
{
    auto parts = detail::interval_parts(b);
    if (!parts) throw std::invalid_argument("interval DP: board has a component that is not a stack, tes, path or cycle");
    return detail::IntervalDP(std::move(*parts), r, caps).value();
}

// Interval DP where it applies within caps, otherwise exhaustive search.
inline Weight value_oracle(const Board& b, Rules r = Rules::normal, const Caps& caps = default_caps())
{
    if (auto parts = detail::interval_parts(b)) {
        try {
            return detail::IntervalDP(std::move(*parts), r, caps).value();
        } catch (const CapExceeded&) {
            if (b.size() > caps.exhaustive) throw;
        }
    }
    return value_exhaustive(b, r, caps);
}

inline std::map<int, Weight> outcome_per_move(const Board& b, Rules r = Rules::normal, const Caps& caps = default_caps())
{
    if (auto parts = detail::interval_parts(b)) {
        try {
            return detail::IntervalDP(std::move(*parts), r, caps).outcomes();
        } catch (const CapExceeded&) {
            if (b.size() > caps.exhaustive) throw;
        }
    }
    if (b.size() > caps.exhaustive)
        throw CapExceeded("exhaustive search: board of size " + std::to_string(b.size()) + " exceeds cap " +
                          std::to_string(caps.exhaustive));
    return detail::Exhaustive(b, r).outcomes();
}

// Closed form for an all-available board under s-rules.
inline Weight s_value_menu(std::vector<Weight> weights)
{
    Weight N, P;
    std::vector<Weight> pos;
    for (auto& w : weights) {
        if (w.sign() < 0) N -= w;
        else if (w.sign() > 0) {
            P += w;
            pos.push_back(w);
        }
    }
    if (N > P) return N - P;
    std::sort(pos.begin(), pos.end());
    std::size_t k = pos.size(), j = 0;
    Weight prefix;
    while (prefix < N) prefix += pos[j++];
    // p_k - p_{k-1} + ... ± p_{j+1} ± (P' - N), signs alternating from the top
    Weight v;
    int sign = 1;
    for (std::size_t i = k; i > j; --i) {
        v += sign > 0 ? pos[i - 1] : -pos[i - 1];
        sign = -sign;
    }
    v += sign > 0 ? prefix - N : N - prefix;
    return v;
}

} // namespace graphgames
