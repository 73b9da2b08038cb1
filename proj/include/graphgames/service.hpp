#pragma once

#include "board_json.hpp"
#include "engine.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

namespace graphgames::service {

enum class Seat { none, player1, player2, both };

inline std::string seat_name(Seat s)
{
    switch (s) {
    case Seat::player1: return "player1";
    case Seat::player2: return "player2";
    case Seat::both: return "both";
    default: return "none";
    }
}

inline std::optional<Seat> parse_seat(const std::string& s)
{
    if (s == "none") return Seat::none;
    if (s == "player1" || s == "1") return Seat::player1;
    if (s == "player2" || s == "2") return Seat::player2;
    if (s == "both") return Seat::both;
    return std::nullopt;
}

inline bool seat_plays(Seat s, int player)
{
    return s == Seat::both || (s == Seat::player1 && player == 1) || (s == Seat::player2 && player == 2);
}

struct HistoryEntry {
    int mover = 1;
    bool pass = false;
    int vertex = 0;
    Weight weight;
    bool engine = false;
};

struct Session {
    std::string id;
    Board initial, current;
    Rules rules = Rules::normal;
    Seat engine = Seat::none;
    std::vector<HistoryEntry> history;
    Weight score1; // player 2 holds -score1
    int to_move = 1;
    int passes = 0; // consecutive passes just made
    bool finished = false;
    mutable std::shared_mutex mu;
};

struct HttpError : std::runtime_error {
    int status;
    HttpError(int s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

inline bool pass_allowed(const Session& s)
{
    if (s.finished) return false;
    switch (s.rules) {
    case Rules::p: return true;
    case Rules::a: return s.current.size() % 2 == 0;
    case Rules::s: return s.passes == 0;
    default: return false;
    }
}

inline bool must_move(const Session& s) { return s.rules == Rules::s && s.passes > 0; }

inline void update_finished(Session& s)
{
    s.finished = s.current.empty() || ((s.rules == Rules::p || s.rules == Rules::a) && s.passes >= 2);
}

inline void apply_vertex(Session& s, int v, bool engine)
{
    if (s.finished) throw HttpError(409, "game is finished");
    if (!s.current.has_vertex(v) || !is_legal(s.current, v)) throw HttpError(422, "vertex " + std::to_string(v) + " is not a legal move");
    Weight w = s.current.weight(v);
    s.current = apply_move(s.current, v);
    s.score1 += s.to_move == 1 ? w : -w;
    s.history.push_back({s.to_move, false, v, w, engine});
    s.to_move = 3 - s.to_move;
    s.passes = 0;
    update_finished(s);
}

inline void apply_pass(Session& s, bool engine)
{
    if (s.finished) throw HttpError(409, "game is finished");
    if (!pass_allowed(s)) throw HttpError(422, "passing is not allowed here under " + rules_name(s.rules) + " rules");
    s.history.push_back({s.to_move, true, 0, Weight(), engine});
    s.to_move = 3 - s.to_move;
    s.passes += 1;
    update_finished(s);
}

inline void engine_play(Session& s, const Caps& caps = default_caps())
{
    while (!s.finished && seat_plays(s.engine, s.to_move)) {
        auto d = choose_move(s.current, s.rules, pass_allowed(s), caps);
        if (d.pass) apply_pass(s, true);
        else apply_vertex(s, d.vertex, true);
    }
}

inline json history_json(const HistoryEntry& h)
{
    json j{{"mover", h.mover}, {"engine", h.engine}};
    if (h.pass) j["pass"] = true;
    else {
        j["vertex"] = h.vertex;
        j["weight"] = weight_to_json(h.weight);
    }
    return j;
}

inline json state_json(const Session& s)
{
    json hist = json::array();
    for (auto& h : s.history) hist.push_back(history_json(h));
    json j{{"game_id", s.id},
           {"rules", rules_name(s.rules)},
           {"engine_seat", seat_name(s.engine)},
           {"initial_board", board_to_json(s.initial)},
           {"board", board_to_json(s.current)},
           {"description", describe(s.current)},
           {"history", hist},
           {"scores", {{"player1", weight_to_json(s.score1)}, {"player2", weight_to_json(-s.score1)}}},
           {"to_move", s.to_move},
           {"legal_moves", s.finished ? std::vector<int>{} : legal_moves(s.current)},
           {"can_pass", pass_allowed(s)},
           {"must_move", must_move(s)},
           {"consecutive_passes", s.passes},
           {"finished", s.finished},
           {"outcome", s.finished ? json(weight_to_json(s.score1)) : json(nullptr)}};
    return j;
}

inline json summary_json(const Session& s)
{
    return {{"game_id", s.id},
            {"rules", rules_name(s.rules)},
            {"engine_seat", seat_name(s.engine)},
            {"description", describe(s.initial)},
            {"moves", s.history.size()},
            {"finished", s.finished},
            {"score_player1", weight_to_json(s.score1)}};
}

inline json snapshot_json(const Session& s)
{
    json hist = json::array();
    for (auto& h : s.history) hist.push_back(history_json(h));
    return {{"game_id", s.id},          {"rules", rules_name(s.rules)}, {"engine_seat", seat_name(s.engine)},
            {"initial_board", board_to_json(s.initial)}, {"board", board_to_json(s.current)}, {"history", hist},
            {"score_player1", weight_to_json(s.score1)}, {"to_move", s.to_move}, {"passes", s.passes},
            {"finished", s.finished}};
}

inline std::shared_ptr<Session> session_from_snapshot(const json& j)
{
    auto s = std::make_shared<Session>();
    s->id = j.at("game_id").get<std::string>();
    s->rules = parse_rules(j.at("rules").get<std::string>());
    s->engine = parse_seat(j.at("engine_seat").get<std::string>()).value_or(Seat::none);
    s->initial = board_from_json(j.at("initial_board"));
    s->current = board_from_json(j.at("board"));
    for (auto& h : j.at("history")) {
        HistoryEntry e;
        e.mover = h.at("mover").get<int>();
        e.engine = h.value("engine", false);
        e.pass = h.value("pass", false);
        if (!e.pass) {
            e.vertex = h.at("vertex").get<int>();
            e.weight = weight_from_json(h.at("weight"));
        }
        s->history.push_back(e);
    }
    s->score1 = weight_from_json(j.at("score_player1"));
    s->to_move = j.at("to_move").get<int>();
    s->passes = j.at("passes").get<int>();
    s->finished = j.at("finished").get<bool>();
    return s;
}

class SessionStore {
public:
    explicit SessionStore(std::optional<std::filesystem::path> state_dir = std::nullopt, Caps caps = default_caps())
        : dir_(std::move(state_dir)), caps_(caps)
    {
        if (!dir_) return;
        std::filesystem::create_directories(*dir_);
        if (std::ifstream meta(*dir_ / "next_id"); meta) meta >> next_;
        for (auto& entry : std::filesystem::directory_iterator(*dir_)) {
            if (entry.path().extension() != ".json") continue;
            std::ifstream in(entry.path());
            try {
                auto s = session_from_snapshot(json::parse(in));
                next_ = std::max(next_, numeric_suffix(s->id) + 1);
                sessions_[s->id] = s;
            } catch (const std::exception&) {
                // unreadable snapshots are skipped
            }
        }
    }

    const Caps& caps() const { return caps_; }

    std::shared_ptr<Session> add(std::shared_ptr<Session> s)
    {
        std::unique_lock lock(mu_);
        s->id = "g" + std::to_string(next_++);
        sessions_[s->id] = s;
        if (dir_) std::ofstream(*dir_ / "next_id") << next_;
        return s;
    }

    std::shared_ptr<Session> find(const std::string& id) const
    {
        std::shared_lock lock(mu_);
        auto it = sessions_.find(id);
        return it == sessions_.end() ? nullptr : it->second;
    }

    bool erase(const std::string& id)
    {
        std::unique_lock lock(mu_);
        if (!sessions_.erase(id)) return false;
        if (dir_) std::filesystem::remove(*dir_ / (id + ".json"));
        return true;
    }

    std::vector<std::shared_ptr<Session>> list() const
    {
        std::shared_lock lock(mu_);
        std::vector<std::shared_ptr<Session>> out;
        for (auto& [id, s] : sessions_) out.push_back(s);
        return out;
    }

    // Caller holds the session lock.
    void persist(const Session& s) const
    {
        if (!dir_) return;
        auto tmp = *dir_ / (s.id + ".json.tmp");
        {
            std::ofstream out(tmp);
            out << snapshot_json(s).dump();
        }
        std::filesystem::rename(tmp, *dir_ / (s.id + ".json"));
    }

private:
    static std::size_t numeric_suffix(const std::string& id)
    {
        try {
            return id.size() > 1 ? std::stoul(id.substr(1)) : 0;
        } catch (const std::exception&) {
            return 0;
        }
    }

    std::optional<std::filesystem::path> dir_;
    Caps caps_;
    mutable std::shared_mutex mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::size_t next_ = 1;
};

struct Request {
    std::string method;
    std::string path;
    std::string body;
};

struct Response {
    int status = 200;
    json body; // null for an empty reply
};

namespace detail {

inline std::vector<std::string> split_path(std::string path)
{
    if (auto q = path.find('?'); q != std::string::npos) path.resize(q);
    std::vector<std::string> out;
    std::stringstream ss(path);
    std::string seg;
    while (std::getline(ss, seg, '/'))
        if (!seg.empty()) out.push_back(seg);
    return out;
}

inline json parse_body(const std::string& body)
{
    if (body.empty()) return json::object();
    try {
        auto j = json::parse(body);
        if (!j.is_object()) throw HttpError(400, "request body must be a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        throw HttpError(400, std::string("malformed JSON: ") + e.what());
    }
}

inline Response create_game(SessionStore& store, const json& body)
{
    auto s = std::make_shared<Session>();
    bool has_board = body.contains("board"), has_text = body.contains("shorthand");
    if (has_board == has_text) throw HttpError(400, "give exactly one of 'board' or 'shorthand'");
    try {
        s->initial = has_board ? board_from_json(body.at("board")) : parse_board_text(body.at("shorthand").get<std::string>());
        s->rules = parse_rules(body.value("rules", std::string("normal")));
    } catch (const json::exception& e) {
        throw HttpError(400, std::string("bad request: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw HttpError(400, e.what());
    }
    auto seat_field = [&](const char* key) -> std::optional<Seat> {
        if (!body.contains(key)) return std::nullopt;
        const auto& v = body.at(key);
        std::string text = v.is_number_integer() ? std::to_string(v.get<int>()) : v.is_string() ? v.get<std::string>() : "";
        auto seat = parse_seat(text);
        if (!seat) throw HttpError(400, std::string("bad ") + key + " (none, player1, player2, both)");
        return seat;
    };
    auto engine = seat_field("engine_seat");
    auto human = seat_field("human_seat");
    if (human == Seat::both) throw HttpError(400, "human_seat must be player1 or player2");
    if (!engine) engine = !human || *human == Seat::none ? Seat::none : *human == Seat::player1 ? Seat::player2 : Seat::player1;
    if (human && *human != Seat::none && seat_plays(*engine, *human == Seat::player1 ? 1 : 2))
        throw HttpError(400, "engine_seat and human_seat overlap");
    s->engine = *engine;
    s->current = s->initial;
    update_finished(*s);
    if (s->engine != Seat::none)
        if (auto why = engine_refusal(s->initial, s->rules, store.caps())) throw HttpError(422, "unsupported board for the engine: " + *why);
    std::unique_lock lock(s->mu);
    engine_play(*s, store.caps());
    store.add(s);
    store.persist(*s);
    return {201, {{"game_id", s->id}, {"state", state_json(*s)}}};
}

inline Response play_move(SessionStore& store, Session& s, const json& body)
{
    std::unique_lock lock(s.mu);
    if (s.finished) throw HttpError(409, "game is finished");
    if (seat_plays(s.engine, s.to_move)) throw HttpError(409, "it is the engine's turn");
    if (body.contains("player")) {
        if (!body.at("player").is_number_integer()) throw HttpError(400, "'player' must be 1 or 2");
        if (body.at("player").get<int>() != s.to_move) throw HttpError(409, "not your turn");
    }
    bool pass = body.value("pass", false);
    if (pass == body.contains("vertex")) throw HttpError(400, "give either 'vertex' or 'pass': true");
    std::size_t before = s.history.size();
    if (pass) apply_pass(s, false);
    else {
        if (!body.at("vertex").is_number_integer()) throw HttpError(400, "'vertex' must be an integer id");
        apply_vertex(s, body.at("vertex").get<int>(), false);
    }
    engine_play(s, store.caps());
    store.persist(s);
    json state = state_json(s);
    json replies = json::array();
    for (std::size_t i = before + 1; i < s.history.size(); ++i) replies.push_back(history_json(s.history[i]));
    state["engine_replies"] = replies;
    return {200, state};
}

inline Response analysis(SessionStore& store, const Session& s)
{
    Board b;
    Rules r;
    bool can_pass, forced;
    {
        std::shared_lock lock(s.mu);
        if (s.finished)
            return {200, {{"value_to_move", "0"}, {"optimal_moves", json::array()}, {"per_move_outcomes", json::object()},
                          {"to_move", s.to_move}, {"finished", true}}};
        b = s.current;
        r = s.rules;
        can_pass = pass_allowed(s);
        forced = must_move(s);
    }
    Analysis a;
    try {
        a = analyze(b, r, true, store.caps());
    } catch (const CapExceeded& e) {
        throw HttpError(422, std::string("position is beyond engine capability: ") + e.what());
    }
    // pass: the opponent then passes too (p, a) or must move in the same position (s)
    std::optional<Weight> pass_outcome;
    if (can_pass) pass_outcome = r == Rules::s ? -a.best : Weight(0);
    Weight value = a.best;
    if (pass_outcome && *pass_outcome > value) value = *pass_outcome;
    json outcomes = json::object();
    for (auto& [v, o] : a.outcomes) outcomes[std::to_string(v)] = weight_to_json(o);
    json j{{"value_to_move", weight_to_json(value)},
           {"best_move_outcome", weight_to_json(a.best)},
           {"optimal_moves", a.optimal_moves},
           {"per_move_outcomes", outcomes},
           {"backend", a.backend},
           {"can_pass", can_pass},
           {"must_move", forced},
           {"finished", false}};
    if (pass_outcome) {
        j["pass_outcome"] = weight_to_json(*pass_outcome);
        j["pass_optimal"] = *pass_outcome >= a.best;
    }
    return {200, j};
}

inline Response route(SessionStore& store, const Request& req)
{
    auto seg = split_path(req.path);
    if (seg.size() < 2 || seg[0] != "api" || seg[1] != "v1") throw HttpError(404, "no such endpoint");
    seg.erase(seg.begin(), seg.begin() + 2);
    const auto& m = req.method;
    if (seg.size() == 1 && seg[0] == "health" && m == "GET") return {200, {{"status", "ok"}}};
    if (seg.empty() || seg[0] != "games") throw HttpError(404, "no such endpoint");
    if (seg.size() == 1) {
        if (m == "POST") return create_game(store, parse_body(req.body));
        if (m == "GET") {
            json games = json::array();
            for (auto& s : store.list()) {
                std::shared_lock lock(s->mu);
                games.push_back(summary_json(*s));
            }
            return {200, {{"games", games}}};
        }
        throw HttpError(405, "method not allowed");
    }
    auto s = store.find(seg[1]);
    if (!s) throw HttpError(404, "unknown game '" + seg[1] + "'");
    if (seg.size() == 2) {
        if (m == "GET") {
            std::shared_lock lock(s->mu);
            return {200, state_json(*s)};
        }
        if (m == "DELETE") {
            store.erase(seg[1]);
            return {204, nullptr};
        }
        throw HttpError(405, "method not allowed");
    }
    if (seg.size() == 3 && seg[2] == "moves") {
        if (m != "POST") throw HttpError(405, "method not allowed");
        return play_move(store, *s, parse_body(req.body));
    }
    if (seg.size() == 3 && seg[2] == "analysis") {
        if (m != "GET") throw HttpError(405, "method not allowed");
        return analysis(store, *s);
    }
    throw HttpError(404, "no such endpoint");
}

} // namespace detail

// Pure request handler; every failure becomes a JSON error reply.
inline Response handle(SessionStore& store, const Request& req)
{
    if (req.method == "OPTIONS") return {204, nullptr};
    try {
        return detail::route(store, req);
    } catch (const HttpError& e) {
        return {e.status, {{"error", e.what()}, {"status", e.status}}};
    } catch (const CapExceeded& e) {
        return {422, {{"error", e.what()}, {"status", 422}}};
    } catch (const std::exception& e) {
        return {500, {{"error", e.what()}, {"status", 500}}};
    }
}

} // namespace graphgames::service
