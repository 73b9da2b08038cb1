// graphgames: solver, analysis and play front-end.
// Exit codes: 0 ok, 1 usage or bad input, 2 refused (size caps), 3 verification failure.

#include <graphgames/board_json.hpp>
#include <graphgames/classes.hpp>
#include <graphgames/cycles.hpp>
#include <graphgames/engine.hpp>
#include <graphgames/http_server.hpp>
#include <graphgames/reduction.hpp>
#include <graphgames/service.hpp>
#include <graphgames/slices.hpp>
#include <graphgames/testing/generators.hpp>
#include <graphgames/verify.hpp>
#include <graphgames/zero_one.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace graphgames;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Shorthand text first, then --concat terms, then --st/--tes/--path/--cyc/--menu in that order.
struct BoardArgs {
    std::string text, json_file;
    std::vector<std::string> concat_terms, st_w, tes_w, path_w, cyc_w, menu_w;

    void add(CLI::App* sub)
    {
        sub->add_option("board", text, "board shorthand, e.g. \"tes(4,3,1,2)+<-1>\"");
        sub->add_option("--concat", concat_terms, "shorthand expression to add to the board (repeatable)")->allow_extra_args(false);
        sub->add_option("--st", st_w, "stack with these comma-separated weights (repeatable)")->allow_extra_args(false);
        sub->add_option("--tes", tes_w, "two-ended stack (repeatable)")->allow_extra_args(false);
        sub->add_option("--path", path_w, "unbroached path (repeatable)")->allow_extra_args(false);
        sub->add_option("--cyc", cyc_w, "unbroached cycle (repeatable)")->allow_extra_args(false);
        sub->add_option("--menu", menu_w, "menu of isolated vertices (repeatable)")->allow_extra_args(false);
        sub->add_option("--board-json", json_file, "board JSON file with vertices, edges, available ('-' reads stdin)");
    }

    Board build() const
    {
        std::vector<Board> parts;
        if (!json_file.empty()) {
            json j;
            try {
                if (json_file == "-") j = json::parse(std::cin);
                else {
                    std::ifstream in(json_file);
                    if (!in) throw UsageError("cannot open " + json_file);
                    j = json::parse(in);
                }
            } catch (const json::parse_error& e) {
                throw UsageError(std::string("bad board JSON: ") + e.what());
            }
            parts.push_back(board_from_json(j));
        }
        if (!text.empty()) parts.push_back(parse_board_text(text));
        for (auto& t : concat_terms) parts.push_back(parse_board_text(t));
        for (auto& w : st_w) parts.push_back(st(parse_weights(w)));
        for (auto& w : tes_w) parts.push_back(tes(parse_weights(w)));
        for (auto& w : path_w) parts.push_back(path(parse_weights(w)));
        for (auto& w : cyc_w) parts.push_back(cyc(parse_weights(w)));
        for (auto& w : menu_w) parts.push_back(menu(parse_weights(w)));
        if (parts.empty()) throw UsageError("no board given (use a shorthand or --st/--tes/--path/--cyc/--menu/--board-json)");
        return parts.size() == 1 ? parts.front() : concat(parts);
    }
};

std::string ids_text(const std::vector<int>& ids)
{
    if (ids.empty()) return "none";
    std::string s;
    for (int v : ids) s += (s.empty() ? "" : " ") + std::to_string(v);
    return s;
}

std::string class_text(const G0Class& c)
{
    return "[" + join_weights(c.weights) + "] (" + (c.odd ? "odd" : "even") + ")";
}

json class_json(const G0Class& c) { return {{"weights", weights_to_json(c.weights)}, {"odd", c.odd}}; }

void emit(bool as_json, const json& j, const std::function<void()>& text)
{
    if (as_json) std::cout << j.dump(2) << "\n";
    else text();
}

Rules rules_arg(const std::string& s)
{
    try {
        return parse_rules(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// ---- solve

struct SolveArgs {
    BoardArgs board;
    std::string rules = "normal";
    std::size_t line_limit = 500;
    bool json = false;
};

int cmd_solve(const SolveArgs& a)
{
    Board b = a.board.build();
    Rules r = rules_arg(a.rules);
    auto an = analyze(b, r);
    Weight value = value_from_best(r, b, an.best);
    std::optional<ReducedForm> rf = r == Rules::normal ? reduce_board(b) : std::nullopt;

    service::Session s;
    s.initial = s.current = b;
    s.rules = r;
    s.engine = service::Seat::both;
    service::update_finished(s);
    json first = nullptr;
    bool with_line = b.size() <= a.line_limit;
    if (!b.empty()) {
        auto d = choose_move(b, r, service::pass_allowed(s));
        first = d.pass ? json{{"pass", true}} : json{{"vertex", d.vertex}, {"weight", weight_to_json(b.weight(d.vertex))}};
        if (with_line) service::engine_play(s);
    }
    json line = json::array();
    for (auto& h : s.history) line.push_back(service::history_json(h));

    json j{{"board", describe(b)},
           {"size", b.size()},
           {"rules", rules_name(r)},
           {"value", weight_to_json(value)},
           {"reduced_form", rf ? json(to_text(*rf)) : json(nullptr)},
           {"optimal_moves", an.optimal_moves},
           {"first_move", first},
           {"backend", an.backend},
           {"line", with_line ? line : json(nullptr)},
           {"outcome", with_line ? json(weight_to_json(s.score1)) : json(nullptr)}};
    emit(a.json, j, [&] {
        std::cout << "board: " << describe(b) << "\n"
                  << "rules: " << rules_name(r) << "\n"
                  << "value: " << value.str() << "\n";
        if (rf) std::cout << "reduced form: " << to_text(*rf) << "\n";
        std::cout << "optimal moves: " << ids_text(an.optimal_moves) << "\n";
        if (first.is_null()) std::cout << "first move: none (empty board)\n";
        else if (first.contains("pass")) std::cout << "first move: pass\n";
        else std::cout << "first move: v" << first["vertex"].get<int>() << " (" << first["weight"].get<std::string>() << ")\n";
        std::cout << "backend: " << an.backend << "\n";
        if (!with_line) {
            std::cout << "play line: omitted (more than " << a.line_limit << " vertices; raise --line-limit)\n";
            return;
        }
        std::cout << "play line:\n";
        int n = 0;
        for (auto& h : s.history) {
            std::cout << "  " << ++n << ". P" << h.mover << " ";
            if (h.pass) std::cout << "passes\n";
            else std::cout << "takes v" << h.vertex << " (" << h.weight.str() << ")\n";
        }
        std::cout << "outcome: " << s.score1.str() << "\n";
    });
    return 0;
}

// ---- partition

struct PartitionArgs {
    std::string tes_w, st_w;
    bool json = false;
};

int cmd_partition(const PartitionArgs& a)
{
    if (a.tes_w.empty() == a.st_w.empty()) throw UsageError("give exactly one of --tes or --st");
    bool is_tes = !a.tes_w.empty();
    auto w = parse_weights(is_tes ? a.tes_w : a.st_w);
    auto d = is_tes ? partition_tes(w) : partition_stack(w);
    auto rf = is_tes ? reduce_tes(w) : reduce_stack(w);

    json segs = json::array();
    for (std::size_t i = 0; i < d.segments.size(); ++i) {
        auto& sg = d.segments[i];
        std::vector<Weight> part(w.begin() + long(sg.begin), w.begin() + long(sg.end));
        segs.push_back({{"begin", sg.begin + 1}, {"end", sg.end}, {"weights", weights_to_json(part)}, {"weight", weight_to_json(d.weights[i])}});
    }
    json rem = nullptr;
    if (d.remainder) rem = {{"begin", d.remainder->begin + 1}, {"end", d.remainder->end}, {"x", weight_to_json(d.remainder_weight)}};
    json j{{"flavor", is_tes ? "tes" : "stack"},
           {"segments", segs},
           {"remainder", rem},
           {"reduced_form", to_text(rf)},
           {"value", weight_to_json(value_of_reduced(rf))}};
    emit(a.json, j, [&] {
        std::cout << (is_tes ? "tes" : "stack") << " of " << w.size() << " weights, " << d.segments.size() << " slices\n";
        for (auto& s : segs)
            std::cout << "  a" << s["begin"].get<std::size_t>() << "..a" << s["end"].get<std::size_t>() << "  weight "
                      << s["weight"].get<std::string>() << "\n";
        if (!is_tes) {
            if (d.remainder) std::cout << "remainder: a" << d.remainder->begin + 1 << "..a" << d.remainder->end << "  x = " << d.remainder_weight.str() << "\n";
            else std::cout << "remainder: none\n";
        }
        std::cout << "reduced form: " << to_text(rf) << "\n"
                  << "value: " << value_of_reduced(rf).str() << "\n"
                  << "json: " << j.dump() << "\n";
    });
    return 0;
}

// ---- class algebra

struct PairArgs {
    std::vector<std::string> boards;
    bool json = false;
};

std::vector<Board> parse_boards(const std::vector<std::string>& texts, std::size_t want)
{
    if (want && texts.size() != want) throw UsageError("expected " + std::to_string(want) + " board shorthands");
    if (texts.empty()) throw UsageError("expected at least one board shorthand");
    std::vector<Board> out;
    for (auto& t : texts) out.push_back(parse_board_text(t));
    return out;
}

int cmd_equiv(const PairArgs& a)
{
    auto bs = parse_boards(a.boards, 2);
    auto d = exact_distance(bs[0], bs[1]);
    if (!d.known) throw CapExceeded("equivalence is decided for stack/tes sums and invertible boards within the search caps only");
    bool eq = d.value && d.value->sign() == 0;
    std::string method = !d.value ? "parity" : reduce_board(bs[0]) && reduce_board(bs[1]) ? "reduced-form" : "invertible";
    json j{{"a", describe(bs[0])}, {"b", describe(bs[1])}, {"equivalent", eq}, {"method", method}};
    emit(a.json, j, [&] { std::cout << (eq ? "equivalent" : "not equivalent") << " (" << method << ")\n"; });
    return 0;
}

int cmd_distance(const PairArgs& a)
{
    auto bs = parse_boards(a.boards, 2);
    auto d = exact_distance(bs[0], bs[1]);
    json j{{"a", describe(bs[0])}, {"b", describe(bs[1])}, {"known", d.known}};
    if (d.known) j["distance"] = d.value ? json(weight_to_json(*d.value)) : json("infinite");
    else {
        Weight span = board_stats(bs[0]).abs_total + board_stats(bs[1]).abs_total;
        std::vector<Board> hs{Board()};
        for (int k = -2; k <= 2; ++k) {
            hs.push_back(menu({span * Weight(k)}));
            hs.push_back(menu({span * Weight(k), Weight(0)}));
        }
        j["lower_bound"] = weight_to_json(sampled_distance_lower_bound(bs[0], bs[1], hs));
        j["lower_bound_samples"] = hs.size();
    }
    emit(a.json, j, [&] {
        if (d.known) std::cout << "distance: " << j["distance"].get<std::string>() << "\n";
        else
            std::cout << "distance: unknown (boards are not both invertible)\n"
                      << "lower bound from " << j["lower_bound_samples"].get<std::size_t>() << " sampled summands: " << j["lower_bound"].get<std::string>() << "\n";
    });
    return 0;
}

int cmd_invertible(const PairArgs& a)
{
    auto bs = parse_boards(a.boards, 1);
    bool inv = is_invertible(bs[0]);
    Weight v = value_oracle(bs[0]);
    json j{{"board", describe(bs[0])}, {"invertible", inv}, {"value", weight_to_json(v)}, {"parity", bs[0].size() % 2 ? "odd" : "even"}};
    emit(a.json, j, [&] {
        std::cout << "invertible: " << (inv ? "yes" : "no") << "\n"
                  << "value: " << v.str() << "\n"
                  << "parity: " << j["parity"].get<std::string>() << "\n";
    });
    return 0;
}

int cmd_order(const PairArgs& a)
{
    auto bs = parse_boards(a.boards, 2);
    bool le = class_leq(bs[0], bs[1]), ge = class_leq(bs[1], bs[0]);
    std::string rel = le && ge ? "=" : le ? "<" : ge ? ">" : "incomparable";
    json j{{"a", describe(bs[0])}, {"b", describe(bs[1])}, {"a_le_b", le}, {"b_le_a", ge}, {"relation", rel}};
    emit(a.json, j, [&] {
        if (rel == "incomparable") std::cout << "[a] and [b] are incomparable\n";
        else std::cout << "[a] " << rel << " [b]\n";
    });
    return 0;
}

int cmd_independent(const PairArgs& a)
{
    auto bs = parse_boards(a.boards, 0);
    bool ind = independent(bs);
    json names = json::array();
    for (auto& b : bs) names.push_back(describe(b));
    json j{{"boards", names}, {"independent", ind}};
    emit(a.json, j, [&] { std::cout << (ind ? "independent" : "not independent") << "\n"; });
    return 0;
}

// ---- zero-one games

struct ZeroOneArgs {
    std::string action;
    BoardArgs board;
    bool json = false;
};

int cmd_zeroone(const ZeroOneArgs& a)
{
    Board b = a.board.build();
    require_e_game(b);
    json j{{"board", describe(b)}, {"action", a.action}};
    std::function<void()> text;
    if (a.action == "reduce") {
        auto clusters = one_clusters(b);
        Board r = reduce_e_game(b);
        j["clusters"] = clusters;
        j["reduced"] = board_to_json(r);
        text = [&, r, clusters] {
            std::cout << "1-clusters:";
            for (auto& c : clusters) std::cout << " {" << ids_text(c) << "}";
            std::cout << "\nreduced: " << describe(r) << "\n" << board_to_json(r).dump() << "\n";
        };
    } else if (a.action == "safe") {
        auto ones = available_ones(b);
        j["available_ones"] = ones;
        if (ones.empty()) j["safe_moves"] = safe_moves(b);
        else j["safe_moves"] = nullptr;
        text = [&, ones] {
            if (!ones.empty()) std::cout << "available 1-vertices: " << ids_text(ones) << " (take one; safe moves apply once none is left)\n";
            else std::cout << "safe moves: " << ids_text(j["safe_moves"].get<std::vector<int>>()) << "\n";
        };
    } else if (a.action == "value") {
        if (is_simplistic(b)) {
            auto sc = simplistic_class(b);
            Weight v = class_value(sc.cls);
            j.update({{"simplistic", true},
                      {"value", weight_to_json(v)},
                      {"class", class_json(sc.cls)},
                      {"kind", simplistic_kind_text(sc.kind)},
                      {"detached_ones", sc.detached_ones},
                      {"strategy_move", b.empty() ? json(nullptr) : json(simplistic_strategy_move(b))}});
            text = [&, v, sc] {
                std::cout << "simplistic: yes\nvalue: " << v.str() << "\nclass: " << class_text(sc.cls) << "\n"
                          << "core: " << simplistic_kind_text(sc.kind) << " with " << sc.detached_ones << " detached 1-vertices\n";
                if (!j["strategy_move"].is_null()) std::cout << "strategy move: v" << j["strategy_move"].get<int>() << "\n";
            };
        } else {
            Weight v = value_oracle(b);
            j.update({{"simplistic", false}, {"value", weight_to_json(v)}});
            text = [v] { std::cout << "simplistic: no\nvalue: " << v.str() << " (by search)\n"; };
        }
    } else {
        throw UsageError("zeroone action must be reduce, safe or value");
    }
    emit(a.json, j, text);
    return 0;
}

// ---- pizzas

const char* family_name(ExtremalFamily f)
{
    switch (f) {
    case ExtremalFamily::a: return "A";
    case ExtremalFamily::b1: return "B1";
    case ExtremalFamily::b2: return "B2";
    default: return "none";
    }
}

struct PizzaCheckArgs {
    std::string weights;
    bool json = false;
};

int cmd_pizza_check(const PizzaCheckArgs& a)
{
    auto w = parse_weights(a.weights);
    if (w.empty()) throw UsageError("pizza needs at least one piece");
    Weight margin = four_ninths_margin(w);
    Weight v = solve_cycle(w).value, g = abs_total(w);
    json j{{"pizza", to_text(Shorthand{Kind::cyc, w})},
           {"value", weight_to_json(v)},
           {"abs_total", weight_to_json(g)},
           {"margin", weight_to_json(margin)},
           {"bound_holds", margin.sign() >= 0},
           {"tight", margin.sign() == 0}};
    auto tiling = special_slices(w);
    if (tiling) {
        j["slice_weights"] = weights_to_json(tiling->slice_weights);
        j["family"] = family_name(extremal_family(w));
    } else {
        j["slice_weights"] = nullptr;
        j["family"] = nullptr;
    }
    emit(a.json, j, [&] {
        std::cout << "value: " << v.str() << "\n|g|: " << g.str() << "\n"
                  << "margin val + |g|/9: " << margin.str() << (margin.sign() == 0 ? " (tight)" : margin.sign() > 0 ? " (holds)" : " (VIOLATED)") << "\n";
        if (tiling)
            std::cout << "special slices: " << tiling->slices.size() << " of weights " << join_weights(tiling->slice_weights, " ")
                      << "\nextremal family: " << j["family"].get<std::string>() << "\n";
        else std::cout << "special slices: not tiled\n";
    });
    return margin.sign() >= 0 ? 0 : 3;
}

struct PizzaGenArgs {
    int gk = 0, zeroone = 0, n = 0;
    std::string pi;
    bool no_solve = false, json = false;
};

int cmd_pizza_gen(const PizzaGenArgs& a)
{
    int chosen = (a.gk != 0) + (a.zeroone != 0) + !a.pi.empty();
    if (chosen != 1) throw UsageError("give exactly one of --gk, --zeroone or --pi");
    std::vector<Weight> w;
    if (a.gk) w = gen_gk(a.gk);
    else if (a.zeroone) w = gen_pm1_cycle(a.zeroone);
    else {
        if (a.n < 1) throw UsageError("--pi needs --n with n >= 1");
        w = gen_pi_pizza(parse_weights(a.pi), a.n);
    }
    std::string text = to_text(Shorthand{Kind::cyc, w});
    json j{{"pizza", text}, {"weights", weights_to_json(w)}, {"size", w.size()}};
    std::optional<Weight> v;
    if (!a.no_solve) {
        v = solve_cycle(w).value;
        j["value"] = weight_to_json(*v);
    }
    emit(a.json, j, [&] {
        std::cout << text << "\n";
        if (v) std::cout << "size: " << w.size() << "\nvalue: " << v->str() << "\n";
    });
    return 0;
}

// ---- play

struct PlayArgs {
    BoardArgs board;
    std::string seat = "1", rules = "normal";
    bool json = false;
};

void print_position(const service::Session& s)
{
    std::cout << "board: " << describe(s.current) << "\n"
              << "score P1 " << s.score1.str() << " | P2 " << (-s.score1).str() << "\n"
              << "P" << s.to_move << " to move; legal: " << ids_text(legal_moves(s.current));
    if (service::pass_allowed(s)) std::cout << " (or pass)";
    std::cout << "\n";
}

int cmd_play(const PlayArgs& a)
{
    using namespace service;
    Session s;
    s.initial = s.current = a.board.build();
    s.rules = rules_arg(a.rules);
    auto human = a.seat == "none" ? std::optional<Seat>(Seat::none) : parse_seat(a.seat);
    if (!human) throw UsageError("--seat must be 1, 2, both or none");
    s.engine = *human == Seat::none ? Seat::both : *human == Seat::both ? Seat::none : *human == Seat::player1 ? Seat::player2 : Seat::player1;
    update_finished(s);
    if (s.engine != Seat::none)
        if (auto why = engine_refusal(s.initial, s.rules)) throw CapExceeded(*why);

    bool chatty = !a.json;
    auto say_engine = [&](std::size_t from) {
        if (!chatty) return;
        for (std::size_t i = from; i < s.history.size(); ++i) {
            auto& h = s.history[i];
            std::cout << "engine (P" << h.mover << ") " << (h.pass ? std::string("passes") : "takes v" + std::to_string(h.vertex) + " (" + h.weight.str() + ")") << "\n";
        }
    };
    if (chatty) std::cout << "rules: " << rules_name(s.rules) << "; you play " << seat_name(*human) << "; commands: <vertex>, pass, hint, quit\n";
    std::size_t seen = 0;
    engine_play(s);
    say_engine(seen);
    bool quit = false;
    std::string line;
    while (!s.finished) {
        if (chatty) {
            print_position(s);
            std::cout << "> " << std::flush;
        }
        if (!std::getline(std::cin, line)) {
            quit = true;
            break;
        }
        std::istringstream in(line);
        std::string cmd;
        if (!(in >> cmd)) continue;
        try {
            if (cmd == "quit" || cmd == "q") {
                quit = true;
                break;
            } else if (cmd == "hint") {
                auto an = analyze(s.current, s.rules);
                if (chatty)
                    std::cout << "value for the mover: " << value_from_best(s.rules, s.current, an.best).str() << "; optimal moves: " << ids_text(an.optimal_moves) << "\n";
                continue;
            } else if (cmd == "pass") {
                apply_pass(s, false);
            } else {
                std::size_t used = 0;
                int v = 0;
                try {
                    v = std::stoi(cmd, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != cmd.size() || used == 0) {
                    if (chatty) std::cout << "unknown command '" << cmd << "'\n";
                    continue;
                }
                apply_vertex(s, v, false);
            }
        } catch (const HttpError& e) {
            if (chatty) std::cout << e.what() << "\n";
            continue;
        }
        seen = s.history.size();
        engine_play(s);
        say_engine(seen);
    }
    std::size_t moves = std::count_if(s.history.begin(), s.history.end(), [](auto& h) { return !h.pass; });
    json hist = json::array();
    for (auto& h : s.history) hist.push_back(history_json(h));
    json j{{"finished", s.finished},
           {"quit", quit},
           {"moves", moves},
           {"history", hist},
           {"scores", {{"player1", weight_to_json(s.score1)}, {"player2", weight_to_json(-s.score1)}}},
           {"outcome", s.finished ? json(weight_to_json(s.score1)) : json(nullptr)}};
    emit(a.json, j, [&] {
        if (s.finished) std::cout << "game over after " << moves << " moves; outcome for P1: " << s.score1.str() << "\n";
        else
            std::cout << "game left after " << moves << " moves; score P1 " << s.score1.str() << " | P2 " << (-s.score1).str()
                      << "; remaining: " << describe(s.current) << "\n";
    });
    return 0;
}

// ---- serve

struct ServeArgs {
    std::string host = "127.0.0.1", state_dir, cors = "*";
    int port = 8080;
    bool json = false;
};

int cmd_serve(const ServeArgs& a)
{
    service::SessionStore store(a.state_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(a.state_dir));
    service::HttpServer server(store, a.cors);
    int port = server.bind(a.host, a.port);
    if (port < 0) throw std::runtime_error("cannot bind " + a.host + ":" + std::to_string(a.port));
    if (a.json) std::cout << json{{"host", a.host}, {"port", port}, {"api", "/api/v1"}}.dump() << std::endl;
    else std::cout << "listening on http://" << a.host << ":" << port << "/api/v1 (" << store.list().size() << " stored games)" << std::endl;
    return server.listen() ? 0 : 1;
}

// ---- bench

struct BenchArgs {
    bool partition = false, cycle = false, json = false;
    std::string sizes;
    int reps = 5;
    unsigned seed = 7;
};

std::vector<std::size_t> parse_sizes(const std::string& csv)
{
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double x = 0;
        std::size_t used = 0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || x != std::floor(x)) throw UsageError("bad size '" + item + "'");
        if (x < 1) throw UsageError("sizes must be positive, got '" + item + "'");
        if (!out.empty() && std::size_t(x) <= out.back()) throw UsageError("sizes must be strictly ascending");
        out.push_back(std::size_t(x));
    }
    if (out.empty()) throw UsageError("--sizes needs at least one size");
    return out;
}

int cmd_bench(const BenchArgs& a)
{
    if (a.partition == a.cycle) throw UsageError("give exactly one of --partition or --cycle");
    if (a.reps < 1) throw UsageError("--reps must be positive");
    auto sizes = parse_sizes(a.sizes.empty() ? (a.partition ? "1e5,2e5" : "1e3,2e3") : a.sizes);
    gen::Rng rng(a.seed);
    json rows = json::array();
    double prev = 0;
    std::size_t prev_n = 0;
    for (auto n : sizes) {
        auto w = a.partition ? gen::random_weights(rng, n, -5, 5) : gen::random_weights(rng, n, 0, 9);
        std::vector<double> ts;
        for (int i = 0; i < a.reps; ++i)
            ts.push_back(verify::detail::millis_of([&] {
                if (a.partition) partition_tes(w);
                else solve_cycle(w);
            }));
        std::sort(ts.begin(), ts.end());
        double mean = std::accumulate(ts.begin(), ts.end(), 0.0) / double(ts.size()), med = ts[ts.size() / 2];
        json row{{"size", n}, {"mean_ms", mean}, {"min_ms", ts.front()}, {"median_ms", med}};
        if (prev_n) {
            row["ratio"] = prev > 0 ? med / prev : 0.0;
            row["size_ratio"] = double(n) / double(prev_n);
        }
        rows.push_back(row);
        prev = med;
        prev_n = n;
    }
    json j{{"benchmark", a.partition ? "partition" : "cycle"}, {"reps", a.reps}, {"rows", rows}};
    emit(a.json, j, [&] {
        std::cout << (a.partition ? "partition_tes" : "solve_cycle") << ", " << a.reps << " repetitions\n"
                  << "      size     mean ms      min ms   median ms   ratio\n";
        for (auto& r : rows) {
            std::printf("%10zu %11.3f %11.3f %11.3f", r["size"].get<std::size_t>(), r["mean_ms"].get<double>(), r["min_ms"].get<double>(),
                        r["median_ms"].get<double>());
            if (r.contains("ratio")) std::printf("   %.2f (size x%.2f)", r["ratio"].get<double>(), r["size_ratio"].get<double>());
            std::printf("\n");
        }
    });
    return 0;
}

// ---- verify

struct VerifyArgs {
    std::vector<std::string> only;
    std::string table;
    bool json = false;
};

int cmd_verify(const VerifyArgs& a)
{
    auto table = a.table.empty() ? verify::default_table() : verify::load_table(a.table);
    auto results = verify::run(verify::criteria(table), a.only, a.json ? nullptr : &std::cout);
    if (results.empty()) throw UsageError("no criterion matches the selection");
    if (a.json) std::cout << verify::report_json(results).dump(2) << "\n";
    else {
        auto failed = std::count_if(results.begin(), results.end(), [](auto& r) { return !r.pass; });
        std::cout << results.size() - std::size_t(failed) << "/" << results.size() << " criteria passed\n";
    }
    return verify::all_passed(results) ? 0 : 3;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app("Exact solver and play front-end for weighted graph games", "graphgames");
    app.require_subcommand(1);
    app.fallthrough(false);

    SolveArgs solve;
    auto* s_solve = app.add_subcommand("solve", "value, optimal moves and an optimal play line");
    solve.board.add(s_solve);
    s_solve->add_option("--rules", solve.rules, "normal, p (pass any time), a (pass on even) or s (no double pass)");
    s_solve->add_option("--line-limit", solve.line_limit, "largest board that gets a full play line");
    s_solve->add_flag("--json", solve.json, "machine output");

    PartitionArgs part;
    auto* s_part = app.add_subcommand("partition", "slice decomposition of a two-ended stack or a stack");
    s_part->add_option("--tes", part.tes_w, "tes weights, comma-separated");
    s_part->add_option("--st", part.st_w, "stack weights, comma-separated");
    s_part->add_flag("--json", part.json, "machine output");

    PairArgs equiv, dist, inv, order, indep;
    auto pair_cmd = [&](const char* name, const char* help, PairArgs& args, const char* what) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("boards", args.boards, what)->required();
        sub->add_flag("--json", args.json, "machine output");
        return sub;
    };
    auto* s_equiv = pair_cmd("equiv", "whether two boards are equivalent", equiv, "two board shorthands");
    auto* s_dist = pair_cmd("distance", "distance between the classes of two boards", dist, "two board shorthands");
    auto* s_inv = pair_cmd("invertible", "whether a board is invertible", inv, "one board shorthand");
    auto* s_order = pair_cmd("order", "order relation between two invertible boards", order, "two board shorthands");
    auto* s_indep = pair_cmd("independent", "whether invertible boards are independent", indep, "board shorthands");

    ZeroOneArgs zo;
    auto* s_zo = app.add_subcommand("zeroone", "0-1 games: reduce, safe or value");
    s_zo->add_option("action", zo.action, "reduce, safe or value")->required()->check(CLI::IsMember({"reduce", "safe", "value"}));
    zo.board.add(s_zo);
    s_zo->add_flag("--json", zo.json, "machine output");

    auto* s_pizza = app.add_subcommand("pizza", "pizza checks and generators");
    s_pizza->require_subcommand(1);
    PizzaCheckArgs pc;
    auto* s_check = s_pizza->add_subcommand("check-49", "check val >= -|g|/9 and classify extremal pizzas");
    s_check->add_option("weights", pc.weights, "pizza weights, comma-separated and nonnegative")->required();
    s_check->add_flag("--json", pc.json, "machine output");
    PizzaGenArgs pg;
    auto* s_gen = s_pizza->add_subcommand("gen", "generate extremal pizzas");
    s_gen->add_option("--gk", pg.gk, "the g_k family, k >= 2");
    s_gen->add_option("--zeroone", pg.zeroone, "the +-1 cycle with n pieces, n odd >= 3");
    s_gen->add_option("--pi", pg.pi, "piece sizes x_1,...,x_s of a discretized pizza");
    s_gen->add_option("--n", pg.n, "pieces per slice for --pi");
    s_gen->add_flag("--no-solve", pg.no_solve, "print the pizza without its value");
    s_gen->add_flag("--json", pg.json, "machine output");

    PlayArgs play;
    auto* s_play = app.add_subcommand("play", "play against the engine in the terminal");
    play.board.add(s_play);
    s_play->add_option("--seat", play.seat, "your seat: 1, 2, both (hot seat) or none (engine plays itself)");
    s_play->add_option("--rules", play.rules, "normal, p, a or s");
    s_play->add_flag("--json", play.json, "no prompts; print the final summary as JSON");

    ServeArgs serve;
    auto* s_serve = app.add_subcommand("serve", "run the HTTP game service under /api/v1");
    s_serve->add_option("--port", serve.port, "port (0 picks a free one)");
    s_serve->add_option("--host", serve.host, "bind address");
    s_serve->add_option("--state-dir", serve.state_dir, "directory for session snapshots");
    s_serve->add_option("--cors-origin", serve.cors, "Access-Control-Allow-Origin value");
    s_serve->add_flag("--json", serve.json, "announce the bound address as JSON");

    BenchArgs bench;
    auto* s_bench = app.add_subcommand("bench", "timing table for the partition or cycle solver");
    s_bench->add_flag("--partition", bench.partition, "time partition_tes");
    s_bench->add_flag("--cycle", bench.cycle, "time solve_cycle");
    s_bench->add_option("--sizes", bench.sizes, "ascending sizes, e.g. 1e5,2e5");
    s_bench->add_option("--reps", bench.reps, "repetitions per size");
    s_bench->add_option("--seed", bench.seed, "weight generator seed");
    s_bench->add_flag("--json", bench.json, "machine output");

    VerifyArgs ver;
    auto* s_verify = app.add_subcommand("verify", "run the acceptance criteria");
    s_verify->add_option("--only", ver.only, "groups or criterion ids (table, oracle, perf, pizza)")->allow_extra_args(false);
    s_verify->add_option("--table", ver.table, "replace the built-in value table with a JSON file");
    s_verify->add_flag("--json", ver.json, "JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    bool as_json = false;
    for (auto* sub : {s_solve, s_part, s_equiv, s_dist, s_inv, s_order, s_indep, s_zo, s_check, s_gen, s_play, s_serve, s_bench, s_verify})
        if (sub->parsed()) as_json = sub->get_option("--json")->as<bool>();
    auto fail = [&](int code, const std::string& kind, const std::string& msg) {
        std::cerr << kind << ": " << msg << "\n";
        if (as_json) std::cout << json{{"error", msg}, {"exit", code}}.dump() << "\n";
        return code;
    };
    try {
        if (s_solve->parsed()) return cmd_solve(solve);
        if (s_part->parsed()) return cmd_partition(part);
        if (s_equiv->parsed()) return cmd_equiv(equiv);
        if (s_dist->parsed()) return cmd_distance(dist);
        if (s_inv->parsed()) return cmd_invertible(inv);
        if (s_order->parsed()) return cmd_order(order);
        if (s_indep->parsed()) return cmd_independent(indep);
        if (s_zo->parsed()) return cmd_zeroone(zo);
        if (s_check->parsed()) return cmd_pizza_check(pc);
        if (s_gen->parsed()) return cmd_pizza_gen(pg);
        if (s_play->parsed()) return cmd_play(play);
        if (s_serve->parsed()) return cmd_serve(serve);
        if (s_bench->parsed()) return cmd_bench(bench);
        if (s_verify->parsed()) return cmd_verify(ver);
    } catch (const CapExceeded& e) {
        return fail(2, "refused", e.what());
    } catch (const std::exception& e) {
        return fail(1, "error", e.what());
    }
    return 1;
}
