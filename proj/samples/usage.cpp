// Tour of the library: boards, values, slices, reduced forms, pizzas, 0-1 games, classes, the game service.

#include <graphgames/classes.hpp>
#include <graphgames/cycles.hpp>
#include <graphgames/engine.hpp>
#include <graphgames/reduction.hpp>
#include <graphgames/service.hpp>
#include <graphgames/slices.hpp>
#include <graphgames/zero_one.hpp>

#include <iostream>

using namespace graphgames;

int main()
{
    // Boards from shorthand; '+' places components side by side.
    Board g = parse_board_text("tes(4,3,1,2)+<-1>");
    std::cout << describe(g) << ": value " << value_oracle(g).str() << "\n";

    // Variant rules let a player pass.
    Board s12 = st({1, 2});
    for (Rules r : {Rules::normal, Rules::p, Rules::a, Rules::s})
        std::cout << "st(1,2) under " << rules_name(r) << ": " << value_oracle(s12, r).str() << "\n";

    // Slices of a two-ended stack, then the reduced form and its value.
    std::vector<Weight> a{4, 3, 1, 4, 7, 5};
    auto d = partition_tes(a);
    std::cout << "slices of tes(" << join_weights(a) << "):";
    for (std::size_t i = 0; i < d.segments.size(); ++i)
        std::cout << " [" << d.segments[i].begin + 1 << ".." << d.segments[i].end << "]=" << d.weights[i].str();
    auto rf = reduce_tes(a);
    std::cout << "\nreduced form " << to_text(rf) << ", value " << value_of_reduced(rf).str() << "\n";

    // Engine analysis picks a backend by shape.
    auto an = analyze(cyc({2, 3, 1, 2, 0}));
    std::cout << "cyc(2,3,1,2,0): best " << an.best.str() << " via " << an.backend << ", optimal";
    for (int v : an.optimal_moves) std::cout << " v" << v;
    std::cout << "\n";

    // Pizzas: the 15-piece example sits exactly on the 4/9 bound.
    std::vector<Weight> pizza{0, 1, 0, 1, 0, 0, 1, 0, 2, 0, 0, 2, 0, 2, 0};
    std::cout << "15-piece pizza: value " << solve_cycle(pizza).value.str() << ", margin " << four_ninths_margin(pizza).str()
              << ", extremal " << std::boolalpha << is_extremal_special_pizza(pizza) << "\n";
    std::cout << "g_4: value " << solve_cycle(gen_gk(4)).value.str() << "\n";

    // 0-1 games.
    Board e = fixtures::g1();
    std::cout << "g1 safe moves:";
    for (int v : safe_moves(e)) std::cout << " v" << v;
    Board t = concat(tes({0, 1, 0}), tes({1, 0}));
    auto sc = simplistic_class(t);
    std::cout << "\n" << describe(t) << ": simplistic value " << class_value(sc.cls).str() << "\n";

    // Class algebra.
    Board m1 = menu({1}), m3 = menu({3});
    std::cout << "[<1>] <= [<3>]: " << class_leq(m1, m3) << ", d = " << exact_distance(m1, m3).value->str() << "\n";
    std::cout << "tes(1,2) ~ <2,1>: " << (*reduce_board(tes({1, 2})) == *reduce_board(menu({2, 1}))) << "\n";

    // The HTTP router can be driven in-process.
    service::SessionStore store;
    auto made = service::handle(store, {"POST", "/api/v1/games", R"j({"shorthand":"cyc(0,1,0,2)","human_seat":"player1"})j"});
    std::string id = made.body["game_id"];
    auto moved = service::handle(store, {"POST", "/api/v1/games/" + id + "/moves", R"({"vertex":4})"});
    std::cout << "game " << id << ": engine replied with v" << moved.body["engine_replies"][0]["vertex"].get<int>() << ", score "
              << moved.body["scores"]["player1"].get<std::string>() << "\n";
}
