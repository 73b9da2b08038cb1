#include "helpers.hpp"

#include <graphgames/board_json.hpp>
#include <graphgames/engine.hpp>
#include <graphgames/service.hpp>
#include <graphgames/slices.hpp>
#include <graphgames/testing/generators.hpp>
#include <graphgames/verify.hpp>
#include <graphgames/zero_one.hpp>

#include <httplib.h>

#include <gtest/gtest.h>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace graphgames;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
    json js() const { return json::parse(out); }
};

fs::path scratch()
{
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("gg_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// args are passed through the shell verbatim
Run cli(const std::string& args, const std::string& input = "")
{
    auto in = scratch() / "stdin", out = scratch() / "stdout", err = scratch() / "stderr";
    std::ofstream(in) << input;
    std::string cmd = std::string("'") + GRAPHGAMES_CLI + "' " + args + " < '" + in.string() + "' > '" + out.string() + "' 2> '" + err.string() + "'";
    int st = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string q(const std::string& s) { return "'" + s + "'"; }

std::string csv(const std::vector<Weight>& w) { return join_weights(w); }

} // namespace

TEST(CliSolve, ReferenceValues)
{
    auto r = cli("solve --tes 4,3,1,2");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("value: 2\n"), std::string::npos) << r.out;
    r = cli("solve --cyc 2,3,1,2,0");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("value: 2\n"), std::string::npos) << r.out;
    r = cli("solve --menu -1");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("value: -1\n"), std::string::npos) << r.out;
}

TEST(CliSolve, ShorthandAndFlagsConcatenate)
{
    auto r = cli("solve " + q("st(0,1,2)") + " --tes 1,2 --menu=-3 --json");
    ASSERT_EQ(r.code, 0) << r.err;
    Board b = concat({st(W({0, 1, 2})), tes(W({1, 2})), menu(W({-3}))});
    EXPECT_EQ(r.js()["value"], weight_to_json(value_oracle(b)));
    EXPECT_EQ(r.js()["board"], describe(b));
}

TEST(CliSolve, JsonMatchesLibraryOnRandomBoards)
{
    gen::Rng rng(77);
    const Rules all[] = {Rules::normal, Rules::p, Rules::a, Rules::s};
    for (int it = 0; it < 40; ++it) {
        std::string text;
        int parts = gen::uniform(rng, 1, 2);
        for (int k = 0; k < parts; ++k) {
            Shorthand s{gen::random_interval_kind(rng), gen::random_fractions(rng, std::size_t(gen::uniform(rng, 1, 5)), -4, 6)};
            text += (k ? "+" : "") + to_text(s);
        }
        Rules r = all[it % 4];
        Board b = parse_board_text(text);
        auto run = cli("solve " + q(text) + " --rules " + rules_name(r) + " --json");
        ASSERT_EQ(run.code, 0) << text << " " << run.err;
        auto j = run.js();
        auto an = analyze(b, r);
        EXPECT_EQ(j["value"], weight_to_json(value_oracle(b, r))) << text;
        EXPECT_EQ(j["value"], weight_to_json(value_from_best(r, b, an.best))) << text;
        EXPECT_EQ(j["optimal_moves"].get<std::vector<int>>(), an.optimal_moves) << text;
        EXPECT_EQ(j["outcome"], j["value"]) << text;
        if (r == Rules::normal && reduce_board(b)) {
            EXPECT_EQ(j["reduced_form"], to_text(*reduce_board(b))) << text;
        }
    }
}

TEST(CliSolve, LargeBoardsSkipTheLine)
{
    std::vector<Weight> w(3000);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = Weight(long(i % 7) - 3);
    std::ofstream(scratch() / "big.csv") << csv(w);
    auto r = cli("solve --tes \"$(cat '" + (scratch() / "big.csv").string() + "')\" --json");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.js()["value"], weight_to_json(value_of_reduced(reduce_tes(w))));
    EXPECT_TRUE(r.js()["line"].is_null());
}

TEST(CliPartition, JsonMatchesLibrary)
{
    gen::Rng rng(5);
    for (int it = 0; it < 30; ++it) {
        auto w = gen::random_weights(rng, std::size_t(gen::uniform(rng, 1, 12)), -4, 6);
        bool tes_flavor = it % 2 == 0;
        auto r = cli(std::string("partition ") + (tes_flavor ? "--tes " : "--st ") + q(csv(w)) + " --json");
        ASSERT_EQ(r.code, 0) << r.err;
        auto j = r.js();
        auto d = tes_flavor ? partition_tes(w) : partition_stack(w);
        ASSERT_EQ(j["segments"].size(), d.segments.size());
        for (std::size_t i = 0; i < d.segments.size(); ++i) {
            EXPECT_EQ(j["segments"][i]["begin"].get<std::size_t>(), d.segments[i].begin + 1);
            EXPECT_EQ(j["segments"][i]["end"].get<std::size_t>(), d.segments[i].end);
            EXPECT_EQ(j["segments"][i]["weight"], weight_to_json(d.weights[i]));
        }
        EXPECT_EQ(j["remainder"].is_null(), !d.remainder.has_value());
        if (d.remainder) {
            EXPECT_EQ(j["remainder"]["x"], weight_to_json(d.remainder_weight));
        }
    }
}

TEST(CliPartition, TextCarriesAJsonBlock)
{
    auto r = cli("partition --tes 4,3,1,2");
    ASSERT_EQ(r.code, 0);
    auto at = r.out.find("json: ");
    ASSERT_NE(at, std::string::npos);
    auto j = json::parse(r.out.substr(at + 6));
    EXPECT_EQ(j["value"], "2");
}

TEST(CliWeights, IntegersDecimalsAndFractions)
{
    auto r = cli("solve --menu 0.5,1/3,2 --json");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.js()["value"], weight_to_json(value_oracle(menu({R("1/2"), R("1/3"), R("2")}))));
    EXPECT_EQ(r.js()["value"], "11/6");
}

TEST(CliAlgebra, MatchesLibrary)
{
    auto j = cli("equiv " + q("tes(1,2)") + " " + q("<2,1>") + " --json").js();
    EXPECT_TRUE(j["equivalent"].get<bool>());
    j = cli("equiv " + q("cyc(1,1)") + " " + q("<0>") + " --json").js();
    EXPECT_FALSE(j["equivalent"].get<bool>());

    j = cli("distance " + q("<1>") + " " + q("<3>") + " --json").js();
    EXPECT_EQ(j["distance"], "2");
    j = cli("distance " + q("<1>") + " " + q("<1,2>") + " --json").js();
    EXPECT_EQ(j["distance"], "infinite");

    Board c = cyc(W({1, 2, 3}));
    j = cli("invertible " + q("cyc(1,2,3)") + " --json").js();
    EXPECT_EQ(j["invertible"].get<bool>(), is_invertible(c));
    EXPECT_EQ(j["value"], weight_to_json(value_oracle(c)));

    j = cli("order " + q("<1>") + " " + q("<3>") + " --json").js();
    EXPECT_EQ(j["a_le_b"].get<bool>(), class_leq(menu(W({1})), menu(W({3}))));
    EXPECT_EQ(j["relation"], "<");

    j = cli("independent " + q("<1>") + " " + q("<2,5>") + " --json").js();
    EXPECT_EQ(j["independent"].get<bool>(), independent({menu(W({1})), menu(W({2, 5}))}));
}

TEST(CliAlgebra, UnknownDistanceReportsALabeledLowerBound)
{
    // path(1,0,1) is not invertible, so only a sampled bound is available
    auto r = cli("distance " + q("path(1,0,1)") + " " + q("<1,0,0>") + " --json");
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.js();
    EXPECT_FALSE(j["known"].get<bool>());
    EXPECT_FALSE(j.contains("distance"));
    EXPECT_TRUE(j.contains("lower_bound"));
}

TEST(CliZeroOne, FixturesOverBoardJson)
{
    auto file = scratch() / "g1.json";
    std::ofstream(file) << board_to_json(fixtures::g1()).dump();
    auto j = cli("zeroone safe --board-json " + q(file.string()) + " --json").js();
    EXPECT_EQ(j["safe_moves"].get<std::vector<int>>(), safe_moves(fixtures::g1()));

    Board b = concat(tes(W({0, 1, 0})), tes(W({1, 0})));
    std::ofstream(file) << board_to_json(b).dump();
    j = cli("zeroone value --board-json " + q(file.string()) + " --json").js();
    EXPECT_TRUE(j["simplistic"].get<bool>());
    EXPECT_EQ(j["value"], weight_to_json(simplistic_value(b)));
    EXPECT_EQ(j["value"], weight_to_json(value_oracle(b)));

    j = cli("zeroone reduce --tes 1,0,1,1 --json").js();
    EXPECT_EQ(board_from_json(j["reduced"]), reduce_e_game(tes(W({1, 0, 1, 1}))));

    auto r = cli("zeroone value --tes 2,0");
    EXPECT_EQ(r.code, 1);
}

TEST(CliPizza, CheckAndGenerate)
{
    auto j = cli("pizza check-49 0,1,0,1,0,0,1,0,2,0,0,2,0,2,0 --json").js();
    EXPECT_EQ(j["value"], "-1");
    EXPECT_EQ(j["margin"], "0");
    EXPECT_EQ(j["family"], "A");

    j = cli("pizza gen --gk 4 --json").js();
    EXPECT_EQ(j["value"], "-3");
    EXPECT_EQ(j["weights"], weights_to_json(gen_gk(4)));
    j = cli("pizza gen --zeroone 21 --json").js();
    EXPECT_EQ(j["value"], "-3");
    j = cli("pizza gen --pi 2,3,4 --n 2 --json").js();
    EXPECT_EQ(j["weights"], weights_to_json(gen_pi_pizza(W({2, 3, 4}), 2)));

    EXPECT_EQ(cli("pizza gen --gk 1").code, 1);
    EXPECT_EQ(cli("pizza gen --gk 2 --zeroone 21").code, 1);
}

TEST(CliPlay, AutoplayOutcomeEqualsValue)
{
    for (std::string text : {"cyc(0,1,0,2)", "tes(4,3,1,2)", "path(3,-1,2)+<1>", "st(1,2)"})
        for (std::string rules : {"normal", "p", "s"}) {
            auto r = cli("play " + q(text) + " --seat none --rules " + rules + " --json");
            ASSERT_EQ(r.code, 0) << r.err;
            auto j = r.js();
            EXPECT_TRUE(j["finished"].get<bool>());
            EXPECT_EQ(j["outcome"], weight_to_json(value_oracle(parse_board_text(text), parse_rules(rules)))) << text << " " << rules;
        }
}

TEST(CliPlay, GreedyHumanReplayMatchesSession)
{
    // human takes the heaviest legal piece each turn; the engine holds seat 2
    Board b = cyc(W({0, 1, 0, 2}));
    service::Session s;
    s.initial = s.current = b;
    s.engine = service::Seat::player2;
    std::string script;
    while (!s.finished) {
        auto moves = legal_moves(s.current);
        int v = *std::max_element(moves.begin(), moves.end(), [&](int x, int y) { return s.current.weight(x) < s.current.weight(y); });
        script += std::to_string(v) + "\n";
        service::apply_vertex(s, v, false);
        service::engine_play(s);
    }
    auto r = cli("play " + q("cyc(0,1,0,2)") + " --seat 1 --json", script);
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.js();
    EXPECT_EQ(j["outcome"], weight_to_json(s.score1));
    EXPECT_LE(s.score1, value_oracle(b));
}

TEST(CliPlay, QuitPrintsSummary)
{
    auto r = cli("play " + q("tes(4,3,1,2)") + " --seat 1", "1\nquit\n");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("game left after 2 moves"), std::string::npos) << r.out;
    r = cli("play " + q("tes(4,3,1,2)") + " --seat 1 --json", "x\n7\n");
    auto j = r.js();
    EXPECT_TRUE(j["quit"].get<bool>());
    EXPECT_FALSE(j["finished"].get<bool>());
    EXPECT_EQ(j["moves"], 0);
}

TEST(CliBench, TableAndRejections)
{
    auto r = cli("bench --partition --sizes 1e5,2e5 --json");
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.js();
    ASSERT_EQ(j["rows"].size(), 2u);
    EXPECT_EQ(j["rows"][1]["size"], 200000);
    EXPECT_LE(j["rows"][1]["ratio"].get<double>(), 3.0);

    EXPECT_EQ(cli("bench --partition --sizes 0").code, 1);
    EXPECT_EQ(cli("bench --partition --sizes 200,100").code, 1);
    EXPECT_EQ(cli("bench --sizes 100").code, 1);
}

TEST(CliVerify, OnlyPizzaRunsTheSubset)
{
    auto r = cli("verify --only pizza");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("PASS pizza.extremal-accepts"), std::string::npos);
    EXPECT_NE(r.out.find("2/2 criteria passed"), std::string::npos);
    EXPECT_EQ(r.out.find("table."), std::string::npos);
}

TEST(CliVerify, CorruptedTableNamesTheFailure)
{
    auto t = verify::default_table();
    auto it = std::find_if(t.begin(), t.end(), [](auto& e) { return e.criterion == "table.septet"; });
    ASSERT_NE(it, t.end());
    it->expected = "12345";
    auto file = scratch() / "table.json";
    std::ofstream(file) << verify::table_json(t).dump();
    auto r = cli("verify --only table --table " + q(file.string()));
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("FAIL table.septet"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("PASS table.tes-examples"), std::string::npos);

    auto js = cli("verify --only table.septet --table " + q(file.string()) + " --json");
    EXPECT_EQ(js.code, 3);
    EXPECT_FALSE(js.js()["passed"].get<bool>());
}

TEST(CliExitCodes, UsageRefusalAndSuccess)
{
    EXPECT_EQ(cli("").code, 1);
    EXPECT_EQ(cli("nonsense").code, 1);
    EXPECT_EQ(cli("solve").code, 1);
    EXPECT_EQ(cli("solve --tes 1,x").code, 1);
    EXPECT_EQ(cli("solve --tes 1 --rules q").code, 1);
    EXPECT_EQ(cli("order " + q("st(0,1)") + " " + q("<1>")).code, 1);
    EXPECT_EQ(cli("verify --only nothing-matches").code, 1);

    std::string big = "cyc(1,2,3)+cyc(1,2,3)+cyc(1,2,3)+cyc(1,2,3)+path(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25)";
    auto r = cli("solve " + q(big) + " --json");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.js()["exit"], 2);
    EXPECT_NE(r.err.find("refused"), std::string::npos);

    EXPECT_EQ(cli("solve --menu 1").code, 0);
    EXPECT_EQ(cli("--help").code, 0);
}

TEST(CliHelp, DocumentedFlagsRoundTrip)
{
    std::map<std::string, std::vector<std::string>> flags{
        {"solve", {"--st", "--tes", "--path", "--cyc", "--menu", "--concat", "--board-json", "--rules", "--line-limit", "--json"}},
        {"partition", {"--tes", "--st", "--json"}},
        {"equiv", {"--json"}},
        {"distance", {"--json"}},
        {"invertible", {"--json"}},
        {"order", {"--json"}},
        {"independent", {"--json"}},
        {"zeroone", {"--board-json", "--tes", "--json"}},
        {"pizza check-49", {"--json"}},
        {"pizza gen", {"--gk", "--zeroone", "--pi", "--n", "--no-solve", "--json"}},
        {"play", {"--seat", "--rules", "--json"}},
        {"serve", {"--port", "--host", "--state-dir", "--cors-origin", "--json"}},
        {"bench", {"--partition", "--cycle", "--sizes", "--reps", "--seed", "--json"}},
        {"verify", {"--only", "--table", "--json"}},
    };
    auto top = cli("--help");
    for (auto& [cmd, fs] : flags) {
        EXPECT_NE(top.out.find(cmd.substr(0, cmd.find(' '))), std::string::npos) << cmd;
        auto r = cli(cmd + " --help");
        EXPECT_EQ(r.code, 0) << cmd;
        for (auto& f : fs) EXPECT_NE(r.out.find(f), std::string::npos) << cmd << " " << f;
    }
}

TEST(CliServe, ServesTheApi)
{
    int fd[2];
    ASSERT_EQ(::pipe(fd), 0);
    auto dir = scratch() / "sessions";
    pid_t pid = ::fork();
    ASSERT_GE(pid, 0);
    if (pid == 0) {
        ::dup2(fd[1], 1);
        ::close(fd[0]);
        ::execl(GRAPHGAMES_CLI, GRAPHGAMES_CLI, "serve", "--port", "0", "--json", "--state-dir", dir.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }
    ::close(fd[1]);
    std::string first;
    char c;
    while (::read(fd[0], &c, 1) == 1 && c != '\n') first += c;
    ::close(fd[0]);
    int port = json::parse(first)["port"].get<int>();
    httplib::Client client("127.0.0.1", port);
    auto health = client.Get("/api/v1/health");
    ASSERT_TRUE(health);
    EXPECT_EQ(health->status, 200);
    auto made = client.Post("/api/v1/games", R"j({"shorthand":"cyc(0,1,0,2)","human_seat":"player1"})j", "application/json");
    ASSERT_TRUE(made);
    EXPECT_EQ(made->status, 201);
    EXPECT_TRUE(fs::exists(dir / "g1.json"));
    ::kill(pid, SIGTERM);
    ::waitpid(pid, nullptr, 0);
}
