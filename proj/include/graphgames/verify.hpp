#pragma once

#include "board_json.hpp"
#include "classes.hpp"
#include "cycles.hpp"
#include "engine.hpp"
#include "slices.hpp"
#include "testing/brute_force.hpp"
#include "testing/generators.hpp"
#include "zero_one.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace graphgames::verify {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    std::string id; // group.name
    std::string title;
    std::function<Outcome()> run;

    std::string group() const { return id.substr(0, id.find('.')); }
};

struct Result {
    std::string id, title;
    bool pass;
    std::string detail;
    double millis;
};

// One expected value; entries sharing a criterion form one acceptance line.
struct TableEntry {
    std::string criterion;
    std::string name;
    std::string board; // shorthand text
    std::string expected;
    std::string rules = "normal";
};

inline std::string seq_text(const char* kind, const std::vector<Weight>& w)
{
    return std::string(kind) + "(" + join_weights(w) + ")";
}

inline std::vector<TableEntry> default_table()
{
    std::vector<TableEntry> t = {
        {"table.tes-examples", "tes(4,3,1,2)", "tes(4,3,1,2)", "2"},
        {"table.tes-examples", "tes(4,3,6,5)", "tes(4,3,6,5)", "2"},
        {"table.tes-examples", "tes(4,3,1,4,7,5)", "tes(4,3,1,4,7,5)", "2"},
        {"table.cycle-examples", "cyc(0,N,2,1,2,1) N=5", "cyc(0,5,2,1,2,1)", "5"},
        {"table.cycle-examples", "cyc(0,3,3,1,2,1)", "cyc(0,3,3,1,2,1)", "2"},
        {"table.tes-cycle-pair", "tes(2,4,1,0,1)", "tes(2,4,1,0,1)", "0"},
        {"table.tes-cycle-pair", "cyc(2,3,1,2,0)", "cyc(2,3,1,2,0)", "2"},
        {"table.negative-pizzas", "15-piece pizza", "cyc(0,1,0,1,0,0,1,0,2,0,0,2,0,2,0)", "-1"},
        {"table.negative-pizzas", "21-piece 0-1 pizza", "cyc(0,1,0,1,0,0,1,0,1,0,1,0,0,1,0,1,0,1,0,1,0)", "-1"},
        {"table.parity-rule", "(3,1,0 x4)", "cyc(3,1,0,1,0,1,0,1,0)", "1"},
        {"table.parity-rule", "(3,1,0 x5)", "cyc(3,1,0,1,0,1,0,1,0,1,0)", "0"},
        {"table.septet", "g", "cyc(0,1,0,1,1,0)", "1"},
        {"table.septet", "h1", "<0,1>", "1"},
        {"table.septet", "h2", "<-1,0>", "1"},
        {"table.septet", "g+h1", "cyc(0,1,0,1,1,0)+<0,1>", "2"},
        {"table.septet", "g+h2", "cyc(0,1,0,1,1,0)+<-1,0>", "2"},
        {"table.septet", "h1+h2", "<0,1>+<-1,0>", "2"},
        {"table.septet", "g+h1+h2", "cyc(0,1,0,1,1,0)+<0,1>+<-1,0>", "1"},
        {"table.non-lattice", "cyc(0,1,0,1,1,0,1,0)", "cyc(0,1,0,1,1,0,1,0)", "2"},
        {"table.non-lattice", "<-1,1>+cyc(0,1,0,1,1,0,1,0)", "<-1,1>+cyc(0,1,0,1,1,0,1,0)", "2"},
        {"table.paths", "path(1,2,3)", "path(1,2,3)", "2"},
        {"table.paths", "path(3,1,2)", "path(3,1,2)", "4"},
        {"table.paths", "path(0,1,0,2)", "path(0,1,0,2)", "3"},
        {"table.paths", "cyc(0,1,0,2)", "cyc(0,1,0,2)", "3"},
        {"table.paths", "path(1,0,1,1,0)", "path(1,0,1,1,0)", "1"},
        {"table.paths", "path(1,2,3,4,5)", "path(1,2,3,4,5)", "3"},
        {"table.paths", "path(0,1,0,2)+<-1,-2>", "path(0,1,0,2)+<-1,-2>", "4"},
        {"table.paths", "path(0,2,0,1)+<-1,-2>", "path(0,2,0,1)+<-1,-2>", "2"},
        {"table.zero-cycles", "cyc(1,2,3,3,2,1)", "cyc(1,2,3,3,2,1)", "0"},
        {"table.zero-cycles", "cyc(1,3,3,2,2,1)", "cyc(1,3,3,2,2,1)", "0"},
        {"table.zero-cycles", "cyc(2,1,2,3,3,2,1,2)", "cyc(2,1,2,3,3,2,1,2)", "0"},
        {"table.zero-cycles", "cyc(1,3,4,4,3,2,2,1)", "cyc(1,3,4,4,3,2,2,1)", "0"},
        {"table.invertibility", "path(0,1,0,1) doubled against <-10>", "path(0,1,0,1)+path(0,1,0,1)+<-10>", "-8"},
    };
    for (int k = 2; k <= 6; ++k)
        t.push_back({"table.gk-family", "g_" + std::to_string(k), seq_text("cyc", gen_gk(k)), std::to_string(-(k - 1))});
    return t;
}

// JSON array of {criterion, name, board, expected, rules?}.
inline std::vector<TableEntry> load_table(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open table " + file.string());
    json j = json::parse(in);
    std::vector<TableEntry> out;
    for (auto& e : j)
        out.push_back({e.at("criterion").get<std::string>(), e.at("name").get<std::string>(), e.at("board").get<std::string>(),
                       e.at("expected").is_string() ? e.at("expected").get<std::string>() : e.at("expected").dump(),
                       e.value("rules", std::string("normal"))});
    return out;
}

inline json table_json(const std::vector<TableEntry>& t)
{
    json a = json::array();
    for (auto& e : t)
        a.push_back({{"criterion", e.criterion}, {"name", e.name}, {"board", e.board}, {"expected", e.expected}, {"rules", e.rules}});
    return a;
}

namespace detail {

// Checks every entry of one criterion with both the oracle and the engine chain.
inline Outcome check_entries(const std::vector<TableEntry>& entries)
{
    Outcome o;
    std::ostringstream bad;
    int n = 0;
    for (auto& e : entries) {
        ++n;
        try {
            Board b = parse_board_text(e.board);
            Rules r = parse_rules(e.rules);
            Weight want = Weight::parse(e.expected);
            Weight oracle = value_oracle(b, r);
            Weight engine = value_from_best(r, b, analyze(b, r, false).best);
            if (oracle != want || engine != want) {
                o.pass = false;
                bad << " [" << e.name << ": expected " << want << ", oracle " << oracle << ", engine " << engine << "]";
            }
        } catch (const std::exception& ex) {
            o.pass = false;
            bad << " [" << e.name << ": " << ex.what() << "]";
        }
    }
    o.detail = o.pass ? std::to_string(n) + " values exact" : "mismatch:" + bad.str();
    return o;
}

template <class F>
double millis_of(F f)
{
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double median_millis(int reps, F f)
{
    std::vector<double> ts;
    for (int i = 0; i < reps; ++i) ts.push_back(millis_of(f));
    std::sort(ts.begin(), ts.end());
    return ts[ts.size() / 2];
}

inline std::string fmt(double x, int prec = 2)
{
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(prec);
    s << x;
    return s.str();
}

// Suite helper: run `count` generated cases, stop at the first failure and describe it.
template <class F>
Outcome suite(int count, F body)
{
    for (int i = 0; i < count; ++i) {
        std::string why = body(i);
        if (!why.empty()) return {false, "case " + std::to_string(i) + ": " + why};
    }
    return {true, std::to_string(count) + " cases"};
}

inline std::vector<Weight> concat_seqs(std::initializer_list<std::vector<Weight>> parts)
{
    std::vector<Weight> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline std::vector<Weight> ws(std::initializer_list<int> xs)
{
    std::vector<Weight> out;
    for (int x : xs) out.emplace_back(x);
    return out;
}

} // namespace detail

inline std::vector<Criterion> criteria(const std::vector<TableEntry>& table = default_table())
{
    using namespace detail;
    std::vector<Criterion> out;
    std::vector<std::string> order;
    for (auto& e : table)
        if (std::find(order.begin(), order.end(), e.criterion) == order.end()) order.push_back(e.criterion);

    auto table_ptr = std::make_shared<std::vector<TableEntry>>(table);
    for (auto& id : order) {
        std::vector<TableEntry> mine;
        for (auto& e : table)
            if (e.criterion == id) mine.push_back(e);
        if (id == "table.invertibility") continue;
        out.push_back({id, "reference values: " + id.substr(id.find('.') + 1), [mine] { return check_entries(mine); }});
    }

    out.push_back({"table.invertibility", "invertibility: path(1,2,3) yes, path(0,1,0,1) no, unbroached cycles yes", [table_ptr] {
                       std::vector<TableEntry> mine;
                       for (auto& e : *table_ptr)
                           if (e.criterion == "table.invertibility") mine.push_back(e);
                       Outcome o = check_entries(mine);
                       if (!is_invertible(path(ws({1, 2, 3})))) return Outcome{false, "path(1,2,3) reported not invertible"};
                       if (is_invertible(path(ws({0, 1, 0, 1})))) return Outcome{false, "path(0,1,0,1) reported invertible"};
                       gen::Rng rng(405);
                       for (int i = 0; i < 20; ++i) {
                           auto a = gen::random_weights(rng, std::size_t(gen::uniform(rng, 1, 10)), -4, 6);
                           if (!is_invertible(cyc(a))) return Outcome{false, "cycle " + join_weights(a) + " reported not invertible"};
                       }
                       if (o.pass) o.detail += "; 2 paths and 20 random cycles classified";
                       return o;
                   }});

    out.push_back({"table.simplistic-classes", "zero-one classes: tes(0,1,0) is <-1>; the four representatives are pairwise apart", [] {
                       auto t = simplistic_class(tes(ws({0, 1, 0})));
                       if (t.kind != SimplisticKind::minus_one || t.cls != canonical_class(ws({-1})))
                           return Outcome{false, "tes(0,1,0) not classified as <-1>"};
                       std::vector<Board> reps{Board(), tes(ws({0, 1, 0})), menu(ws({0})), concat(menu(ws({0})), tes(ws({0, 1, 0})))};
                       std::vector<ClassElement> cls;
                       for (auto& b : reps) cls.push_back({simplistic_class(b).cls, Weight(0)});
                       for (std::size_t i = 0; i < cls.size(); ++i)
                           for (std::size_t j = i + 1; j < cls.size(); ++j) {
                               auto d = class_distance(cls[i], cls[j]);
                               if (d && d->sign() <= 0) return Outcome{false, "representatives " + std::to_string(i) + " and " + std::to_string(j) + " at distance 0"};
                           }
                       return Outcome{true, "4 classes pairwise at positive or infinite distance"};
                   }});

    out.push_back({"table.runtime", "whole value table under 5 s", [table_ptr] {
                       double ms = millis_of([&] { check_entries(*table_ptr); });
                       return Outcome{ms < 5000.0, fmt(ms, 1) + " ms for " + std::to_string(table_ptr->size()) + " entries"};
                   }});

    out.push_back({"oracle.reduction", "reduction solver equals exhaustive search on 1000 stack/tes sums (size <= 12)", [] {
                       gen::Rng rng(1001);
                       return suite(1000, [&](int) -> std::string {
                           std::vector<Part> parts;
                           std::vector<Board> boards;
                           std::size_t total = 0;
                           int k = gen::uniform(rng, 1, 3);
                           for (int i = 0; i < k && total < 12; ++i) {
                               std::size_t n = std::size_t(gen::uniform(rng, 1, int(12 - total)));
                               auto w = i % 2 ? gen::random_fractions(rng, n, -3, 4) : gen::random_weights(rng, n, -3, 6);
                               bool stack = gen::uniform(rng, 0, 1);
                               parts.push_back({stack ? PartKind::st : PartKind::tes, w});
                               boards.push_back(stack ? st(w) : tes(w));
                               total += n;
                           }
                           Board b = concat(boards);
                           Weight fast = value_of_reduced(reduce_concat(parts)), slow = value_exhaustive(b);
                           return fast == slow ? "" : describe(b) + ": reduced " + fast.str() + " vs " + slow.str();
                       });
                   }});

    out.push_back({"oracle.lines", "cycle and unbroached path solvers equal interval DP on 500 instances (n <= 16)", [] {
                       gen::Rng rng(1002);
                       return suite(500, [&](int i) -> std::string {
                           auto a = i % 2 ? gen::random_weights(rng, std::size_t(gen::uniform(rng, 1, 16)), -3, 5)
                                          : gen::random_fractions(rng, std::size_t(gen::uniform(rng, 1, 16)), -2, 3);
                           if (solve_cycle(a).value != value_interval_dp(cyc(a))) return "cyc(" + join_weights(a) + ")";
                           if (solve_unbroached_path(a).value != value_interval_dp(path(a))) return "path(" + join_weights(a) + ")";
                           return "";
                       });
                   }});

    out.push_back({"oracle.plateau", "plateau-restricted search matches the full scan: same value, optimal moves a subset (n <= 17)", [] {
                       gen::Rng rng(1003);
                       return suite(500, [&](int i) -> std::string {
                           auto a = i % 3 ? gen::random_weights(rng, std::size_t(gen::uniform(rng, 1, 17)), -3, 4)
                                          : gen::random_fractions(rng, std::size_t(gen::uniform(rng, 1, 17)), -2, 3);
                           auto agree = [](const LineSolution& f, const LineSolution& full) {
                               return f.value == full.value && std::includes(full.optimal_vertices.begin(), full.optimal_vertices.end(),
                                                                             f.optimal_vertices.begin(), f.optimal_vertices.end());
                           };
                           if (!agree(solve_cycle(a), solve_cycle(a, true))) return "cyc(" + join_weights(a) + ")";
                           if (!agree(solve_unbroached_path(a), solve_unbroached_path(a, true))) return "path(" + join_weights(a) + ")";
                           return "";
                       });
                   }});

    out.push_back({"oracle.partition", "partitions unique and equal to brute-force enumeration (2000 sequences, length <= 11, weights -2..2)", [] {
                       gen::Rng rng(1004);
                       return suite(2000, [&](int) -> std::string {
                           auto a = gen::random_weights(rng, std::size_t(gen::uniform(rng, 0, 11)), -2, 2);
                           auto tp = gen::tes_profiles(a);
                           if (tp.size() != 1 || *tp.begin() != partition_tes(a).weights) return "tes profile of " + join_weights(a);
                           auto sp = gen::stack_profiles(a);
                           auto d = partition_stack(a);
                           if (sp.size() != 1 || sp.begin()->first != d.weights || sp.begin()->second != d.remainder_weight)
                               return "stack profile of " + join_weights(a);
                           return "";
                       });
                   }});

    out.push_back({"oracle.theta-isometry", "class distance equals exhaustive val(g1+g2) on 500 all-available pairs", [] {
                       gen::Rng rng(1005);
                       return suite(500, [&](int) -> std::string {
                           std::size_t n1 = std::size_t(gen::uniform(rng, 0, 10));
                           std::size_t n2 = std::size_t(gen::uniform(rng, 0, 5)) * 2 + n1 % 2;
                           if (n2 > 10) n2 -= 2;
                           auto w1 = gen::random_weights(rng, n1, -4, 4), w2 = gen::random_weights(rng, n2, -4, 4);
                           auto d = class_distance(canonical_class(w1, Weight(0)), canonical_class(w2, Weight(0)));
                           Weight v = value_exhaustive(concat(menu(w1), menu(w2)));
                           return d && *d == v ? "" : "<" + join_weights(w1) + "> vs <" + join_weights(w2) + ">";
                       });
                   }});

    out.push_back({"oracle.variant-rules", "closed s-menu formula on 200 menus; pass-rule orderings on 300 boards (n <= 10)", [] {
                       gen::Rng rng(1006);
                       auto s = suite(200, [&](int) -> std::string {
                           auto w = gen::random_fractions(rng, std::size_t(gen::uniform(rng, 0, 9)), -4, 4);
                           return s_value_menu(w) == value_exhaustive(menu(w), Rules::s) ? "" : "<" + join_weights(w) + ">";
                       });
                       if (!s.pass) return s;
                       return suite(300, [&](int) -> std::string {
                           Board b = gen::random_graph_board(rng, std::size_t(gen::uniform(rng, 0, 10)), -3, 3, 0.3, 0.3);
                           Weight v = value_exhaustive(b), va = value_exhaustive(b, Rules::a);
                           if (b.size() % 2 == 0 ? va < v : va > v) return "a-rules ordering on " + describe(b);
                           if (value_exhaustive(affine(b, Weight(1), Weight(-4)), Rules::p).sign() != 0) return "p-rules on non-positive " + describe(b);
                           return "";
                       });
                   }});

    out.push_back({"oracle.four-ninths", "four-ninths margin nonnegative on 1000 pizzas (n <= 25); min-weight bound on 500 odd cycles", [] {
                       gen::Rng rng(1007);
                       auto m = suite(1000, [&](int) -> std::string {
                           auto a = gen::random_fractions(rng, std::size_t(gen::uniform(rng, 1, 25)), 0, 3);
                           return four_ninths_margin(a).sign() >= 0 ? "" : "pizza " + join_weights(a);
                       });
                       if (!m.pass) return m;
                       return suite(500, [&](int) -> std::string {
                           std::size_t n = std::size_t(2 * gen::uniform(rng, 1, 7) + 1);
                           auto a = gen::random_weights(rng, n, -gen::uniform(rng, 0, 6), 5);
                           Weight g = abs_total(a);
                           if (g.sign() == 0) return "";
                           Weight lo = *std::min_element(a.begin(), a.end());
                           Weight mu = lo.sign() < 0 ? -lo / g : Weight(0);
                           return solve_cycle(a).value >= -mu_bound(mu) * g ? "" : "cycle " + join_weights(a);
                       });
                   }});

    out.push_back({"perf.partition", "partition of n = 100000 small-integer weights under 50 ms", [] {
                       gen::Rng rng(2001);
                       auto a = gen::random_weights(rng, 100000, -5, 5);
                       partition_tes(a);
                       double ms = median_millis(5, [&] { partition_tes(a); });
                       return Outcome{ms < 50.0, "median " + fmt(ms) + " ms"};
                   }});

    out.push_back({"perf.linearity", "partition time ratio 200000 / 100000 at most 3 (5 repetitions)", [] {
                       gen::Rng rng(2002);
                       auto a = gen::random_weights(rng, 100000, -5, 5), b = gen::random_weights(rng, 200000, -5, 5);
                       partition_tes(b);
                       double ta = median_millis(5, [&] { partition_tes(a); });
                       double tb = median_millis(5, [&] { partition_tes(b); });
                       double ratio = tb / ta;
                       return Outcome{ratio <= 3.0, "ratio " + fmt(ratio) + " (" + fmt(ta) + " ms, " + fmt(tb) + " ms)"};
                   }});

    out.push_back({"perf.cycle", "solve_cycle at n = 2000 under 2 s", [] {
                       gen::Rng rng(2003);
                       auto a = gen::random_weights(rng, 2000, 0, 9);
                       double ms = millis_of([&] { solve_cycle(a); });
                       return Outcome{ms < 2000.0, fmt(ms, 1) + " ms"};
                   }});

    out.push_back({"pizza.extremal-accepts", "extremal classifier accepts the 15- and 21-piece pizzas and generated family A/B instances", [] {
                       std::vector<std::vector<Weight>> yes{ws({0, 1, 0, 1, 0, 0, 1, 0, 2, 0, 0, 2, 0, 2, 0}),
                                                            ws({0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0})};
                       gen::Rng rng(3001);
                       auto split = [&](int total) {
                           std::vector<Weight> p;
                           while (total > 0) {
                               int x = gen::uniform(rng, 1, total);
                               p.emplace_back(x);
                               total -= x;
                           }
                           return p;
                       };
                       // family A: sums 2,3,4 with the middle slices balanced
                       for (int i = 0; i < 10; ++i) {
                           auto g = concat_seqs({special_slice(ws({1, 1})), special_slice(split(3)), special_slice(ws({2, 2}))});
                           if (four_ninths_margin(g).sign() == 0) yes.push_back(g);
                       }
                       yes.push_back(concat_seqs({special_slice(ws({1, 1, 1})), special_slice(ws({1, 1})), special_slice(ws({2, 2})),
                                                  special_slice(ws({4, 4})), special_slice(ws({5, 5}))}));
                       yes.push_back(concat_seqs({special_slice(ws({1, 1, 1})), special_slice(ws({1, 1})), special_slice(ws({2, 2})),
                                                  special_slice(ws({5, 5})), special_slice(ws({4, 4}))}));
                       for (auto& g : yes) {
                           if (!is_extremal_special_pizza(g)) return Outcome{false, "rejected " + join_weights(g)};
                           if (four_ninths_margin(g).sign() != 0) return Outcome{false, "nonzero margin on " + join_weights(g)};
                       }
                       return Outcome{true, std::to_string(yes.size()) + " extremal pizzas accepted with zero margin"};
                   }});

    out.push_back({"pizza.extremal-rejects", "extremal classifier rejects perturbed pizzas with positive margin", [] {
                       std::vector<std::vector<Weight>> no{
                           concat_seqs({special_slice(ws({2, 2})), special_slice(ws({1, 4, 1})), special_slice(ws({4, 4}))}),
                           concat_seqs({special_slice(ws({1, 3})), special_slice(ws({1, 1, 1})), special_slice(ws({2, 2}))})};
                       gen::Rng rng(3002);
                       int generated = 0;
                       for (int i = 0; i < 400 && generated < 50; ++i) {
                           std::vector<Weight> g;
                           for (int s : {2, 3, 4}) {
                               std::vector<Weight> p;
                               for (int left = s; left > 0;) {
                                   int x = gen::uniform(rng, 1, left);
                                   p.emplace_back(x);
                                   left -= x;
                               }
                               auto sl = special_slice(p);
                               g.insert(g.end(), sl.begin(), sl.end());
                           }
                           if (four_ninths_margin(g).sign() > 0) {
                               no.push_back(g);
                               ++generated;
                           }
                       }
                       for (auto& g : no) {
                           if (four_ninths_margin(g).sign() <= 0) return Outcome{false, "margin not positive on " + join_weights(g)};
                           if (is_extremal_special_pizza(g)) return Outcome{false, "accepted " + join_weights(g)};
                       }
                       return Outcome{true, std::to_string(no.size()) + " perturbed pizzas rejected"};
                   }});
    return out;
}

inline bool selected(const Criterion& c, const std::vector<std::string>& only)
{
    if (only.empty()) return true;
    for (auto& o : only)
        if (c.id == o || c.group() == o || c.id.rfind(o, 0) == 0) return true;
    return false;
}

inline std::vector<Result> run(const std::vector<Criterion>& cs, const std::vector<std::string>& only = {}, std::ostream* live = nullptr)
{
    std::vector<Result> out;
    for (auto& c : cs) {
        if (!selected(c, only)) continue;
        Outcome o;
        double ms = detail::millis_of([&] {
            try {
                o = c.run();
            } catch (const std::exception& e) {
                o = {false, std::string("exception: ") + e.what()};
            }
        });
        out.push_back({c.id, c.title, o.pass, o.detail, ms});
        if (live) *live << (o.pass ? "PASS " : "FAIL ") << c.id << "  " << c.title << "  (" << o.detail << "; " << detail::fmt(ms, 1) << " ms)" << std::endl;
    }
    return out;
}

inline bool all_passed(const std::vector<Result>& rs)
{
    return std::all_of(rs.begin(), rs.end(), [](const Result& r) { return r.pass; });
}

inline json report_json(const std::vector<Result>& rs)
{
    json a = json::array();
    for (auto& r : rs)
        a.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"millis", r.millis}});
    return {{"passed", all_passed(rs)}, {"criteria", a}};
}

} // namespace graphgames::verify
