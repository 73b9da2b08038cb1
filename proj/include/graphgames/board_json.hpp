#pragma once

#include "shorthand.hpp"

#include <json.hpp>

namespace graphgames {

using json = nlohmann::json;

inline Weight weight_from_json(const json& j)
{
    if (j.is_string()) return Weight::parse(j.get<std::string>());
    if (j.is_number_integer()) return Weight(j.get<long long>());
    if (j.is_number_unsigned()) return Weight::parse(std::to_string(j.get<unsigned long long>()));
    if (j.is_number_float()) return Weight::parse(j.dump());
    throw InvalidBoard("weight must be a string or a number");
}

inline json weight_to_json(const Weight& w) { return w.str(); }

inline json board_to_json(const Board& b)
{
    json vs = json::array(), es = json::array();
    for (auto& v : b.vertices()) vs.push_back({{"id", v.id}, {"weight", weight_to_json(v.weight)}});
    for (auto [a, c] : b.edges()) es.push_back({a, c});
    return {{"vertices", vs}, {"edges", es}, {"available", b.available()}};
}

inline Board board_from_json(const json& j)
{
    try {
        if (!j.is_object() || !j.contains("vertices")) throw InvalidBoard("board JSON needs a 'vertices' array");
        std::vector<Vertex> vs;
        for (auto& v : j.at("vertices")) vs.push_back({v.at("id").get<int>(), weight_from_json(v.at("weight"))});
        std::vector<Edge> es;
        if (j.contains("edges"))
            for (auto& e : j.at("edges")) {
                if (!e.is_array() || e.size() != 2) throw InvalidBoard("edge must be a pair of ids");
                es.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
        std::vector<int> av;
        if (j.contains("available")) av = j.at("available").get<std::vector<int>>();
        return Board(std::move(vs), std::move(es), std::move(av));
    } catch (const json::exception& e) {
        throw InvalidBoard(std::string("malformed board JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        if (dynamic_cast<const InvalidBoard*>(&e)) throw;
        throw InvalidBoard(e.what());
    }
}

inline json weights_to_json(const std::vector<Weight>& w)
{
    json a = json::array();
    for (auto& x : w) a.push_back(weight_to_json(x));
    return a;
}

} // namespace graphgames
