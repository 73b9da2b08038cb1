#pragma once

#include <graphgames/shorthand.hpp>

#include <initializer_list>
#include <string>
#include <vector>

inline std::vector<graphgames::Weight> W(std::initializer_list<long long> xs)
{
    std::vector<graphgames::Weight> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

inline graphgames::Weight R(const std::string& s) { return graphgames::Weight::parse(s); }

inline graphgames::Board B(const std::string& text) { return graphgames::parse_board_text(text); }
