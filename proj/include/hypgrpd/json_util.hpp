#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "base.hpp"

namespace hypgrpd {

// insertion-ordered so reports serialize byte-identically across runs
using json = nlohmann::ordered_json;

inline json rat_to_json(const Rat& r) {
    if (rat_den(r) == 1) {
        BigInt n = rat_num(r);
        if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
            return json(static_cast<long long>(n));
    }
    return json(rat_str(r));
}

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<long long>()));
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_array() && j.size() == 2)
        return Rat(BigInt(j[0].get<long long>()), BigInt(j[1].get<long long>()));
    throw input_error("expected rational (integer, 'p/q' string, or [num,den])");
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error("json parse failure in '" + path + "': " + e.what());
    }
    return j;
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hypgrpd
