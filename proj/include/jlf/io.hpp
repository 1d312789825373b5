#pragma once

// Lattice files: {"name": string, "gram": [[int, ...], ...]}.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "jlf/error.hpp"
#include "jlf/lattice.hpp"

namespace jlf {

inline EvenLattice parse_lattice(const std::string& text, const std::string& fallback_name = "")
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Io, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("gram") || !j["gram"].is_array())
        throw Error(ErrorKind::Io, "lattice file needs an object with a \"gram\" array");
    std::string name = fallback_name;
    if (j.contains("name")) {
        if (!j["name"].is_string())
            throw Error(ErrorKind::Io, "\"name\" must be a string");
        name = j["name"].get<std::string>();
    }
    IntMatrix gram;
    for (const auto& row : j["gram"]) {
        if (!row.is_array())
            throw Error(ErrorKind::NotSquare, "every Gram row must be an array");
        std::vector<std::int64_t> r;
        for (const auto& v : row) {
            if (!v.is_number_integer())
                throw Error(ErrorKind::Io, "Gram entries must be integers");
            r.push_back(v.get<std::int64_t>());
        }
        gram.push_back(std::move(r));
    }
    return make_lattice(gram, name);
}

inline EvenLattice load_lattice(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_lattice(buf.str(), path.stem().string());
}

} // namespace jlf
