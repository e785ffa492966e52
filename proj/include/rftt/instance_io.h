#ifndef RFTT_INSTANCE_IO_H
#define RFTT_INSTANCE_IO_H

#include <filesystem>
#include <string>

#include "json.hpp"

#include "rftt/instance.h"

namespace rftt {

// {"name": str, "depot": int, "vertices": [{"id": int, "turnover": int}],
//  "edges": [{"u": int, "v": int, "weight": {"num": int, "den": int}}]}
// Integer weights are written and accepted as bare ints.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::ordered_json instance_to_json(const Instance& instance);

Instance parse_instance(const std::string& text);
std::string dump_instance(const Instance& instance);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

// Shared helpers for the other file formats.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);
std::int64_t json_int(const nlohmann::json& j, const std::string& what);
Rational json_rational(const nlohmann::json& j, const std::string& what);
nlohmann::ordered_json rational_to_json(const Rational& r);

} // namespace rftt

#endif
