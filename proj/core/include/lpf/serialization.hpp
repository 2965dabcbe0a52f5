#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "lpf/network.hpp"
#include "lpf/solver.hpp"

namespace lpf {

/// Complex numbers are [re, im] pairs.
nlohmann::json complex_to_json(Complex c);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(std::span<const Complex> v);
ComplexVector vector_from_json(const nlohmann::json& j);

/// {"nodes": n, "edges": [[a, b], ...], "injections": [...]}.
nlohmann::json network_to_json(const Network& net);
/// Accepts the layout written by network_to_json. Throws ModelError.
Network network_from_json(const nlohmann::json& j);

nlohmann::json start_set_to_json(const StartSet& s);
StartSet start_set_from_json(const nlohmann::json& j);

nlohmann::json solution_set_to_json(const SolutionSet& s, const std::string& start_hash);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);
/// Hash of the compact serialization of a start set.
std::string start_set_hash(const StartSet& s);

nlohmann::json read_json_file(const std::filesystem::path& path);
/// Writes dump(2) plus a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace lpf
