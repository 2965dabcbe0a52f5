#include "lpf/serialization.hpp"

#include <cstdio>
#include <fstream>

#include "lpf/errors.hpp"

namespace lpf {

using nlohmann::json;

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ModelError("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json vector_to_json(std::span<const Complex> v) {
  json a = json::array();
  for (Complex c : v) a.push_back(complex_to_json(c));
  return a;
}

ComplexVector vector_from_json(const json& j) {
  if (!j.is_array()) throw ModelError("complex vector must be an array");
  ComplexVector v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return v;
}

json network_to_json(const Network& net) {
  json edges = json::array();
  for (const Edge& e : net.edges()) edges.push_back({e.from, e.to});
  return {{"nodes", net.num_nodes()}, {"edges", edges}, {"injections", net.injections()}};
}

Network network_from_json(const json& j) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ModelError("edge must be [from, to]");
      edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
    }
    std::vector<double> inj;
    if (j.contains("injections")) inj = j["injections"].get<std::vector<double>>();
    return Network(j.at("nodes").get<std::size_t>(), std::move(edges), std::move(inj));
  } catch (const json::exception& e) {
    throw ModelError(std::string("invalid network description: ") + e.what());
  }
}

json start_set_to_json(const StartSet& s) {
  json reps = json::array();
  for (const auto& r : s.representatives) reps.push_back(vector_to_json(r));
  json edges = json::array();
  for (const Edge& e : s.edges) edges.push_back({e.from, e.to});
  json j;
  j["topology"] = s.topology;
  j["network"] = {{"nodes", s.num_nodes}, {"edges", edges}, {"injections", s.injections}};
  j["b_hat"] = vector_to_json(s.b_hat);
  j["representatives"] = reps;
  j["group_order"] = s.group_order;
  j["bipartite_action"] = s.bipartite_action;
  j["solution_count"] = s.solution_count;
  j["expected_count"] = s.expected_count ? json(*s.expected_count) : json(nullptr);
  j["complete"] = s.complete;
  j["seed"] = s.seed;
  j["dedup_tol"] = s.dedup_tol;
  j["loops"] = s.loops;
  return j;
}

StartSet start_set_from_json(const json& j) {
  try {
    StartSet s;
    s.topology = j.at("topology").get<std::string>();
    const Network net = network_from_json(j.at("network"));
    s.num_nodes = net.num_nodes();
    s.edges = net.edges();
    s.injections = net.injections();
    s.b_hat = vector_from_json(j.at("b_hat"));
    for (const auto& r : j.at("representatives")) s.representatives.push_back(vector_from_json(r));
    s.group_order = j.at("group_order").get<std::size_t>();
    s.bipartite_action = j.at("bipartite_action").get<bool>();
    s.solution_count = j.at("solution_count").get<std::size_t>();
    if (!j.at("expected_count").is_null()) s.expected_count = j["expected_count"].get<std::uint64_t>();
    s.complete = j.at("complete").get<bool>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.dedup_tol = j.at("dedup_tol").get<double>();
    s.loops = j.value("loops", std::size_t{0});
    return s;
  } catch (const json::exception& e) {
    throw ModelError(std::string("invalid start set: ") + e.what());
  }
}

json solution_set_to_json(const SolutionSet& s, const std::string& start_hash) {
  json nontrivial = json::array();
  for (std::size_t i = 0; i < s.nontrivial.size(); ++i) {
    nontrivial.push_back({{"point", vector_to_json(s.nontrivial[i])}, {"real", bool(s.nontrivial_real[i])}});
  }
  json trivial = json::array();
  for (const auto& t : s.trivial) trivial.push_back(vector_to_json(t));
  json j;
  j["nontrivial"] = nontrivial;
  j["trivial"] = trivial;
  j["nontrivial_count"] = s.nontrivial.size();
  j["expected_nontrivial"] = s.expected_nontrivial;
  j["real_nontrivial"] = s.real_nontrivial_count();
  j["real_total"] = s.real_total();
  j["completeness"] = s.completeness();
  j["complete"] = s.complete;
  j["degenerate"] = s.degenerate;
  j["paths_tracked"] = s.paths_tracked;
  j["failed_paths"] = s.failed_paths;
  j["singular_endpoints"] = s.singular_endpoints;
  j["repair_rounds"] = s.repair_rounds;
  j["repair_loops"] = s.repair_loops;
  j["start_set_hash"] = start_hash;
  return j;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string start_set_hash(const StartSet& s) { return fnv1a_hex(start_set_to_json(s).dump()); }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ModelError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace lpf
