#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qualia/cognition.hpp"
#include "qualia/config.hpp"
#include "qualia/scenario.hpp"
#include "qualia/states.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string data_path(const std::string& name) {
    return std::string(QUALIA_DATA_DIR) + "/" + name;
}

inline qualia::StateRegistry default_registry() {
    return qualia::StateRegistry::parse(read_file(data_path("registry.qreg")));
}

inline qualia::KnowledgeGraph default_graph() {
    return qualia::KnowledgeGraph::parse(read_file(data_path("graph.qkg")));
}

inline qualia::Scenario load_scenario(const std::string& name) {
    return qualia::parse_scenario(read_file(data_path(name)));
}

// The published state sequences, in printed order.
inline std::vector<std::vector<int>> scenario1_sequences() {
    return {{2, 6}, {2, 5}, {2, 6},          {2, 6, 5}, {2, 6},
            {2, 5, 8, 10}, {5, 6}, {5, 6, 8, 10}, {2, 5, 6}, {7, 8, 6, 2, 5}};
}

inline std::vector<std::vector<int>> scenario2_sequences() {
    return {{5, 6}, {6, 8, 10, 5}, {6, 8, 10}, {2, 9}, {2, 9, 3},
            {1, 3, 7, 9}, {6, 8}, {5, 6, 8}, {6}, {8}};
}

inline std::vector<std::vector<int>> states_of(const std::vector<qualia::TraceStep>& trace) {
    std::vector<std::vector<int>> out;
    for (const auto& step : trace)
        out.emplace_back(step.states.ids().begin(), step.states.ids().end());
    return out;
}

}  // namespace testutil
