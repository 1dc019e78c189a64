#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qualia/agent.hpp"
#include "qualia/cognition.hpp"
#include "qualia/config.hpp"
#include "qualia/states.hpp"

namespace qualia {

// ---------------------------------------------------------------------------
// Scenario model
// ---------------------------------------------------------------------------

struct StageDecl {
    std::string label;
    ActionDescriptor action;
    std::optional<bool> memorable;
    std::string note;

    bool operator==(const StageDecl&) const = default;
};

struct GoalDecl {
    Goal goal;
    std::vector<StageDecl> stages;

    bool operator==(const GoalDecl&) const = default;
};

struct HaltEventTag {
    bool operator==(const HaltEventTag&) const = default;
};

using EventPayload =
    std::variant<PerceptEvent, StimulusEvent, InstinctEvent, TerminalKind, HaltEventTag>;

struct ScenarioEvent {
    std::string goal_id;
    std::string label;
    EventPayload payload;

    bool operator==(const ScenarioEvent&) const = default;
};

struct ExpectDecl {
    std::string goal_id;
    std::string label;
    StateSeq states;

    bool operator==(const ExpectDecl&) const = default;
};

struct Scenario {
    std::string name;
    std::vector<std::pair<std::string, std::string>> config_overrides;
    std::vector<GoalDecl> goals;
    std::vector<ScenarioEvent> events;   // declaration order
    std::vector<ExpectDecl> expects;     // declaration order == trace order
    bool halt_at_end = false;

    bool operator==(const Scenario&) const = default;
};

// Full parse or ParseError at the first offense; stage references from events
// and expect lines are resolved before the scenario is returned.
Scenario parse_scenario(std::string_view content);

// Canonical text form; parse(serialize(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

struct RunReport {
    std::string scenario;
    std::uint64_t seed = 0;
    std::vector<TraceStep> trace;
    std::vector<Expression> expressions;
    std::vector<MemoryRecord> memory_log;  // full write history, eviction-proof
    std::vector<Thought> thoughts;
    std::vector<Outcome> outcomes;
    std::vector<Goal> final_goals;

    std::string to_text() const;
};

// Deterministic in (scenario, seed): builds the agent from base config plus
// scenario overrides, runs each goal with its anchored events, then the
// post-goal phase. Runtime errors carry the stage label they occurred at.
RunReport run_scenario(const Scenario& scenario, std::uint64_t seed,
                       const StateRegistry& registry, const KnowledgeGraph& graph,
                       const Config& base_config);

// ---------------------------------------------------------------------------
// Trace comparison
// ---------------------------------------------------------------------------

struct TraceEntry {
    std::string label;  // "<goal>.<label>"
    StateSeq states;

    bool operator==(const TraceEntry&) const = default;
};

struct TraceMismatch {
    std::string label;
    StateSeq expected;
    StateSeq actual;
};

struct TraceDiff {
    std::vector<TraceMismatch> mismatches;
    int length_delta = 0;  // |actual| - |expected|

    bool empty() const { return mismatches.empty() && length_delta == 0; }
};

// Positional comparison of state sequences; labels are carried for reporting.
TraceDiff diff_trace(std::span<const TraceEntry> actual, std::span<const TraceEntry> expected);

std::vector<TraceEntry> trace_entries(std::span<const TraceStep> trace);
std::vector<TraceEntry> expected_entries(const Scenario& scenario);

// One line of the trace file / report trace section.
std::string trace_line(const TraceStep& step);

// Reads `step ...` lines back into entries (other lines are ignored).
std::vector<TraceEntry> parse_trace_text(std::string_view content);

}  // namespace qualia
