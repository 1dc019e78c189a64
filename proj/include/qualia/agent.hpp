#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qualia/affect.hpp"
#include "qualia/cognition.hpp"
#include "qualia/config.hpp"
#include "qualia/memory.hpp"
#include "qualia/perception.hpp"
#include "qualia/states.hpp"

namespace qualia {

// ---------------------------------------------------------------------------
// Injected events
// ---------------------------------------------------------------------------

struct StimulusEvent {
    EmotionVector stimulus;
    bool operator==(const StimulusEvent&) const = default;
};

struct InstinctEvent {
    InstinctKind kind;
    double level;  // absolute level, [0,1]
    bool operator==(const InstinctEvent&) const = default;
};

struct PerceptEvent {
    Modality modality;
    std::string label;
    double confidence;
    bool operator==(const PerceptEvent&) const = default;
};

enum class TerminalKind { success, failure };

const char* to_string(TerminalKind kind);

// Everything a scenario can attach to one plan stage. Instinct injections land
// before the challenge check of the cycle that first attempts the stage; the
// rest applies only when the stage actually executes.
struct StageEvents {
    std::vector<InstinctEvent> instincts;
    std::vector<StimulusEvent> stimuli;
    std::vector<PerceptEvent> percepts;
    std::optional<TerminalKind> terminal;
    bool halt = false;
};

// ---------------------------------------------------------------------------
// Outputs
// ---------------------------------------------------------------------------

enum class ExpressionKind { action, gesture, emotion };

const char* to_string(ExpressionKind kind);

struct Expression {
    ExpressionKind kind;
    ExpressionMode mode;
    std::string payload;
    int tick;
};

enum class GoalResult { success, failure };

const char* to_string(GoalResult result);

struct Outcome {
    std::string goal_id;
    GoalResult result;
    std::vector<TraceStep> trace;  // steps emitted while running this goal
};

struct CycleOutput {
    TraceStep step;
    bool stage_consumed = false;
    std::vector<Expression> expressions;
};

struct GoalRunResult {
    std::optional<Outcome> outcome;  // empty when a halt stopped the goal mid-run
    std::vector<Expression> expressions;
};

// ---------------------------------------------------------------------------
// Agent
// ---------------------------------------------------------------------------

// The root scheduler: owns emotion, instinct, memory and goal state, executes
// plans one cycle at a time, preempts on challenges and journals everything a
// report needs. One logical actor; no concurrent mutation.
class Agent {
public:
    // Throws ConfigError when the thought start node is missing from the graph.
    Agent(EngineParams params, KnowledgeGraph graph, StateRegistry registry,
          std::uint64_t seed);

    // One scheduler cycle. Instinct injections from `events` land first, then
    // instincts tick and the challenge check runs. A challenge preempts:
    // its nominated state is emitted and the stage stays pending. Otherwise the
    // stage executes: states derive from the rule table, stage stimuli apply,
    // percepts fuse into the note, memory is written when memorable.
    // Throws LifecycleError on a dead agent.
    CycleOutput cycle(const PlanStage* stage, const StageEvents& events);

    // Plans the goal and cycles it to completion or a scripted terminal. Both
    // ends of the run emit at least one expression and exactly one outcome
    // memory write. Empty means short-circuits to a failure outcome.
    GoalRunResult run_goal(Goal goal, const Means& means,
                           const std::map<std::string, StageEvents>& events_by_label);

    // Post-goal phase: generates thoughts biased by the current emotion and the
    // most recent goal tag, then re-queues failed goals at reduced priority.
    std::vector<Thought> post_goal_phase();

    // State accessors ------------------------------------------------------
    const EmotionVector& emotion() const { return emotion_; }
    const std::vector<InstinctSignal>& instincts() const { return instincts_; }
    const MemoryStores& stores() const { return stores_; }
    const KnowledgeGraph& graph() const { return graph_; }
    const StateRegistry& registry() const { return registry_; }
    const std::vector<Goal>& goals() const { return goals_; }
    const EngineParams& params() const { return params_; }
    int tick() const { return tick_; }
    std::uint64_t seed() const { return seed_; }
    bool alive() const { return alive_; }
    void halt() { alive_ = false; }
    bool has_active_plan() const { return active_plan_.has_value(); }

    // Run journals ----------------------------------------------------------
    const std::vector<TraceStep>& trace() const { return trace_; }
    const std::vector<Expression>& expressions() const { return expressions_; }
    const std::vector<MemoryRecord>& memory_journal() const { return memory_journal_; }
    const std::vector<Thought>& thoughts() const { return thoughts_; }
    const std::vector<Outcome>& outcomes() const { return outcomes_; }

private:
    TraceStep make_step(const std::string& goal_id, const std::string& label,
                        const ActionDescriptor& action, StateSeq states, std::string note,
                        bool is_challenge);
    MemoryRecord remember(const std::string& event, const StateSeq& states, MemoryOrigin origin);
    Expression express(ExpressionKind kind, std::string payload);
    void finish_goal(Goal& goal, GoalResult result, const StateSeq& last_states,
                     std::vector<Expression>& out);
    std::string dominant_feeling() const;
    Thought think(const std::string& goal_tag);

    EngineParams params_;
    KnowledgeGraph graph_;
    StateRegistry registry_;

    EmotionVector emotion_;
    std::vector<InstinctSignal> instincts_;
    MemoryStores stores_;
    std::vector<Goal> goals_;
    std::optional<Plan> active_plan_;
    int tick_ = 0;
    std::uint64_t seed_ = 0;
    std::mt19937_64 rng_;  // consumed by thought generation only
    bool alive_ = true;

    int next_step_index_ = 1;
    std::string last_goal_tag_;
    std::vector<TraceStep> trace_;
    std::vector<Expression> expressions_;
    std::vector<MemoryRecord> memory_journal_;
    std::vector<Thought> thoughts_;
    std::vector<Outcome> outcomes_;
};

// Builds an agent after validating config against the graph (init_agent).
Agent init_agent(const Config& config, const KnowledgeGraph& graph,
                 const StateRegistry& registry, std::uint64_t seed);

}  // namespace qualia
