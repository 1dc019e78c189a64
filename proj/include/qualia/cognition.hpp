#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qualia/affect.hpp"
#include "qualia/states.hpp"

namespace qualia {

// ---------------------------------------------------------------------------
// Knowledge graph
// ---------------------------------------------------------------------------

// Weighted undirected concept graph. Nodes may carry a goal-tag relevance map
// and an optional link to an emotion component; both feed the walk bias.
class KnowledgeGraph {
public:
    struct Node {
        std::string name;
        std::optional<EmotionTag> affect;
        std::map<std::string, double> relevance;  // goal tag -> [0,1]
        std::vector<std::pair<int, double>> edges;  // (neighbor index, weight), insertion order
    };

    void add_node(const std::string& name, std::optional<EmotionTag> affect = std::nullopt);
    void set_relevance(const std::string& name, const std::string& goal_tag, double value);
    void add_edge(const std::string& a, const std::string& b, double weight);

    bool has_node(const std::string& name) const { return index_.count(name) > 0; }
    int index_of(const std::string& name) const;  // -1 when absent
    size_t size() const { return nodes_.size(); }
    const Node& node(int index) const { return nodes_.at(static_cast<size_t>(index)); }
    const std::vector<Node>& nodes() const { return nodes_; }

    double relevance(int index, const std::string& goal_tag) const;
    bool adjacent(const std::string& a, const std::string& b) const;

    // Line format: `node <id> [affect=<emotion>] [rel:<tag>=<v>]...` and
    // `edge <a> <b> <weight>`. Throws ParseError.
    static KnowledgeGraph parse(std::string_view content);

private:
    std::vector<Node> nodes_;
    std::map<std::string, int> index_;
};

// ---------------------------------------------------------------------------
// Thought generation (biased random walk)
// ---------------------------------------------------------------------------

struct WalkBias {
    double alpha = 1.0;    // goal-relevance bias strength
    double beta = 1.0;     // emotion bias strength
    std::string goal_tag;
    EmotionVector emotion;
};

// Seeded sampler over the graph. The transition law is
//   P(v|u) proportional to w(u,v) * (1 + alpha*rel(v,tag) + beta*e[affect(v)]).
class BiasedWalker {
public:
    BiasedWalker(const KnowledgeGraph& graph, WalkBias bias, std::uint64_t seed);

    // Normalized next-node distribution from `from`, in adjacency order.
    // Throws InvalidArgument for unknown nodes; empty for isolated nodes.
    std::vector<double> transition_probabilities(const std::string& from) const;

    // One sampled step; nullopt when `from` has no neighbors.
    std::optional<std::string> step(const std::string& from);

    double bias_factor(int node_index) const;

private:
    double uniform01();

    const KnowledgeGraph* graph_;
    WalkBias bias_;
    std::mt19937_64 rng_;
};

enum class ThoughtTrigger { idle, emotion, goal };

const char* to_string(ThoughtTrigger trigger);

struct Thought {
    std::vector<std::string> path;  // consecutive entries are graph-adjacent
    ThoughtTrigger trigger = ThoughtTrigger::idle;
};

// One n-step walk from `start`, deterministic in `seed`; returned as a
// single-element list. The trigger reflects whichever bias term dominated.
std::vector<Thought> generate_thoughts(const KnowledgeGraph& graph, const std::string& start,
                                       const std::string& goal_tag, const EmotionVector& emotion,
                                       int n, double alpha, double beta, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Goals, means and plans
// ---------------------------------------------------------------------------

enum class GoalStatus { pending, active, achieved, failed };

const char* to_string(GoalStatus status);

struct Goal {
    std::string id;
    std::string description;
    double priority = 0.5;  // [0,1]
    GoalStatus status = GoalStatus::pending;

    bool operator==(const Goal&) const = default;
};

struct MeansStep {
    std::string label;
    ActionDescriptor action;
    std::string note;
    std::optional<bool> memorable;  // unset -> derived from emote/recall verbs
};

struct Means {
    std::vector<MeansStep> steps;
    bool empty() const { return steps.empty(); }
};

struct PlanStage {
    std::string label;
    ActionDescriptor action;
    std::string note;
    bool memorable = false;
    StateSeq states;
};

struct Plan {
    std::string goal_id;
    std::vector<PlanStage> stages;
    std::size_t next = 0;

    bool done() const { return next >= stages.size(); }
};

// Derives each step's state sequence through the registry and activates the
// goal. Throws PlanError on empty means; UnknownAction surfaces uncovered verbs.
Plan plan_goal(Goal& goal, const Means& means, const StateRegistry& registry);

// Failed goals become pending again at priority * retry_decay (never below
// floor); everything else passes through untouched, order preserved.
std::vector<Goal> revisit_failed(std::vector<Goal> goals, double retry_decay = 0.5,
                                 double floor = 0.05);

}  // namespace qualia
