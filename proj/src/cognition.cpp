#include "qualia/cognition.hpp"

#include <algorithm>
#include <cmath>

#include "qualia/errors.hpp"
#include "qualia/textio.hpp"

namespace qualia {

// ---------------------------------------------------------------------------
// KnowledgeGraph
// ---------------------------------------------------------------------------

void KnowledgeGraph::add_node(const std::string& name, std::optional<EmotionTag> affect) {
    if (name.empty()) throw InvalidArgument("graph node name must be non-empty");
    if (has_node(name)) throw InvalidArgument("graph node '" + name + "' declared twice");
    index_[name] = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{name, affect, {}, {}});
}

void KnowledgeGraph::set_relevance(const std::string& name, const std::string& goal_tag,
                                   double value) {
    int idx = index_of(name);
    if (idx < 0) throw InvalidArgument("graph node '" + name + "' is unknown");
    if (value < 0.0 || value > 1.0)
        throw InvalidArgument("relevance must be in [0,1]");
    nodes_[static_cast<size_t>(idx)].relevance[goal_tag] = value;
}

void KnowledgeGraph::add_edge(const std::string& a, const std::string& b, double weight) {
    int ia = index_of(a);
    int ib = index_of(b);
    if (ia < 0) throw InvalidArgument("graph node '" + a + "' is unknown");
    if (ib < 0) throw InvalidArgument("graph node '" + b + "' is unknown");
    if (ia == ib) throw InvalidArgument("self edges are not allowed: " + a);
    if (!(weight > 0.0)) throw InvalidArgument("edge weight must be > 0");
    if (adjacent(a, b)) throw InvalidArgument("edge " + a + " -- " + b + " declared twice");
    nodes_[static_cast<size_t>(ia)].edges.emplace_back(ib, weight);
    nodes_[static_cast<size_t>(ib)].edges.emplace_back(ia, weight);
}

int KnowledgeGraph::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

double KnowledgeGraph::relevance(int index, const std::string& goal_tag) const {
    const auto& rel = node(index).relevance;
    auto it = rel.find(goal_tag);
    return it == rel.end() ? 0.0 : it->second;
}

bool KnowledgeGraph::adjacent(const std::string& a, const std::string& b) const {
    int ia = index_of(a);
    int ib = index_of(b);
    if (ia < 0 || ib < 0) return false;
    for (const auto& [nbr, w] : nodes_[static_cast<size_t>(ia)].edges) {
        if (nbr == ib) return true;
    }
    return false;
}

KnowledgeGraph KnowledgeGraph::parse(std::string_view content) {
    KnowledgeGraph g;
    auto lines = text::split(content, '\n');
    for (size_t ln = 0; ln < lines.size(); ++ln) {
        const int line_no = static_cast<int>(ln + 1);
        std::string line = lines[ln];
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto tokens = text::split_ws(line);
        if (tokens.empty()) continue;

        try {
            if (tokens[0] == "node") {
                if (tokens.size() < 2) throw ParseError("node needs a name", line_no, 1);
                std::optional<EmotionTag> affect;
                std::vector<std::pair<std::string, double>> rels;
                for (size_t i = 2; i < tokens.size(); ++i) {
                    const std::string& t = tokens[i];
                    if (t.rfind("affect=", 0) == 0) {
                        auto tag = emotion_from_name(t.substr(7));
                        if (!tag) throw ParseError("unknown emotion '" + t.substr(7) + "'",
                                                   line_no, 1);
                        affect = tag;
                    } else if (t.rfind("rel:", 0) == 0) {
                        auto eq = t.find('=');
                        if (eq == std::string::npos || eq <= 4)
                            throw ParseError("bad relevance attribute '" + t + "'", line_no, 1);
                        double v = 0.0;
                        if (!text::parse_double(t.substr(eq + 1), v))
                            throw ParseError("bad relevance value in '" + t + "'", line_no, 1);
                        rels.emplace_back(t.substr(4, eq - 4), v);
                    } else {
                        throw ParseError("unknown node attribute '" + t + "'", line_no, 1);
                    }
                }
                g.add_node(tokens[1], affect);
                for (const auto& [tag, v] : rels) g.set_relevance(tokens[1], tag, v);
            } else if (tokens[0] == "edge") {
                if (tokens.size() != 4)
                    throw ParseError("edge syntax is 'edge <a> <b> <weight>'", line_no, 1);
                double w = 0.0;
                if (!text::parse_double(tokens[3], w))
                    throw ParseError("bad edge weight '" + tokens[3] + "'", line_no, 1);
                g.add_edge(tokens[1], tokens[2], w);
            } else {
                throw ParseError("unknown keyword '" + tokens[0] + "'", line_no, 1);
            }
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), line_no, 1);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// BiasedWalker
// ---------------------------------------------------------------------------

BiasedWalker::BiasedWalker(const KnowledgeGraph& graph, WalkBias bias, std::uint64_t seed)
    : graph_(&graph), bias_(std::move(bias)), rng_(seed) {}

double BiasedWalker::bias_factor(int node_index) const {
    const auto& node = graph_->node(node_index);
    double factor = 1.0 + bias_.alpha * graph_->relevance(node_index, bias_.goal_tag);
    if (node.affect) factor += bias_.beta * bias_.emotion[*node.affect];
    return factor;
}

std::vector<double> BiasedWalker::transition_probabilities(const std::string& from) const {
    int idx = graph_->index_of(from);
    if (idx < 0) throw InvalidArgument("walk start '" + from + "' is not in the graph");
    const auto& edges = graph_->node(idx).edges;
    std::vector<double> probs;
    probs.reserve(edges.size());
    double total = 0.0;
    for (const auto& [nbr, w] : edges) {
        double p = w * bias_factor(nbr);
        probs.push_back(p);
        total += p;
    }
    for (double& p : probs) p /= total == 0.0 ? 1.0 : total;
    return probs;
}

double BiasedWalker::uniform01() {
    // Top 53 bits of the engine output; identical on every platform.
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

std::optional<std::string> BiasedWalker::step(const std::string& from) {
    int idx = graph_->index_of(from);
    if (idx < 0) throw InvalidArgument("walk node '" + from + "' is not in the graph");
    const auto& edges = graph_->node(idx).edges;
    if (edges.empty()) return std::nullopt;

    double total = 0.0;
    for (const auto& [nbr, w] : edges) total += w * bias_factor(nbr);
    const double target = uniform01() * total;

    double acc = 0.0;
    for (const auto& [nbr, w] : edges) {
        acc += w * bias_factor(nbr);
        if (target < acc) return graph_->node(nbr).name;
    }
    return graph_->node(edges.back().first).name;  // guards rounding at the top end
}

// ---------------------------------------------------------------------------
// Thoughts
// ---------------------------------------------------------------------------

const char* to_string(ThoughtTrigger trigger) {
    switch (trigger) {
        case ThoughtTrigger::idle: return "idle";
        case ThoughtTrigger::emotion: return "emotion";
        case ThoughtTrigger::goal: return "goal";
    }
    return "?";
}

std::vector<Thought> generate_thoughts(const KnowledgeGraph& graph, const std::string& start,
                                       const std::string& goal_tag, const EmotionVector& emotion,
                                       int n, double alpha, double beta, std::uint64_t seed) {
    if (graph.index_of(start) < 0)
        throw InvalidArgument("thought start '" + start + "' is not in the graph");
    if (n < 1) throw InvalidArgument("generate_thoughts: n must be >= 1");
    if (alpha < 0.0 || beta < 0.0)
        throw InvalidArgument("generate_thoughts: bias strengths must be >= 0");

    BiasedWalker walker(graph, WalkBias{alpha, beta, goal_tag, emotion}, seed);
    Thought thought;
    thought.path.push_back(start);

    double goal_pull = 0.0;
    double emotion_pull = 0.0;
    std::string current = start;
    for (int i = 0; i < n; ++i) {
        auto next = walker.step(current);
        if (!next) break;
        current = *next;
        thought.path.push_back(current);
        int idx = graph.index_of(current);
        goal_pull += alpha * graph.relevance(idx, goal_tag);
        if (graph.node(idx).affect) emotion_pull += beta * emotion[*graph.node(idx).affect];
    }

    constexpr double kIdleEps = 1e-12;
    if (goal_pull < kIdleEps && emotion_pull < kIdleEps) {
        thought.trigger = ThoughtTrigger::idle;
    } else {
        thought.trigger =
            goal_pull >= emotion_pull ? ThoughtTrigger::goal : ThoughtTrigger::emotion;
    }
    return {thought};
}

// ---------------------------------------------------------------------------
// Goals and plans
// ---------------------------------------------------------------------------

const char* to_string(GoalStatus status) {
    switch (status) {
        case GoalStatus::pending: return "pending";
        case GoalStatus::active: return "active";
        case GoalStatus::achieved: return "achieved";
        case GoalStatus::failed: return "failed";
    }
    return "?";
}

Plan plan_goal(Goal& goal, const Means& means, const StateRegistry& registry) {
    if (means.empty()) throw PlanError("goal '" + goal.id + "' has no means");
    Plan plan;
    plan.goal_id = goal.id;
    for (const auto& step : means.steps) {
        PlanStage stage;
        stage.label = step.label;
        stage.action = step.action;
        stage.note = step.note;
        stage.memorable = step.memorable.value_or(step.action.carries(Verb::emote) ||
                                                  step.action.carries(Verb::recall));
        stage.states = registry.derive(step.action);
        plan.stages.push_back(std::move(stage));
    }
    goal.status = GoalStatus::active;
    return plan;
}

std::vector<Goal> revisit_failed(std::vector<Goal> goals, double retry_decay, double floor) {
    for (auto& g : goals) {
        if (g.status != GoalStatus::failed) continue;
        g.status = GoalStatus::pending;
        g.priority = std::max(g.priority * retry_decay, floor);
    }
    return goals;
}

}  // namespace qualia
