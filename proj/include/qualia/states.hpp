#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qualia/affect.hpp"

namespace qualia {

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

// Identifier of one of the ten consciousness states. Construction enforces range.
class StateId {
public:
    static constexpr int kMin = 1;
    static constexpr int kMax = 10;

    explicit StateId(int id);  // throws InvalidState outside 1..10

    int value() const { return id_; }
    static bool valid(int id) { return id >= kMin && id <= kMax; }

    auto operator<=>(const StateId&) const = default;

private:
    int id_;
};

enum class StateLayer { physical, metaphysical };

const char* to_string(StateLayer layer);
std::optional<StateLayer> layer_from_name(std::string_view name);

struct StateDescriptor {
    int id;  // always 1..10 once registered
    std::string name;
    StateLayer layer;
};

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

enum class Verb {
    perceive = 0,
    decide,
    act,
    communicate,
    emote,
    express,
    recall,
    relax,
    think,
    observe,
    wait,
};

const char* to_string(Verb verb);
std::optional<Verb> verb_from_name(std::string_view name);

enum class Modality { vision = 0, audio, touch, other };

const char* to_string(Modality m);
std::optional<Modality> modality_from_name(std::string_view name);

// A scenario action: main verb, optional qualifying verbs, optional channel.
struct ActionDescriptor {
    Verb verb = Verb::act;
    std::set<Verb> modifiers;  // never contains the main verb
    std::optional<Modality> channel;

    bool carries(Verb v) const { return verb == v || modifiers.count(v) > 0; }

    // Canonical rule-table key, e.g. "communicate+act+emote+express".
    std::string key() const;
    // Key plus channel, e.g. "perceive+decide channel=vision".
    std::string to_string() const;

    bool operator==(const ActionDescriptor&) const = default;
};

// Parses "verb[+modifier...]"; throws ParseError (column relative to the token).
ActionDescriptor parse_action(std::string_view token);

// ---------------------------------------------------------------------------
// State sequences and trace steps
// ---------------------------------------------------------------------------

// Ordered, duplicate-free list of state ids. `checked` enforces the invariants;
// `unchecked` exists so trace files can be loaded and then validated.
class StateSeq {
public:
    StateSeq() = default;

    static StateSeq checked(std::vector<int> ids);  // throws InvalidState / InvalidArgument
    static StateSeq unchecked(std::vector<int> ids);

    std::span<const int> ids() const { return ids_; }
    bool empty() const { return ids_.empty(); }
    size_t size() const { return ids_.size(); }
    bool contains(int id) const;

    std::string to_string() const;  // "[2,6]"

    bool operator==(const StateSeq&) const = default;

private:
    std::vector<int> ids_;
};

struct TraceStep {
    int index = 0;  // 1-based position in the run trace
    std::string goal_id;
    std::string label;
    ActionDescriptor action;
    StateSeq states;
    std::string note;
    bool is_challenge = false;
    // Snapshot taken after the step's emotion update, for the trace line.
    ExpressionMode mode = ExpressionMode::voluntary;
    double fear = 0.0;
};

struct ValidationFinding {
    int position;  // 0-based position of the offending step
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;
    bool ok() const { return findings.empty(); }
};

// Structural checks over a trace: duplicate indices, ordering, empty or
// out-of-range state sequences. Findings are reported, never thrown.
ValidationReport validate_trace(std::span<const TraceStep> trace);

// ---------------------------------------------------------------------------
// Registry: state table plus action -> state-sequence rules
// ---------------------------------------------------------------------------

class StateRegistry {
public:
    // Parses the line-oriented registry format:
    //   state <id> <name...> <physical|metaphysical>
    //   rule <verb>[+modifier...] -> <id>,<id>,...
    // All ten states must be declared, names unique. Throws ParseError.
    static StateRegistry parse(std::string_view content);

    const StateDescriptor& resolve(StateId id) const;
    const StateDescriptor& resolve(int id) const;  // throws InvalidState

    // Rule-table lookup; throws UnknownAction when no rule covers the action.
    StateSeq derive(const ActionDescriptor& action) const;
    bool has_rule(const ActionDescriptor& action) const;

    const std::vector<std::pair<std::string, StateSeq>>& rules() const { return rules_; }

private:
    std::array<std::optional<StateDescriptor>, 10> states_;
    std::map<std::string, StateSeq> rule_index_;
    std::vector<std::pair<std::string, StateSeq>> rules_;  // declaration order
};

}  // namespace qualia
