#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qualia/affect.hpp"
#include "qualia/memory.hpp"

namespace qualia {

// Ordered key=value store; later entries override earlier ones.
class Config {
public:
    void set(std::string key, std::string value);
    void merge(const Config& overrides);

    // One `key=value` per line, `#` comments. Throws ParseError.
    static Config parse(std::string_view content);

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

struct InstinctConfig {
    double rate;
    double threshold;
    double weight;
    double initial;
};

// Every tunable of the engine, with its default value.
struct EngineParams {
    EmotionParams emotion;                       // emotion.decay
    double challenge_fear_gain = 1.0;            // emotion.challenge_gain
    ExpressionParams expression;                 // expression.base / expression.k
    InstinctConfig pain{0.0, 0.7, 1.0, 0.0};     // instinct.pain.*
    InstinctConfig hunger{0.02, 0.7, 1.0, 0.0};  // instinct.hunger.*
    InstinctConfig fatigue{0.03, 0.7, 1.0, 0.0}; // instinct.fatigue.*
    MachineLoad load;                            // machine.load
    MemoryParams memory;                         // memory.short_capacity / memory.long_threshold
    PersonalityProfile personality;              // personality.*
    int thought_count = 3;                       // thought.count
    int thought_steps = 4;                       // thought.steps
    double thought_alpha = 1.0;                  // thought.alpha
    double thought_beta = 1.0;                   // thought.beta
    std::string thought_start;                   // thought.start (empty -> first graph node)
    double goal_retry_decay = 0.5;               // goal.retry_decay
    double goal_priority_floor = 0.05;           // goal.priority_floor
    int challenge_state_pain = 8;                // challenge.state.pain
    int challenge_state_hunger = 2;              // challenge.state.hunger
    int challenge_state_fatigue = 3;             // challenge.state.fatigue

    const InstinctConfig& instinct(InstinctKind kind) const;
    int challenge_state(InstinctKind kind) const;
    InstinctRates rates() const;
};

// Applies a config on top of the defaults. Unknown keys, unparsable numbers
// and out-of-range values are all collected into one ConfigError.
EngineParams build_params(const Config& config);

}  // namespace qualia
