#include "qualia/config.hpp"

#include <functional>
#include <map>

#include "qualia/errors.hpp"
#include "qualia/textio.hpp"

namespace qualia {

void Config::set(std::string key, std::string value) {
    entries_.emplace_back(std::move(key), std::move(value));
}

void Config::merge(const Config& overrides) {
    for (const auto& [k, v] : overrides.entries_) entries_.emplace_back(k, v);
}

Config Config::parse(std::string_view content) {
    Config cfg;
    auto lines = text::split(content, '\n');
    for (size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line = lines[ln];
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = text::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError("expected key=value", static_cast<int>(ln + 1), 1);
        cfg.set(text::trim(line.substr(0, eq)), text::trim(line.substr(eq + 1)));
    }
    return cfg;
}

const InstinctConfig& EngineParams::instinct(InstinctKind kind) const {
    switch (kind) {
        case InstinctKind::pain: return pain;
        case InstinctKind::hunger: return hunger;
        case InstinctKind::fatigue: return fatigue;
    }
    return pain;
}

int EngineParams::challenge_state(InstinctKind kind) const {
    switch (kind) {
        case InstinctKind::pain: return challenge_state_pain;
        case InstinctKind::hunger: return challenge_state_hunger;
        case InstinctKind::fatigue: return challenge_state_fatigue;
    }
    return challenge_state_pain;
}

InstinctRates EngineParams::rates() const {
    return InstinctRates{pain.rate, hunger.rate, fatigue.rate};
}

namespace {

struct Binder {
    std::vector<std::string> offending;
    std::map<std::string, std::function<bool(const std::string&)>> setters;

    void real(const std::string& key, double* slot, double lo, double hi) {
        setters[key] = [slot, lo, hi](const std::string& value) {
            double v = 0.0;
            if (!text::parse_double(value, v) || v < lo || v > hi) return false;
            *slot = v;
            return true;
        };
    }

    void integer(const std::string& key, int* slot, int lo, int hi) {
        setters[key] = [slot, lo, hi](const std::string& value) {
            int v = 0;
            if (!text::parse_int(value, v) || v < lo || v > hi) return false;
            *slot = v;
            return true;
        };
    }

    void size(const std::string& key, std::size_t* slot) {
        setters[key] = [slot](const std::string& value) {
            int v = 0;
            if (!text::parse_int(value, v) || v < 1) return false;
            *slot = static_cast<std::size_t>(v);
            return true;
        };
    }

    void string(const std::string& key, std::string* slot) {
        setters[key] = [slot](const std::string& value) {
            if (value.empty()) return false;
            *slot = value;
            return true;
        };
    }
};

constexpr double kInf = 1e18;

}  // namespace

EngineParams build_params(const Config& config) {
    EngineParams params;
    Binder bind;

    // decay 0 would erase history instantly and break the decay law; 1 is the identity.
    bind.setters["emotion.decay"] = [&params](const std::string& value) {
        double v = 0.0;
        if (!text::parse_double(value, v) || !(v > 0.0) || v > 1.0) return false;
        params.emotion.decay = v;
        return true;
    };
    bind.real("emotion.challenge_gain", &params.challenge_fear_gain, 0.0, kInf);
    bind.real("expression.base", &params.expression.base, 0.0, 1.0);
    bind.real("expression.k", &params.expression.k, 0.0, 1.0);

    struct KindSlot {
        const char* name;
        InstinctConfig* slot;
    };
    for (auto [name, slot] : {KindSlot{"pain", &params.pain}, KindSlot{"hunger", &params.hunger},
                              KindSlot{"fatigue", &params.fatigue}}) {
        std::string prefix = std::string("instinct.") + name + ".";
        bind.real(prefix + "rate", &slot->rate, 0.0, kInf);
        bind.real(prefix + "threshold", &slot->threshold, 0.0, 1.0);
        bind.real(prefix + "weight", &slot->weight, 0.0, kInf);
        bind.real(prefix + "initial", &slot->initial, 0.0, 1.0);
    }

    bind.real("machine.load", &params.load.factor, 0.0, kInf);
    bind.size("memory.short_capacity", &params.memory.short_capacity);
    bind.real("memory.long_threshold", &params.memory.long_threshold, 0.0, 1.0);

    bind.real("personality.openness", &params.personality.openness, 0.0, 1.0);
    bind.real("personality.conscientiousness", &params.personality.conscientiousness, 0.0, 1.0);
    bind.real("personality.extraversion", &params.personality.extraversion, 0.0, 1.0);
    bind.real("personality.agreeableness", &params.personality.agreeableness, 0.0, 1.0);
    bind.real("personality.neuroticism", &params.personality.neuroticism, 0.0, 1.0);

    bind.integer("thought.count", &params.thought_count, 0, 1000);
    bind.integer("thought.steps", &params.thought_steps, 1, 100000);
    bind.real("thought.alpha", &params.thought_alpha, 0.0, kInf);
    bind.real("thought.beta", &params.thought_beta, 0.0, kInf);
    bind.string("thought.start", &params.thought_start);

    bind.real("goal.retry_decay", &params.goal_retry_decay, 0.0, 1.0);
    bind.real("goal.priority_floor", &params.goal_priority_floor, 0.0, 1.0);

    bind.integer("challenge.state.pain", &params.challenge_state_pain, 1, 10);
    bind.integer("challenge.state.hunger", &params.challenge_state_hunger, 1, 10);
    bind.integer("challenge.state.fatigue", &params.challenge_state_fatigue, 1, 10);

    for (const auto& [key, value] : config.entries()) {
        auto it = bind.setters.find(key);
        if (it == bind.setters.end()) {
            bind.offending.push_back(key + " (unknown key)");
        } else if (!it->second(value)) {
            bind.offending.push_back(key + "=" + value);
        }
    }
    if (!bind.offending.empty())
        throw ConfigError("invalid configuration", std::move(bind.offending));
    return params;
}

}  // namespace qualia
