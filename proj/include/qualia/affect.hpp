#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qualia {

// ---------------------------------------------------------------------------
// Emotions and personality
// ---------------------------------------------------------------------------

enum class EmotionTag { fear = 0, joy, hope, anger, sadness, surprise };

inline constexpr std::array<EmotionTag, 6> kEmotionTags = {
    EmotionTag::fear, EmotionTag::joy,     EmotionTag::hope,
    EmotionTag::anger, EmotionTag::sadness, EmotionTag::surprise};

const char* to_string(EmotionTag tag);
std::optional<EmotionTag> emotion_from_name(std::string_view name);

// Six-component emotion intensity vector, every component in [0,1].
struct EmotionVector {
    double fear = 0.0;
    double joy = 0.0;
    double hope = 0.0;
    double anger = 0.0;
    double sadness = 0.0;
    double surprise = 0.0;

    double operator[](EmotionTag tag) const;
    double& operator[](EmotionTag tag);

    double max_component() const;
    // Tag of the strongest component; ties resolve to the earlier tag.
    EmotionTag dominant() const;
    bool within_bounds() const;

    bool operator==(const EmotionVector&) const = default;
};

// Big-five trait profile, each trait in [0,1].
struct PersonalityProfile {
    double openness = 0.5;
    double conscientiousness = 0.5;
    double extraversion = 0.5;
    double agreeableness = 0.5;
    double neuroticism = 0.5;

    bool operator==(const PersonalityProfile&) const = default;
};

struct EmotionParams {
    // Per-step retention factor in (0,1]; 1 freezes the vector, smaller values
    // pull each component toward the (gained) stimulus.
    double decay = 0.5;
};

// One decay-plus-stimulus step:
//   e' = clamp01(decay^dt * e + (1 - decay^dt) * gain * stimulus)
// with gain = 1 + neuroticism on the fear component, 1 elsewhere.
EmotionVector update_emotion(const EmotionVector& e, const EmotionVector& stimulus,
                             const PersonalityProfile& p, double dt,
                             const EmotionParams& params);

// ---------------------------------------------------------------------------
// Instincts and challenges
// ---------------------------------------------------------------------------

enum class InstinctKind { pain = 0, hunger, fatigue };

const char* to_string(InstinctKind kind);
std::optional<InstinctKind> instinct_from_name(std::string_view name);

struct InstinctSignal {
    InstinctKind kind;
    double level = 0.0;      // [0,1]
    double threshold = 0.7;  // [0,1]; level >= threshold makes the signal eligible
    double weight = 1.0;     // >= 0; scales competition between eligible signals
};

// Host load proxy; higher load makes hunger and fatigue build faster.
struct MachineLoad {
    double factor = 0.0;  // >= 0
};

struct InstinctRates {
    double pain = 0.0;
    double hunger = 0.02;
    double fatigue = 0.03;

    double of(InstinctKind kind) const;
};

// Linear growth of hunger and fatigue with dt and load; pain is only ever injected.
std::vector<InstinctSignal> tick_instincts(std::vector<InstinctSignal> signals, double dt,
                                           const MachineLoad& load,
                                           const InstinctRates& rates);

struct Challenge {
    std::variant<InstinctKind, std::string> source;
    double severity = 0.0;  // [0,1]
};

std::string source_name(const Challenge& c);

// Among signals at or above threshold, the one maximizing weight*level wins;
// exact ties resolve pain > hunger > fatigue. Nothing eligible -> nullopt.
std::optional<Challenge> select_challenge(std::span<const InstinctSignal> signals);

// ---------------------------------------------------------------------------
// Expression mode
// ---------------------------------------------------------------------------

enum class ExpressionMode { voluntary, involuntary };

const char* to_string(ExpressionMode mode);

struct ExpressionParams {
    double base = 0.8;  // involuntary threshold for a perfectly stable personality
    double k = 0.2;     // neuroticism lowers the threshold by k * neuroticism
};

// Involuntary iff the strongest emotion reaches clamp(base - k*neuroticism, 0.5, 1).
ExpressionMode expression_mode(const EmotionVector& e, const PersonalityProfile& p,
                               const ExpressionParams& params);

// ---------------------------------------------------------------------------
// Attribute taxonomy
// ---------------------------------------------------------------------------

enum class Attribute {
    personality = 0,
    intelligence,
    creativity,
    knowledge,
    memory,
    extra_sensory_perception,
    emotions,
    expression,
    motor_control,
    pain,
    hunger,
    bodily_functions,
};

inline constexpr int kAttributeCount = 12;

const char* to_string(Attribute a);

// Attribute category flags and what the attribute feeds into.
struct AttributeProfile {
    Attribute attribute;
    bool quality;
    bool state;
    bool instinct;
    bool decision_making;  // D
    bool behaviour;        // B
    bool motivation;       // M
};

const std::array<AttributeProfile, kAttributeCount>& attribute_table();

// Throws InvalidArgument for names outside the taxonomy.
Attribute attribute_from_name(std::string_view name);

const AttributeProfile& implications_of(Attribute attribute);

}  // namespace qualia
