#include "qualia/affect.hpp"

#include <algorithm>
#include <cmath>

#include "qualia/errors.hpp"

namespace qualia {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

// ---------------------------------------------------------------------------
// Emotions
// ---------------------------------------------------------------------------

const char* to_string(EmotionTag tag) {
    switch (tag) {
        case EmotionTag::fear: return "fear";
        case EmotionTag::joy: return "joy";
        case EmotionTag::hope: return "hope";
        case EmotionTag::anger: return "anger";
        case EmotionTag::sadness: return "sadness";
        case EmotionTag::surprise: return "surprise";
    }
    return "?";
}

std::optional<EmotionTag> emotion_from_name(std::string_view name) {
    for (EmotionTag tag : kEmotionTags) {
        if (name == to_string(tag)) return tag;
    }
    return std::nullopt;
}

double EmotionVector::operator[](EmotionTag tag) const {
    return const_cast<EmotionVector&>(*this)[tag];
}

double& EmotionVector::operator[](EmotionTag tag) {
    switch (tag) {
        case EmotionTag::fear: return fear;
        case EmotionTag::joy: return joy;
        case EmotionTag::hope: return hope;
        case EmotionTag::anger: return anger;
        case EmotionTag::sadness: return sadness;
        case EmotionTag::surprise: return surprise;
    }
    return fear;
}

double EmotionVector::max_component() const {
    double m = 0.0;
    for (EmotionTag tag : kEmotionTags) m = std::max(m, (*this)[tag]);
    return m;
}

EmotionTag EmotionVector::dominant() const {
    EmotionTag best = EmotionTag::fear;
    for (EmotionTag tag : kEmotionTags) {
        if ((*this)[tag] > (*this)[best]) best = tag;
    }
    return best;
}

bool EmotionVector::within_bounds() const {
    for (EmotionTag tag : kEmotionTags) {
        double v = (*this)[tag];
        if (!(v >= 0.0 && v <= 1.0)) return false;
    }
    return true;
}

EmotionVector update_emotion(const EmotionVector& e, const EmotionVector& stimulus,
                             const PersonalityProfile& p, double dt,
                             const EmotionParams& params) {
    if (!(dt > 0.0)) throw InvalidArgument("update_emotion: dt must be > 0");
    if (!(params.decay > 0.0 && params.decay <= 1.0))
        throw InvalidArgument("update_emotion: decay must be in (0,1]");

    const double keep = std::pow(params.decay, dt);
    EmotionVector out;
    for (EmotionTag tag : kEmotionTags) {
        const double gain = (tag == EmotionTag::fear) ? 1.0 + p.neuroticism : 1.0;
        out[tag] = clamp01(keep * e[tag] + (1.0 - keep) * gain * stimulus[tag]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Instincts
// ---------------------------------------------------------------------------

const char* to_string(InstinctKind kind) {
    switch (kind) {
        case InstinctKind::pain: return "pain";
        case InstinctKind::hunger: return "hunger";
        case InstinctKind::fatigue: return "fatigue";
    }
    return "?";
}

std::optional<InstinctKind> instinct_from_name(std::string_view name) {
    if (name == "pain") return InstinctKind::pain;
    if (name == "hunger") return InstinctKind::hunger;
    if (name == "fatigue") return InstinctKind::fatigue;
    return std::nullopt;
}

double InstinctRates::of(InstinctKind kind) const {
    switch (kind) {
        case InstinctKind::pain: return pain;
        case InstinctKind::hunger: return hunger;
        case InstinctKind::fatigue: return fatigue;
    }
    return 0.0;
}

std::vector<InstinctSignal> tick_instincts(std::vector<InstinctSignal> signals, double dt,
                                           const MachineLoad& load,
                                           const InstinctRates& rates) {
    if (dt < 0.0) throw InvalidArgument("tick_instincts: dt must be >= 0");
    for (auto& s : signals) {
        if (s.kind == InstinctKind::pain) continue;  // pain only changes by injection
        const double growth = rates.of(s.kind) * (1.0 + load.factor) * dt;
        s.level = clamp01(s.level + growth);
    }
    return signals;
}

std::string source_name(const Challenge& c) {
    if (const auto* kind = std::get_if<InstinctKind>(&c.source)) return to_string(*kind);
    return std::get<std::string>(c.source);
}

std::optional<Challenge> select_challenge(std::span<const InstinctSignal> signals) {
    const InstinctSignal* best = nullptr;
    for (const auto& s : signals) {
        if (s.level < s.threshold) continue;
        if (!best) {
            best = &s;
            continue;
        }
        const double score = s.weight * s.level;
        const double best_score = best->weight * best->level;
        if (score > best_score ||
            (score == best_score && static_cast<int>(s.kind) < static_cast<int>(best->kind))) {
            best = &s;
        }
    }
    if (!best) return std::nullopt;
    return Challenge{best->kind, best->level};
}

// ---------------------------------------------------------------------------
// Expression mode
// ---------------------------------------------------------------------------

const char* to_string(ExpressionMode mode) {
    return mode == ExpressionMode::voluntary ? "vol" : "invol";
}

ExpressionMode expression_mode(const EmotionVector& e, const PersonalityProfile& p,
                               const ExpressionParams& params) {
    const double threshold = std::clamp(params.base - params.k * p.neuroticism, 0.5, 1.0);
    return e.max_component() >= threshold ? ExpressionMode::involuntary
                                          : ExpressionMode::voluntary;
}

// ---------------------------------------------------------------------------
// Attribute taxonomy
// ---------------------------------------------------------------------------

const char* to_string(Attribute a) {
    switch (a) {
        case Attribute::personality: return "personality";
        case Attribute::intelligence: return "intelligence";
        case Attribute::creativity: return "creativity";
        case Attribute::knowledge: return "knowledge";
        case Attribute::memory: return "memory";
        case Attribute::extra_sensory_perception: return "extra-sensory-perception";
        case Attribute::emotions: return "emotions";
        case Attribute::expression: return "expression";
        case Attribute::motor_control: return "motor-control";
        case Attribute::pain: return "pain";
        case Attribute::hunger: return "hunger";
        case Attribute::bodily_functions: return "bodily-functions";
    }
    return "?";
}

const std::array<AttributeProfile, kAttributeCount>& attribute_table() {
    //                                                       Q      S      I      D      B      M
    static const std::array<AttributeProfile, kAttributeCount> table = {{
        {Attribute::personality,              true,  false, false, true,  true,  true},
        {Attribute::intelligence,             true,  false, false, true,  true,  false},
        {Attribute::creativity,               true,  false, false, true,  true,  false},
        {Attribute::knowledge,                true,  true,  false, true,  true,  true},
        {Attribute::memory,                   true,  true,  false, true,  true,  true},
        {Attribute::extra_sensory_perception, true,  true,  false, true,  false, false},
        {Attribute::emotions,                 false, true,  false, true,  true,  false},
        {Attribute::expression,               false, true,  false, false, true,  false},
        {Attribute::motor_control,            false, true,  false, false, true,  false},
        {Attribute::pain,                     false, false, true,  false, true,  true},
        {Attribute::hunger,                   false, false, true,  false, true,  true},
        {Attribute::bodily_functions,         false, false, true,  false, true,  true},
    }};
    return table;
}

Attribute attribute_from_name(std::string_view name) {
    for (const auto& row : attribute_table()) {
        if (name == to_string(row.attribute)) return row.attribute;
    }
    throw InvalidArgument("unknown attribute: " + std::string(name));
}

const AttributeProfile& implications_of(Attribute attribute) {
    const auto& table = attribute_table();
    const auto idx = static_cast<size_t>(attribute);
    if (idx >= table.size()) throw InvalidArgument("unknown attribute");
    return table[idx];
}

}  // namespace qualia
