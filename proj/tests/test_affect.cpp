#include <doctest.h>

#include <algorithm>
#include <random>

#include "qualia/affect.hpp"
#include "qualia/errors.hpp"

using namespace qualia;

TEST_CASE("update_emotion applies decay, gain and clamping") {
    PersonalityProfile p;
    EmotionParams params{0.5};

    SUBCASE("pure decay halves fear per step") {
        EmotionVector e;
        e.fear = 0.8;
        auto out = update_emotion(e, EmotionVector{}, p, 1.0, params);
        CHECK(out.fear == doctest::Approx(0.4));
    }

    SUBCASE("decay 1 is the identity") {
        EmotionVector e;
        e.fear = 0.3;
        e.joy = 0.7;
        EmotionVector stim;
        stim.fear = 1.0;
        stim.joy = 1.0;
        auto out = update_emotion(e, stim, p, 1.0, EmotionParams{1.0});
        CHECK(out == e);
    }

    SUBCASE("neuroticism doubles the fear gain, clamped at 1") {
        PersonalityProfile anxious;
        anxious.neuroticism = 1.0;
        EmotionVector stim;
        stim.fear = 1.0;
        auto out = update_emotion(EmotionVector{}, stim, anxious, 1.0, params);
        CHECK(out.fear == doctest::Approx(1.0));
    }

    SUBCASE("non-fear components take no personality gain") {
        PersonalityProfile anxious;
        anxious.neuroticism = 1.0;
        EmotionVector stim;
        stim.joy = 1.0;
        auto out = update_emotion(EmotionVector{}, stim, anxious, 1.0, params);
        CHECK(out.joy == doctest::Approx(0.5));
    }

    SUBCASE("dt must be positive") {
        CHECK_THROWS_AS(update_emotion(EmotionVector{}, EmotionVector{}, p, 0.0, params),
                        InvalidArgument);
        CHECK_THROWS_AS(update_emotion(EmotionVector{}, EmotionVector{}, p, -1.0, params),
                        InvalidArgument);
    }
}

TEST_CASE("emotion bounds hold under arbitrary update sequences") {
    std::mt19937_64 rng(7);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    for (int run = 0; run < 50; ++run) {
        PersonalityProfile p;
        p.neuroticism = unit();
        EmotionParams params{0.05 + 0.95 * unit()};
        EmotionVector e;
        for (int step = 0; step < 40; ++step) {
            EmotionVector stim;
            for (EmotionTag tag : kEmotionTags)
                if (unit() < 0.5) stim[tag] = unit();
            e = update_emotion(e, stim, p, 0.1 + 2.0 * unit(), params);
            REQUIRE(e.within_bounds());
        }
    }
}

TEST_CASE("zero stimulus decays every component monotonically to zero") {
    EmotionVector e;
    e.fear = 1.0;
    e.joy = 0.6;
    e.surprise = 0.3;
    PersonalityProfile p;
    EmotionParams params{0.5};
    EmotionVector prev = e;
    for (int step = 0; step < 64; ++step) {
        e = update_emotion(e, EmotionVector{}, p, 1.0, params);
        for (EmotionTag tag : kEmotionTags) REQUIRE(e[tag] <= prev[tag]);
        prev = e;
    }
    CHECK(e.max_component() < 1e-9);
}

TEST_CASE("post-update fear is non-decreasing in neuroticism") {
    EmotionParams params{0.5};
    EmotionVector e;
    e.fear = 0.2;
    EmotionVector stim;
    stim.fear = 0.6;
    double prev = -1.0;
    for (int i = 0; i <= 10; ++i) {
        PersonalityProfile p;
        p.neuroticism = i / 10.0;
        double fear = update_emotion(e, stim, p, 1.0, params).fear;
        CHECK(fear >= prev);
        prev = fear;
    }
}

TEST_CASE("tick_instincts grows hunger and fatigue linearly and clamps") {
    InstinctRates rates{0.0, 0.1, 0.1};
    MachineLoad idle{0.0};

    std::vector<InstinctSignal> signals = {
        {InstinctKind::pain, 0.4, 0.7, 1.0},
        {InstinctKind::hunger, 0.2, 0.7, 1.0},
        {InstinctKind::fatigue, 0.95, 0.7, 1.0},
    };

    auto out = tick_instincts(signals, 1.0, idle, rates);
    CHECK(out[0].level == doctest::Approx(0.4));   // pain untouched
    CHECK(out[1].level == doctest::Approx(0.3));
    CHECK(out[2].level == doctest::Approx(1.0));   // clamped

    SUBCASE("dt=0 leaves levels unchanged") {
        auto still = tick_instincts(signals, 0.0, idle, rates);
        for (size_t i = 0; i < signals.size(); ++i)
            CHECK(still[i].level == doctest::Approx(signals[i].level));
    }

    SUBCASE("load accelerates growth") {
        auto loaded = tick_instincts(signals, 1.0, MachineLoad{1.0}, rates);
        CHECK(loaded[1].level == doctest::Approx(0.4));  // rate doubled
        CHECK(loaded[1].level > out[1].level);
    }
}

TEST_CASE("select_challenge picks the strongest eligible signal") {
    SUBCASE("nothing eligible") {
        std::vector<InstinctSignal> signals = {
            {InstinctKind::pain, 0.5, 0.7, 1.0},
            {InstinctKind::hunger, 0.3, 0.6, 1.0},
        };
        CHECK_FALSE(select_challenge(signals).has_value());
    }

    SUBCASE("max weight*level wins with severity = level") {
        std::vector<InstinctSignal> signals = {
            {InstinctKind::pain, 0.9, 0.7, 1.0},
            {InstinctKind::hunger, 0.8, 0.6, 1.0},
        };
        auto c = select_challenge(signals);
        REQUIRE(c);
        CHECK(std::get<InstinctKind>(c->source) == InstinctKind::pain);
        CHECK(c->severity == doctest::Approx(0.9));
    }

    SUBCASE("exact ties break pain > hunger > fatigue") {
        std::vector<InstinctSignal> signals = {
            {InstinctKind::hunger, 0.8, 0.6, 1.0},
            {InstinctKind::pain, 0.8, 0.6, 1.0},
        };
        auto c = select_challenge(signals);
        REQUIRE(c);
        CHECK(std::get<InstinctKind>(c->source) == InstinctKind::pain);
    }

    SUBCASE("result is independent of input order") {
        std::vector<InstinctSignal> signals = {
            {InstinctKind::pain, 0.72, 0.7, 0.5},
            {InstinctKind::hunger, 0.9, 0.7, 1.0},
            {InstinctKind::fatigue, 0.95, 0.7, 0.9},
        };
        std::sort(signals.begin(), signals.end(),
                  [](auto& a, auto& b) { return static_cast<int>(a.kind) < static_cast<int>(b.kind); });
        auto reference = select_challenge(signals);
        REQUIRE(reference);
        std::vector<InstinctSignal> perm = signals;
        do {
            auto c = select_challenge(perm);
            REQUIRE(c);
            CHECK(source_name(*c) == source_name(*reference));
            CHECK(c->severity == reference->severity);
        } while (std::next_permutation(perm.begin(), perm.end(), [](auto& a, auto& b) {
            return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        }));
    }
}

TEST_CASE("attribute table matches the twelve-row taxonomy") {
    struct Row {
        Attribute a;
        bool q, s, i, d, b, m;
    };
    // quality / state / instinct flags and decision/behaviour/motivation implications
    const Row rows[] = {
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
    };
    CHECK(attribute_table().size() == 12);
    for (const Row& row : rows) {
        const auto& p = implications_of(row.a);
        CAPTURE(to_string(row.a));
        CHECK(p.quality == row.q);
        CHECK(p.state == row.s);
        CHECK(p.instinct == row.i);
        CHECK(p.decision_making == row.d);
        CHECK(p.behaviour == row.b);
        CHECK(p.motivation == row.m);
        CHECK((p.decision_making || p.behaviour || p.motivation));  // >= 1 implication
        CHECK(attribute_from_name(to_string(row.a)) == row.a);
    }
    CHECK_THROWS_AS(attribute_from_name("telepathy"), InvalidArgument);
}

TEST_CASE("expression mode threshold shifts with neuroticism") {
    ExpressionParams params;  // base 0.8, k 0.2
    PersonalityProfile calm;
    calm.neuroticism = 0.0;

    CHECK(expression_mode(EmotionVector{}, calm, params) == ExpressionMode::voluntary);

    EmotionVector terror;
    terror.fear = 1.0;
    PersonalityProfile anyone;
    anyone.neuroticism = 0.3;
    CHECK(expression_mode(terror, anyone, params) == ExpressionMode::involuntary);

    EmotionVector worried;
    worried.fear = 0.7;
    PersonalityProfile anxious;
    anxious.neuroticism = 1.0;  // threshold 0.8 - 0.2 = 0.6
    CHECK(expression_mode(worried, anxious, params) == ExpressionMode::involuntary);
    CHECK(expression_mode(worried, calm, params) == ExpressionMode::voluntary);
}
