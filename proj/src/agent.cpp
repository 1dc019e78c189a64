#include "qualia/agent.hpp"

#include <algorithm>

#include "qualia/errors.hpp"
#include "qualia/textio.hpp"

namespace qualia {

const char* to_string(TerminalKind kind) {
    return kind == TerminalKind::success ? "success" : "failure";
}

const char* to_string(ExpressionKind kind) {
    switch (kind) {
        case ExpressionKind::action: return "action";
        case ExpressionKind::gesture: return "gesture";
        case ExpressionKind::emotion: return "emotion";
    }
    return "?";
}

const char* to_string(GoalResult result) {
    return result == GoalResult::success ? "success" : "failure";
}

namespace {

// The verb a challenge step is reported under, matching its nominated state.
Verb challenge_verb(InstinctKind kind) {
    switch (kind) {
        case InstinctKind::pain: return Verb::emote;
        case InstinctKind::hunger: return Verb::decide;
        case InstinctKind::fatigue: return Verb::relax;
    }
    return Verb::emote;
}

}  // namespace

Agent::Agent(EngineParams params, KnowledgeGraph graph, StateRegistry registry,
             std::uint64_t seed)
    : params_(std::move(params)),
      graph_(std::move(graph)),
      registry_(std::move(registry)),
      stores_(params_.memory),
      seed_(seed),
      rng_(seed) {
    if (params_.thought_start.empty() && graph_.size() > 0)
        params_.thought_start = graph_.node(0).name;
    if (graph_.size() > 0 && !graph_.has_node(params_.thought_start))
        throw ConfigError("invalid configuration",
                          {"thought.start=" + params_.thought_start + " (not in graph)"});
    for (InstinctKind kind :
         {InstinctKind::pain, InstinctKind::hunger, InstinctKind::fatigue}) {
        const auto& c = params_.instinct(kind);
        instincts_.push_back(InstinctSignal{kind, c.initial, c.threshold, c.weight});
    }
}

Agent init_agent(const Config& config, const KnowledgeGraph& graph,
                 const StateRegistry& registry, std::uint64_t seed) {
    return Agent(build_params(config), graph, registry, seed);
}

TraceStep Agent::make_step(const std::string& goal_id, const std::string& label,
                           const ActionDescriptor& action, StateSeq states, std::string note,
                           bool is_challenge) {
    TraceStep step;
    step.index = next_step_index_++;
    step.goal_id = goal_id;
    step.label = label;
    step.action = action;
    step.states = std::move(states);
    step.note = std::move(note);
    step.is_challenge = is_challenge;
    step.mode = expression_mode(emotion_, params_.personality, params_.expression);
    step.fear = emotion_.fear;
    return step;
}

MemoryRecord Agent::remember(const std::string& event, const StateSeq& states,
                             MemoryOrigin origin) {
    MemoryRecord record = stores_.record_experience(event, emotion_, states, tick_, origin);
    memory_journal_.push_back(record);
    return record;
}

Expression Agent::express(ExpressionKind kind, std::string payload) {
    Expression e{kind, expression_mode(emotion_, params_.personality, params_.expression),
                 std::move(payload), tick_};
    expressions_.push_back(e);
    return e;
}

std::string Agent::dominant_feeling() const {
    if (emotion_.max_component() <= 0.0) return "neutral";
    return to_string(emotion_.dominant());
}

Thought Agent::think(const std::string& goal_tag) {
    const std::uint64_t walk_seed = rng_();
    auto generated =
        generate_thoughts(graph_, params_.thought_start, goal_tag, emotion_,
                          params_.thought_steps, params_.thought_alpha, params_.thought_beta,
                          walk_seed);
    thoughts_.push_back(generated.front());
    return generated.front();
}

CycleOutput Agent::cycle(const PlanStage* stage, const StageEvents& events) {
    if (!alive_) throw LifecycleError("cycle on a dead agent");
    tick_ += 1;

    // Instinct injections land before growth and the challenge check.
    for (const auto& inj : events.instincts) {
        for (auto& s : instincts_) {
            if (s.kind == inj.kind) s.level = std::clamp(inj.level, 0.0, 1.0);
        }
    }
    instincts_ = tick_instincts(std::move(instincts_), 1.0, params_.load, params_.rates());

    CycleOutput out;
    const std::string goal_id = active_plan_ ? active_plan_->goal_id : "-";

    if (auto challenge = select_challenge(instincts_)) {
        // Preempt: nominate a state, feel it, remember it; the stage stays pending.
        const auto kind = std::get<InstinctKind>(challenge->source);
        EmotionVector stimulus;
        stimulus.fear = std::clamp(challenge->severity * params_.challenge_fear_gain, 0.0, 1.0);
        emotion_ = update_emotion(emotion_, stimulus, params_.personality, 1.0, params_.emotion);

        StateSeq nominated = StateSeq::checked({params_.challenge_state(kind)});
        std::string name = source_name(*challenge);
        std::string note =
            "attend to challenge " + name + " severity=" + text::fmt_fixed(challenge->severity, 3);
        ActionDescriptor action{challenge_verb(kind), {}, std::nullopt};
        out.step = make_step(goal_id, "challenge-" + name, action, nominated, note, true);
        trace_.push_back(out.step);
        remember("challenge " + name + " while pursuing goal " + goal_id, nominated,
                 MemoryOrigin::challenge);

        // Attending resolves the signal; growth has to rebuild it from zero.
        for (auto& s : instincts_) {
            if (s.kind == kind) s.level = 0.0;
        }
        out.stage_consumed = false;
        return out;
    }

    if (stage == nullptr) throw LifecycleError("cycle without a plan stage or challenge");

    // Stage stimuli combine component-wise by maximum.
    EmotionVector stimulus;
    for (const auto& ev : events.stimuli) {
        for (EmotionTag tag : kEmotionTags)
            stimulus[tag] = std::max(stimulus[tag], ev.stimulus[tag]);
    }
    emotion_ = update_emotion(emotion_, stimulus, params_.personality, 1.0, params_.emotion);

    std::string note = stage->note;
    if (!events.percepts.empty()) {
        std::vector<Percept> percepts;
        for (const auto& ev : events.percepts)
            percepts.push_back(Percept{ev.modality, ev.label, ev.confidence, tick_});
        FusedObservation obs;
        try {
            obs = fuse(percepts);
        } catch (const AmbiguousObservation& e) {
            throw AmbiguousObservation("at stage " + stage->label + ": " + e.what());
        }
        note += " observed=" + obs.label + "(" + text::fmt_fixed(obs.confidence, 3) + ")";
    }

    out.step = make_step(goal_id, stage->label, stage->action, stage->states, note, false);
    trace_.push_back(out.step);

    if (stage->memorable) remember(note, stage->states, MemoryOrigin::stage);
    if (stage->states.contains(10)) {
        // The sequence reaches the expression state: emit output now.
        auto kind = out.step.mode == ExpressionMode::involuntary ? ExpressionKind::gesture
                                                                 : ExpressionKind::emotion;
        out.expressions.push_back(express(kind, dominant_feeling()));
    }
    if (stage->action.carries(Verb::think) && graph_.size() > 0) think(goal_id);

    out.stage_consumed = true;
    return out;
}

void Agent::finish_goal(Goal& goal, GoalResult result, const StateSeq& last_states,
                        std::vector<Expression>& out) {
    goal.status = result == GoalResult::success ? GoalStatus::achieved : GoalStatus::failed;
    active_plan_.reset();

    const std::string feeling = dominant_feeling();
    auto kind =
        emotion_.max_component() > 0.0 ? ExpressionKind::emotion : ExpressionKind::action;
    out.push_back(
        express(kind, "goal " + goal.id + " " + to_string(result) + " feeling=" + feeling));
    remember("goal " + goal.id + " " + to_string(result) + " feeling=" + feeling, last_states,
             MemoryOrigin::outcome);
}

GoalRunResult Agent::run_goal(Goal goal, const Means& means,
                              const std::map<std::string, StageEvents>& events_by_label) {
    if (!alive_) throw LifecycleError("run_goal on a dead agent");
    if (goal.status != GoalStatus::pending)
        throw InvalidArgument("goal '" + goal.id + "' is not pending");
    if (active_plan_) throw LifecycleError("another goal is already active");

    last_goal_tag_ = goal.id;
    goals_.push_back(goal);
    Goal& booked = goals_.back();
    GoalRunResult result;

    if (means.empty()) {
        // Degenerate failure still honors the terminal contract.
        finish_goal(booked, GoalResult::failure, StateSeq{}, result.expressions);
        result.outcome = Outcome{booked.id, GoalResult::failure, {}};
        outcomes_.push_back(*result.outcome);
        return result;
    }

    active_plan_ = plan_goal(booked, means, registry_);
    std::vector<TraceStep> goal_trace;
    std::optional<GoalResult> terminal;
    bool halted = false;

    std::map<std::string, bool> instincts_applied;
    while (!active_plan_->done()) {
        const PlanStage& stage = active_plan_->stages[active_plan_->next];
        StageEvents events;
        if (auto it = events_by_label.find(stage.label); it != events_by_label.end())
            events = it->second;
        if (instincts_applied[stage.label]) events.instincts.clear();
        instincts_applied[stage.label] = true;

        CycleOutput cycle_out = cycle(&stage, events);
        goal_trace.push_back(cycle_out.step);
        result.expressions.insert(result.expressions.end(), cycle_out.expressions.begin(),
                                  cycle_out.expressions.end());
        if (!cycle_out.stage_consumed) continue;

        active_plan_->next += 1;
        if (events.terminal) {
            terminal = *events.terminal == TerminalKind::success ? GoalResult::success
                                                                 : GoalResult::failure;
            break;
        }
        if (events.halt) {
            halted = true;
            break;
        }
    }

    if (halted) {
        alive_ = false;
        active_plan_.reset();
        return result;  // no outcome: the run was cut, not resolved
    }

    const GoalResult final_result = terminal.value_or(GoalResult::success);
    const StateSeq last_states = goal_trace.empty() ? StateSeq{} : goal_trace.back().states;
    finish_goal(booked, final_result, last_states, result.expressions);
    result.outcome = Outcome{booked.id, final_result, std::move(goal_trace)};
    outcomes_.push_back(*result.outcome);
    return result;
}

std::vector<Thought> Agent::post_goal_phase() {
    if (active_plan_) throw LifecycleError("post-goal phase with a plan still active");
    std::vector<Thought> generated;
    if (graph_.size() > 0) {
        for (int i = 0; i < params_.thought_count; ++i)
            generated.push_back(think(last_goal_tag_));
    }
    goals_ = revisit_failed(std::move(goals_), params_.goal_retry_decay,
                            params_.goal_priority_floor);
    return generated;
}

}  // namespace qualia
