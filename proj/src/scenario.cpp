#include "qualia/scenario.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qualia/errors.hpp"
#include "qualia/textio.hpp"

namespace qualia {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
    bool quoted = false;
};

// Splits a line into tokens; "double quoted" runs form one token.
std::vector<Token> lex_line(const std::string& line, int line_no) {
    std::vector<Token> tokens;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        if (line[i] == '"') {
            size_t end = line.find('"', i + 1);
            if (end == std::string::npos)
                throw ParseError("unterminated string", line_no, static_cast<int>(i + 1));
            tokens.push_back({line.substr(i + 1, end - i - 1), static_cast<int>(i + 1), true});
            i = end + 1;
            continue;
        }
        size_t end = i;
        while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])) &&
               line[end] != '#' && line[end] != '"')
            ++end;
        tokens.push_back({line.substr(i, end - i), static_cast<int>(i + 1), false});
        i = end;
    }
    return tokens;
}

// Splits "<goal>.<label>" into its parts.
std::pair<std::string, std::string> split_ref(const Token& tok, int line_no) {
    auto dot = tok.text.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == tok.text.size())
        throw ParseError("expected <goal-id>.<label>, got '" + tok.text + "'", line_no,
                         tok.column);
    return {tok.text.substr(0, dot), tok.text.substr(dot + 1)};
}

double parse_unit_real(const Token& tok, int line_no, const char* what) {
    double v = 0.0;
    if (!text::parse_double(tok.text, v) || v < 0.0 || v > 1.0)
        throw ParseError(std::string(what) + " must be in [0,1], got '" + tok.text + "'",
                         line_no, tok.column);
    return v;
}

EmotionVector parse_stimulus_list(const Token& tok, int line_no) {
    EmotionVector stimulus;
    for (const auto& part : text::split(tok.text, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw ParseError("stimulus entries look like fear=0.9, got '" + part + "'", line_no,
                             tok.column);
        auto tag = emotion_from_name(part.substr(0, eq));
        if (!tag)
            throw ParseError("unknown emotion '" + part.substr(0, eq) + "'", line_no, tok.column);
        double v = 0.0;
        if (!text::parse_double(part.substr(eq + 1), v) || v < 0.0 || v > 1.0)
            throw ParseError("stimulus level must be in [0,1], got '" + part + "'", line_no,
                             tok.column);
        stimulus[*tag] = v;
    }
    return stimulus;
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

Scenario parse_scenario(std::string_view content) {
    Scenario scenario;
    bool have_name = false;
    std::set<std::string> goal_ids;
    std::map<std::string, std::set<std::string>> stage_labels;  // goal -> labels
    std::set<std::string> terminal_stages;
    // (line, ref) pairs to resolve once all stages are known
    std::vector<std::tuple<int, int, std::string, std::string>> pending_refs;

    auto lines = text::split(content, '\n');
    for (size_t ln = 0; ln < lines.size(); ++ln) {
        const int line_no = static_cast<int>(ln + 1);
        auto tokens = lex_line(lines[ln], line_no);
        if (tokens.empty()) continue;
        const std::string& kw = tokens[0].text;

        if (kw == "scenario") {
            if (tokens.size() != 2 || !tokens[1].quoted)
                throw ParseError("scenario syntax is: scenario \"<name>\"", line_no, 1);
            if (have_name) throw ParseError("scenario declared twice", line_no, 1);
            scenario.name = tokens[1].text;
            have_name = true;
        } else if (kw == "config") {
            if (tokens.size() != 2)
                throw ParseError("config syntax is: config <key>=<value>", line_no, 1);
            auto eq = tokens[1].text.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ParseError("config syntax is: config <key>=<value>", line_no,
                                 tokens[1].column);
            scenario.config_overrides.emplace_back(tokens[1].text.substr(0, eq),
                                                   tokens[1].text.substr(eq + 1));
        } else if (kw == "goal") {
            if (tokens.size() != 5 || !tokens[2].quoted || tokens[3].text != "priority")
                throw ParseError("goal syntax is: goal <id> \"<description>\" priority <0..1>",
                                 line_no, 1);
            GoalDecl decl;
            decl.goal.id = tokens[1].text;
            decl.goal.description = tokens[2].text;
            decl.goal.priority = parse_unit_real(tokens[4], line_no, "priority");
            if (!goal_ids.insert(decl.goal.id).second)
                throw ParseError("goal '" + decl.goal.id + "' declared twice", line_no,
                                 tokens[1].column);
            scenario.goals.push_back(std::move(decl));
        } else if (kw == "stage") {
            if (tokens.size() < 4 || !tokens.back().quoted)
                throw ParseError(
                    "stage syntax is: stage <goal>.<label> <action> [channel=..] "
                    "[memorable=..] \"<note>\"",
                    line_no, 1);
            auto [goal_id, label] = split_ref(tokens[1], line_no);
            if (!goal_ids.count(goal_id))
                throw ParseError("stage references undeclared goal '" + goal_id + "'", line_no,
                                 tokens[1].column);
            if (scenario.goals.empty() || scenario.goals.back().goal.id != goal_id)
                throw ParseError("stages must follow their goal declaration", line_no,
                                 tokens[1].column);
            if (!stage_labels[goal_id].insert(label).second)
                throw ParseError("stage '" + tokens[1].text + "' declared twice", line_no,
                                 tokens[1].column);

            StageDecl stage;
            stage.label = label;
            try {
                stage.action = parse_action(tokens[2].text);
            } catch (const ParseError&) {
                throw ParseError("bad action '" + tokens[2].text + "'", line_no,
                                 tokens[2].column);
            }
            stage.note = tokens.back().text;
            for (size_t i = 3; i + 1 < tokens.size(); ++i) {
                const auto& t = tokens[i];
                if (t.text.rfind("channel=", 0) == 0) {
                    auto m = modality_from_name(t.text.substr(8));
                    if (!m)
                        throw ParseError("unknown modality '" + t.text.substr(8) + "'", line_no,
                                         t.column);
                    stage.action.channel = m;
                } else if (t.text == "memorable=true") {
                    stage.memorable = true;
                } else if (t.text == "memorable=false") {
                    stage.memorable = false;
                } else {
                    throw ParseError("unknown stage attribute '" + t.text + "'", line_no,
                                     t.column);
                }
            }
            scenario.goals.back().stages.push_back(std::move(stage));
        } else if (kw == "event") {
            if (tokens.size() < 4 || tokens[1].text != "at")
                throw ParseError("event syntax is: event at <goal>.<label> <event...>", line_no,
                                 1);
            auto [goal_id, label] = split_ref(tokens[2], line_no);
            pending_refs.emplace_back(line_no, tokens[2].column, goal_id, label);
            const std::string& etype = tokens[3].text;
            ScenarioEvent event;
            event.goal_id = goal_id;
            event.label = label;
            if (etype == "percept") {
                if (tokens.size() != 8 || tokens[6].text != "conf")
                    throw ParseError("percept event: percept <modality> <label> conf <0..1>",
                                     line_no, tokens[3].column);
                auto modality = modality_from_name(tokens[4].text);
                if (!modality)
                    throw ParseError("unknown modality '" + tokens[4].text + "'", line_no,
                                     tokens[4].column);
                double conf = parse_unit_real(tokens[7], line_no, "confidence");
                event.payload = PerceptEvent{*modality, tokens[5].text, conf};
            } else if (etype == "stimulus") {
                if (tokens.size() != 5)
                    throw ParseError("stimulus event: stimulus <emotion>=<0..1>[,...]", line_no,
                                     tokens[3].column);
                event.payload = StimulusEvent{parse_stimulus_list(tokens[4], line_no)};
            } else if (etype == "instinct") {
                if (tokens.size() != 5)
                    throw ParseError("instinct event: instinct <kind>=<0..1>", line_no,
                                     tokens[3].column);
                auto eq = tokens[4].text.find('=');
                if (eq == std::string::npos)
                    throw ParseError("instinct event: instinct <kind>=<0..1>", line_no,
                                     tokens[4].column);
                auto kind = instinct_from_name(tokens[4].text.substr(0, eq));
                if (!kind)
                    throw ParseError("unknown instinct '" + tokens[4].text.substr(0, eq) + "'",
                                     line_no, tokens[4].column);
                double level = 0.0;
                if (!text::parse_double(tokens[4].text.substr(eq + 1), level) || level < 0.0 ||
                    level > 1.0)
                    throw ParseError("instinct level must be in [0,1]", line_no,
                                     tokens[4].column);
                event.payload = InstinctEvent{*kind, level};
            } else if (etype == "terminal") {
                if (tokens.size() != 5 ||
                    (tokens[4].text != "success" && tokens[4].text != "failure"))
                    throw ParseError("terminal event: terminal <success|failure>", line_no,
                                     tokens[3].column);
                if (!terminal_stages.insert(goal_id + "." + label).second)
                    throw ParseError("stage '" + goal_id + "." + label +
                                         "' already has a terminal event",
                                     line_no, tokens[2].column);
                event.payload = tokens[4].text == "success" ? TerminalKind::success
                                                            : TerminalKind::failure;
            } else if (etype == "halt") {
                if (tokens.size() != 4)
                    throw ParseError("halt event takes no arguments", line_no, tokens[3].column);
                event.payload = HaltEventTag{};
            } else {
                throw ParseError("unknown event type '" + etype + "'", line_no,
                                 tokens[3].column);
            }
            scenario.events.push_back(std::move(event));
        } else if (kw == "expect") {
            if (tokens.size() != 4 || tokens[2].text != "states")
                throw ParseError("expect syntax is: expect <goal>.<label> states <id>,...",
                                 line_no, 1);
            auto [goal_id, label] = split_ref(tokens[1], line_no);
            pending_refs.emplace_back(line_no, tokens[1].column, goal_id, label);
            std::vector<int> ids;
            for (const auto& part : text::split(tokens[3].text, ',')) {
                int id = 0;
                if (!text::parse_int(part, id))
                    throw ParseError("bad state id '" + part + "'", line_no, tokens[3].column);
                ids.push_back(id);
            }
            StateSeq states;
            try {
                states = StateSeq::checked(std::move(ids));
            } catch (const Error& e) {
                throw ParseError(e.what(), line_no, tokens[3].column);
            }
            scenario.expects.push_back(ExpectDecl{goal_id, label, std::move(states)});
        } else if (kw == "halt") {
            if (tokens.size() != 1) throw ParseError("halt takes no arguments", line_no, 1);
            scenario.halt_at_end = true;
        } else {
            throw ParseError("unknown keyword '" + kw + "'", line_no, tokens[0].column);
        }
    }

    if (!have_name)
        throw ParseError("missing scenario \"<name>\" declaration",
                         static_cast<int>(lines.size()), 1);
    for (const auto& [line_no, column, goal_id, label] : pending_refs) {
        if (!stage_labels.count(goal_id) || !stage_labels[goal_id].count(label))
            throw ParseError("reference to undeclared stage '" + goal_id + "." + label + "'",
                             line_no, column);
    }
    return scenario;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string serialize_scenario(const Scenario& scenario) {
    std::string out = "scenario " + quote(scenario.name) + "\n";
    for (const auto& [k, v] : scenario.config_overrides) out += "config " + k + "=" + v + "\n";
    for (const auto& decl : scenario.goals) {
        out += "goal " + decl.goal.id + " " + quote(decl.goal.description) + " priority " +
               text::fmt_number(decl.goal.priority) + "\n";
        for (const auto& stage : decl.stages) {
            out += "stage " + decl.goal.id + "." + stage.label + " " + stage.action.key();
            if (stage.action.channel)
                out += std::string(" channel=") + to_string(*stage.action.channel);
            if (stage.memorable)
                out += std::string(" memorable=") + (*stage.memorable ? "true" : "false");
            out += " " + quote(stage.note) + "\n";
        }
    }
    for (const auto& event : scenario.events) {
        out += "event at " + event.goal_id + "." + event.label + " ";
        if (const auto* p = std::get_if<PerceptEvent>(&event.payload)) {
            out += std::string("percept ") + to_string(p->modality) + " " + p->label + " conf " +
                   text::fmt_number(p->confidence);
        } else if (const auto* s = std::get_if<StimulusEvent>(&event.payload)) {
            out += "stimulus ";
            bool first = true;
            for (EmotionTag tag : kEmotionTags) {
                if (s->stimulus[tag] == 0.0) continue;
                if (!first) out += ",";
                out += std::string(to_string(tag)) + "=" + text::fmt_number(s->stimulus[tag]);
                first = false;
            }
            if (first) out += "fear=0";  // degenerate all-zero stimulus
        } else if (const auto* i = std::get_if<InstinctEvent>(&event.payload)) {
            out += std::string("instinct ") + to_string(i->kind) + "=" +
                   text::fmt_number(i->level);
        } else if (const auto* t = std::get_if<TerminalKind>(&event.payload)) {
            out += std::string("terminal ") + to_string(*t);
        } else {
            out += "halt";
        }
        out += "\n";
    }
    for (const auto& expect : scenario.expects) {
        std::string ids;
        for (int id : expect.states.ids()) {
            if (!ids.empty()) ids += ",";
            ids += std::to_string(id);
        }
        out += "expect " + expect.goal_id + "." + expect.label + " states " + ids + "\n";
    }
    if (scenario.halt_at_end) out += "halt\n";
    return out;
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

RunReport run_scenario(const Scenario& scenario, std::uint64_t seed,
                       const StateRegistry& registry, const KnowledgeGraph& graph,
                       const Config& base_config) {
    Config merged = base_config;
    Config overrides;
    for (const auto& [k, v] : scenario.config_overrides) overrides.set(k, v);
    merged.merge(overrides);

    Agent agent = init_agent(merged, graph, registry, seed);

    for (const auto& decl : scenario.goals) {
        if (!agent.alive()) break;
        Means means;
        for (const auto& stage : decl.stages)
            means.steps.push_back(
                MeansStep{stage.label, stage.action, stage.note, stage.memorable});

        std::map<std::string, StageEvents> events_by_label;
        for (const auto& event : scenario.events) {
            if (event.goal_id != decl.goal.id) continue;
            StageEvents& bundle = events_by_label[event.label];
            if (const auto* p = std::get_if<PerceptEvent>(&event.payload)) {
                bundle.percepts.push_back(*p);
            } else if (const auto* s = std::get_if<StimulusEvent>(&event.payload)) {
                bundle.stimuli.push_back(*s);
            } else if (const auto* i = std::get_if<InstinctEvent>(&event.payload)) {
                bundle.instincts.push_back(*i);
            } else if (const auto* t = std::get_if<TerminalKind>(&event.payload)) {
                bundle.terminal = *t;
            } else {
                bundle.halt = true;
            }
        }

        try {
            agent.run_goal(decl.goal, means, events_by_label);
        } catch (const Error& e) {
            throw Error("goal '" + decl.goal.id + "': " + e.what());
        }
    }
    if (agent.alive()) {
        agent.post_goal_phase();
        agent.halt();  // the script has ended
    }

    RunReport report;
    report.scenario = scenario.name;
    report.seed = seed;
    report.trace = agent.trace();
    report.expressions = agent.expressions();
    report.memory_log = agent.memory_journal();
    report.thoughts = agent.thoughts();
    report.outcomes = agent.outcomes();
    report.final_goals = agent.goals();
    return report;
}

// ---------------------------------------------------------------------------
// Report text
// ---------------------------------------------------------------------------

std::string trace_line(const TraceStep& step) {
    return "step " + std::to_string(step.index) + " " + step.goal_id + "." + step.label +
           " states=" + step.states.to_string() + " action=" + to_string(step.action.verb) +
           " mode=" + to_string(step.mode) + " fear=" + text::fmt_fixed(step.fear, 3) +
           " note=" + quote(step.note);
}

std::string RunReport::to_text() const {
    std::string out = "run " + quote(scenario) + " seed=" + std::to_string(seed) + "\n";
    out += "trace:\n";
    for (const auto& step : trace) out += trace_line(step) + "\n";
    out += "expressions:\n";
    for (const auto& e : expressions) {
        out += "expr tick=" + std::to_string(e.tick) + " kind=" + to_string(e.kind) +
               " mode=" + to_string(e.mode) + " payload=" + quote(e.payload) + "\n";
    }
    out += "memory:\n";
    for (const auto& r : memory_log) out += memory_log_line(r) + "\n";
    out += "thoughts:\n";
    for (const auto& t : thoughts) {
        out += std::string("thought trigger=") + to_string(t.trigger) + " path=";
        for (size_t i = 0; i < t.path.size(); ++i) {
            if (i) out += "->";
            out += t.path[i];
        }
        out += "\n";
    }
    out += "goals:\n";
    for (const auto& g : final_goals) {
        out += "goal " + g.id + " " + to_string(g.status) +
               " priority=" + text::fmt_number(g.priority) + "\n";
    }
    out += "outcomes:\n";
    for (const auto& o : outcomes) {
        out += "outcome " + o.goal_id + " " + to_string(o.result) +
               " steps=" + std::to_string(o.trace.size()) + "\n";
    }
    size_t challenges = 0;
    for (const auto& step : trace) challenges += step.is_challenge ? 1 : 0;
    out += "summary: steps=" + std::to_string(trace.size()) +
           " challenges=" + std::to_string(challenges) +
           " expressions=" + std::to_string(expressions.size()) +
           " memory_writes=" + std::to_string(memory_log.size()) +
           " thoughts=" + std::to_string(thoughts.size()) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Diffing
// ---------------------------------------------------------------------------

TraceDiff diff_trace(std::span<const TraceEntry> actual, std::span<const TraceEntry> expected) {
    TraceDiff diff;
    const size_t common = std::min(actual.size(), expected.size());
    for (size_t i = 0; i < common; ++i) {
        if (actual[i].states == expected[i].states) continue;
        diff.mismatches.push_back(
            TraceMismatch{expected[i].label, expected[i].states, actual[i].states});
    }
    diff.length_delta = static_cast<int>(actual.size()) - static_cast<int>(expected.size());
    return diff;
}

std::vector<TraceEntry> trace_entries(std::span<const TraceStep> trace) {
    std::vector<TraceEntry> entries;
    entries.reserve(trace.size());
    for (const auto& step : trace)
        entries.push_back(TraceEntry{step.goal_id + "." + step.label, step.states});
    return entries;
}

std::vector<TraceEntry> expected_entries(const Scenario& scenario) {
    std::vector<TraceEntry> entries;
    entries.reserve(scenario.expects.size());
    for (const auto& expect : scenario.expects)
        entries.push_back(TraceEntry{expect.goal_id + "." + expect.label, expect.states});
    return entries;
}

std::vector<TraceEntry> parse_trace_text(std::string_view content) {
    std::vector<TraceEntry> entries;
    auto lines = text::split(content, '\n');
    for (size_t ln = 0; ln < lines.size(); ++ln) {
        const int line_no = static_cast<int>(ln + 1);
        auto tokens = text::split_ws(lines[ln]);
        if (tokens.empty() || tokens[0] != "step") continue;
        if (tokens.size() < 4 || tokens[3].rfind("states=[", 0) != 0)
            throw ParseError("bad trace line", line_no, 1);
        std::string list = tokens[3].substr(8);
        if (list.empty() || list.back() != ']')
            throw ParseError("bad states list in trace line", line_no, 1);
        list.pop_back();
        std::vector<int> ids;
        if (!list.empty()) {
            for (const auto& part : text::split(list, ',')) {
                int id = 0;
                if (!text::parse_int(part, id))
                    throw ParseError("bad state id '" + part + "' in trace line", line_no, 1);
                ids.push_back(id);
            }
        }
        entries.push_back(TraceEntry{tokens[2], StateSeq::unchecked(std::move(ids))});
    }
    return entries;
}

}  // namespace qualia
