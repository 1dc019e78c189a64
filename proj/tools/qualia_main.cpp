// qualia: scenario runner, validator, trace differ and REPL for the affective
// consciousness-state engine.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qualia/agent.hpp"
#include "qualia/builtin_data.hpp"
#include "qualia/errors.hpp"
#include "qualia/scenario.hpp"
#include "qualia/textio.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitParseError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qualia::Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct DataOptions {
    std::string registry_path;
    std::string graph_path;
    std::string config_path;
};

void add_data_options(CLI::App* cmd, DataOptions& opts) {
    cmd->add_option("--registry", opts.registry_path, "State registry / rule table file");
    cmd->add_option("--graph", opts.graph_path, "Knowledge graph file");
    cmd->add_option("--config", opts.config_path, "Engine config file (key=value lines)");
}

qualia::StateRegistry load_registry(const DataOptions& opts) {
    if (!opts.registry_path.empty())
        return qualia::StateRegistry::parse(read_file(opts.registry_path));
    return qualia::StateRegistry::parse(qualia::builtin::kRegistryText);
}

qualia::KnowledgeGraph load_graph(const DataOptions& opts) {
    if (!opts.graph_path.empty())
        return qualia::KnowledgeGraph::parse(read_file(opts.graph_path));
    return qualia::KnowledgeGraph::parse(qualia::builtin::kGraphText);
}

qualia::Config load_config(const DataOptions& opts) {
    if (!opts.config_path.empty()) return qualia::Config::parse(read_file(opts.config_path));
    return qualia::Config{};
}

int cmd_run(const std::string& file, std::uint64_t seed, const std::string& trace_out,
            bool strict, const DataOptions& data) {
    auto scenario = qualia::parse_scenario(read_file(file));
    auto report = qualia::run_scenario(scenario, seed, load_registry(data), load_graph(data),
                                       load_config(data));
    std::cout << report.to_text();

    if (!trace_out.empty()) {
        std::ofstream out(trace_out, std::ios::binary);
        if (!out) throw qualia::Error("cannot write trace file: " + trace_out);
        for (const auto& step : report.trace) out << qualia::trace_line(step) << "\n";
    }

    if (strict) {
        auto diff = qualia::diff_trace(qualia::trace_entries(report.trace),
                                       qualia::expected_entries(scenario));
        if (!diff.empty()) {
            for (const auto& m : diff.mismatches) {
                std::cerr << "mismatch at " << m.label << ": expected " << m.expected.to_string()
                          << ", got " << m.actual.to_string() << "\n";
            }
            if (diff.length_delta != 0)
                std::cerr << "trace length differs from expectation by " << diff.length_delta
                          << "\n";
            return kExitMismatch;
        }
        std::cerr << "strict: trace matches all " << scenario.expects.size()
                  << " expected sequences\n";
    }
    return kExitOk;
}

int cmd_validate(const std::string& file, const DataOptions& data) {
    auto scenario = qualia::parse_scenario(read_file(file));
    auto registry = load_registry(data);

    int findings = 0;
    size_t stages = 0;
    for (const auto& decl : scenario.goals) {
        for (const auto& stage : decl.stages) {
            ++stages;
            if (!registry.has_rule(stage.action)) {
                std::cout << "finding: no rule covers action '" << stage.action.key() << "' at "
                          << decl.goal.id << "." << stage.label << "\n";
                ++findings;
            }
        }
    }
    std::cout << "scenario \"" << scenario.name << "\": " << scenario.goals.size() << " goals, "
              << stages << " stages, " << scenario.events.size() << " events, "
              << scenario.expects.size() << " expected sequences\n";
    if (findings > 0) {
        std::cout << findings << " finding(s)\n";
        return kExitMismatch;
    }
    std::cout << "ok\n";
    return kExitOk;
}

int cmd_diff(const std::string& file_a, const std::string& file_b) {
    auto actual = qualia::parse_trace_text(read_file(file_a));
    auto expected = qualia::parse_trace_text(read_file(file_b));
    for (const auto& entries : {&actual, &expected}) {
        for (const auto& e : *entries) {
            for (int id : e.states.ids()) {
                if (!qualia::StateId::valid(id))
                    std::cerr << "warning: unknown state id " << id << " at " << e.label << "\n";
            }
        }
    }
    auto diff = qualia::diff_trace(actual, expected);
    for (const auto& m : diff.mismatches) {
        std::cout << m.label << ": " << m.expected.to_string() << " != " << m.actual.to_string()
                  << "\n";
    }
    if (diff.length_delta != 0) std::cout << "length delta: " << diff.length_delta << "\n";
    if (diff.empty()) {
        std::cout << "traces are identical (" << actual.size() << " steps)\n";
        return kExitOk;
    }
    return kExitMismatch;
}

// Interactive mode: accepts scenario DSL statements plus a few commands.
// Declarations accumulate; `run` executes goals declared since the last run
// against one persistent agent. Bare percept/stimulus/instinct lines queue for
// the next cycle boundary.
class Repl {
public:
    Repl(std::uint64_t seed, const DataOptions& data)
        : seed_(seed),
          registry_(load_registry(data)),
          graph_(load_graph(data)),
          base_config_(load_config(data)) {}

    int loop() {
        std::cout << "qualia repl; 'help' lists commands\n";
        std::string line;
        while (std::cout << "qualia> " << std::flush, std::getline(std::cin, line)) {
            if (!handle(qualia::text::trim(line))) break;
        }
        return kExitOk;
    }

private:
    bool handle(const std::string& line) {
        if (line.empty()) return true;
        try {
            return dispatch(line);
        } catch (const qualia::Error& e) {
            std::cout << "error: " << e.what() << "\n";
            return true;
        }
    }

    bool dispatch(const std::string& line) {
        auto tokens = qualia::text::split_ws(line);
        const std::string& cmd = tokens[0];
        if (cmd == "quit" || cmd == "exit") return false;
        if (cmd == "help") {
            std::cout << "declarations: goal, stage, event at, expect, config, halt\n"
                      << "queued events: percept|stimulus|instinct ... (next cycle)\n"
                      << "commands: run, status, report, recall <query>, quit\n";
            return true;
        }
        if (cmd == "run") {
            run_pending();
            return true;
        }
        if (cmd == "status") {
            print_status();
            return true;
        }
        if (cmd == "report") {
            std::cout << build_report().to_text();
            return true;
        }
        if (cmd == "recall") {
            if (!agent_) {
                std::cout << "nothing recorded yet\n";
                return true;
            }
            auto pos = line.find(' ');
            auto hits = agent_->stores().recall(pos == std::string::npos ? "" : line.substr(pos),
                                                5);
            for (const auto& r : hits) std::cout << qualia::memory_log_line(r) << "\n";
            if (hits.empty()) std::cout << "no matching records\n";
            return true;
        }
        if (cmd == "percept") {
            auto p = qualia::ingest_percept(line);
            queued_.percepts.push_back(
                qualia::PerceptEvent{p.modality, p.label, p.confidence});
            std::cout << "queued percept for the next cycle\n";
            return true;
        }
        if (cmd == "stimulus" || cmd == "instinct") {
            // Reuse the scenario grammar by anchoring to a synthetic stage.
            queue_unanchored(line);
            std::cout << "queued " << cmd << " for the next cycle\n";
            return true;
        }
        if (cmd == "goal" || cmd == "stage" || cmd == "event" || cmd == "expect" ||
            cmd == "config" || cmd == "halt") {
            declarations_.push_back(line);
            parse_script();  // surface errors immediately
            return true;
        }
        std::cout << "unknown input; 'help' lists commands\n";
        return true;
    }

    qualia::Scenario parse_script() const {
        std::string script = "scenario \"repl\"\n";
        for (const auto& d : declarations_) script += d + "\n";
        return qualia::parse_scenario(script);
    }

    void queue_unanchored(const std::string& line) {
        std::string script = "scenario \"repl\"\ngoal q \"queued\" priority 0.5\n"
                             "stage q.next act \"queued\"\nevent at q.next " + line + "\n";
        auto parsed = qualia::parse_scenario(script);
        const auto& payload = parsed.events.front().payload;
        if (const auto* s = std::get_if<qualia::StimulusEvent>(&payload))
            queued_.stimuli.push_back(*s);
        else if (const auto* i = std::get_if<qualia::InstinctEvent>(&payload))
            queued_.instincts.push_back(*i);
    }

    void ensure_agent(const qualia::Scenario& scenario) {
        if (agent_) return;
        qualia::Config merged = base_config_;
        qualia::Config overrides;
        for (const auto& [k, v] : scenario.config_overrides) overrides.set(k, v);
        merged.merge(overrides);
        agent_.emplace(qualia::init_agent(merged, graph_, registry_, seed_));
    }

    void run_pending() {
        auto scenario = parse_script();
        ensure_agent(scenario);
        if (!agent_->alive()) {
            std::cout << "agent has halted\n";
            return;
        }
        size_t ran = 0;
        for (size_t i = executed_goals_; i < scenario.goals.size(); ++i) {
            const auto& decl = scenario.goals[i];
            qualia::Means means;
            for (const auto& stage : decl.stages)
                means.steps.push_back(qualia::MeansStep{stage.label, stage.action, stage.note,
                                                        stage.memorable});
            std::map<std::string, qualia::StageEvents> events;
            for (const auto& event : scenario.events) {
                if (event.goal_id != decl.goal.id) continue;
                auto& bundle = events[event.label];
                if (const auto* p = std::get_if<qualia::PerceptEvent>(&event.payload))
                    bundle.percepts.push_back(*p);
                else if (const auto* s = std::get_if<qualia::StimulusEvent>(&event.payload))
                    bundle.stimuli.push_back(*s);
                else if (const auto* in = std::get_if<qualia::InstinctEvent>(&event.payload))
                    bundle.instincts.push_back(*in);
                else if (const auto* t = std::get_if<qualia::TerminalKind>(&event.payload))
                    bundle.terminal = *t;
                else
                    bundle.halt = true;
            }
            if (!decl.stages.empty() && has_queued()) {
                auto& first = events[decl.stages.front().label];
                first.instincts.insert(first.instincts.end(), queued_.instincts.begin(),
                                       queued_.instincts.end());
                first.stimuli.insert(first.stimuli.end(), queued_.stimuli.begin(),
                                     queued_.stimuli.end());
                first.percepts.insert(first.percepts.end(), queued_.percepts.begin(),
                                      queued_.percepts.end());
                queued_ = {};
            }
            auto result = agent_->run_goal(decl.goal, means, events);
            ++executed_goals_;
            ++ran;
            if (result.outcome)
                std::cout << "goal " << result.outcome->goal_id << ": "
                          << qualia::to_string(result.outcome->result) << "\n";
            if (!agent_->alive()) {
                std::cout << "halted\n";
                return;
            }
        }
        if (ran == 0) {
            std::cout << "no pending goals\n";
            return;
        }
        auto thoughts = agent_->post_goal_phase();
        std::cout << "ran " << ran << " goal(s), " << thoughts.size() << " post-goal thought(s)\n";
    }

    void print_status() {
        if (!agent_) {
            std::cout << "agent not started; declare goals and 'run'\n";
            return;
        }
        std::cout << "tick=" << agent_->tick() << " alive=" << (agent_->alive() ? "yes" : "no")
                  << "\n";
        for (qualia::EmotionTag tag : qualia::kEmotionTags) {
            double v = agent_->emotion()[tag];
            if (v > 0.0)
                std::cout << "  " << qualia::to_string(tag) << "="
                          << qualia::text::fmt_fixed(v, 3) << "\n";
        }
        for (const auto& s : agent_->instincts()) {
            std::cout << "  " << qualia::to_string(s.kind) << "="
                      << qualia::text::fmt_fixed(s.level, 3) << " (threshold "
                      << qualia::text::fmt_fixed(s.threshold, 3) << ")\n";
        }
        for (const auto& g : agent_->goals())
            std::cout << "  goal " << g.id << " " << qualia::to_string(g.status) << "\n";
    }

    qualia::RunReport build_report() const {
        qualia::RunReport report;
        report.scenario = "repl";
        report.seed = seed_;
        if (agent_) {
            report.trace = agent_->trace();
            report.expressions = agent_->expressions();
            report.memory_log = agent_->memory_journal();
            report.thoughts = agent_->thoughts();
            report.outcomes = agent_->outcomes();
            report.final_goals = agent_->goals();
        }
        return report;
    }

    bool has_queued() const {
        return !queued_.instincts.empty() || !queued_.stimuli.empty() ||
               !queued_.percepts.empty();
    }

    std::uint64_t seed_;
    qualia::StateRegistry registry_;
    qualia::KnowledgeGraph graph_;
    qualia::Config base_config_;
    std::optional<qualia::Agent> agent_;
    std::vector<std::string> declarations_;
    size_t executed_goals_ = 0;
    qualia::StageEvents queued_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"affective consciousness-state scenario engine"};
    app.require_subcommand(1);

    std::string file;
    std::string trace_out;
    std::uint64_t seed = 0;
    bool strict = false;
    DataOptions data;

    auto* run = app.add_subcommand("run", "Run a scenario file and print the report");
    run->add_option("file", file, "Scenario file (.qs)")->required();
    run->add_option("--seed", seed, "Run seed (default 0)");
    run->add_option("--trace", trace_out, "Write the trace lines to this file");
    run->add_flag("--strict", strict, "Exit 1 unless the trace matches the expect lines");
    add_data_options(run, data);

    auto* validate = app.add_subcommand("validate", "Parse and statically check a scenario");
    validate->add_option("file", file, "Scenario file (.qs)")->required();
    add_data_options(validate, data);

    std::string diff_a;
    std::string diff_b;
    auto* diff = app.add_subcommand("diff", "Compare two trace files");
    diff->add_option("traceA", diff_a, "Actual trace file")->required();
    diff->add_option("traceB", diff_b, "Expected trace file")->required();

    auto* repl = app.add_subcommand("repl", "Interactive session");
    repl->add_option("--seed", seed, "Run seed (default 0)");
    add_data_options(repl, data);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(file, seed, trace_out, strict, data);
        if (validate->parsed()) return cmd_validate(file, data);
        if (diff->parsed()) return cmd_diff(diff_a, diff_b);
        if (repl->parsed()) return Repl(seed, data).loop();
    } catch (const qualia::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const qualia::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const qualia::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMismatch;
    }
    return kExitOk;
}
