#include "qualia/states.hpp"

#include <algorithm>

#include "qualia/errors.hpp"
#include "qualia/textio.hpp"

namespace qualia {

StateId::StateId(int id) : id_(id) {
    if (!valid(id)) throw InvalidState("state id out of range: " + std::to_string(id));
}

const char* to_string(StateLayer layer) {
    return layer == StateLayer::physical ? "physical" : "metaphysical";
}

std::optional<StateLayer> layer_from_name(std::string_view name) {
    if (name == "physical") return StateLayer::physical;
    if (name == "metaphysical") return StateLayer::metaphysical;
    return std::nullopt;
}

const char* to_string(Verb verb) {
    switch (verb) {
        case Verb::perceive: return "perceive";
        case Verb::decide: return "decide";
        case Verb::act: return "act";
        case Verb::communicate: return "communicate";
        case Verb::emote: return "emote";
        case Verb::express: return "express";
        case Verb::recall: return "recall";
        case Verb::relax: return "relax";
        case Verb::think: return "think";
        case Verb::observe: return "observe";
        case Verb::wait: return "wait";
    }
    return "?";
}

std::optional<Verb> verb_from_name(std::string_view name) {
    static const Verb all[] = {Verb::perceive, Verb::decide,  Verb::act,   Verb::communicate,
                               Verb::emote,    Verb::express, Verb::recall, Verb::relax,
                               Verb::think,    Verb::observe, Verb::wait};
    for (Verb v : all) {
        if (name == to_string(v)) return v;
    }
    return std::nullopt;
}

const char* to_string(Modality m) {
    switch (m) {
        case Modality::vision: return "vision";
        case Modality::audio: return "audio";
        case Modality::touch: return "touch";
        case Modality::other: return "other";
    }
    return "?";
}

std::optional<Modality> modality_from_name(std::string_view name) {
    static const Modality all[] = {Modality::vision, Modality::audio, Modality::touch,
                                   Modality::other};
    for (Modality m : all) {
        if (name == to_string(m)) return m;
    }
    return std::nullopt;
}

std::string ActionDescriptor::key() const {
    std::string out = qualia::to_string(verb);
    for (Verb m : modifiers) {  // std::set orders by enum value
        out += '+';
        out += qualia::to_string(m);
    }
    return out;
}

std::string ActionDescriptor::to_string() const {
    std::string out = key();
    if (channel) {
        out += " channel=";
        out += qualia::to_string(*channel);
    }
    return out;
}

ActionDescriptor parse_action(std::string_view token) {
    auto parts = text::split(token, '+');
    ActionDescriptor action;
    for (size_t i = 0; i < parts.size(); ++i) {
        auto verb = verb_from_name(parts[i]);
        if (!verb) throw ParseError("unknown verb '" + parts[i] + "'", 1, static_cast<int>(i + 1));
        if (i == 0) {
            action.verb = *verb;
        } else if (*verb == action.verb) {
            throw ParseError("modifier repeats the main verb '" + parts[i] + "'", 1,
                             static_cast<int>(i + 1));
        } else {
            action.modifiers.insert(*verb);
        }
    }
    return action;
}

StateSeq StateSeq::checked(std::vector<int> ids) {
    std::set<int> seen;
    for (int id : ids) {
        if (!StateId::valid(id))
            throw InvalidState("state id out of range: " + std::to_string(id));
        if (!seen.insert(id).second)
            throw InvalidArgument("duplicate state id in sequence: " + std::to_string(id));
    }
    StateSeq seq;
    seq.ids_ = std::move(ids);
    return seq;
}

StateSeq StateSeq::unchecked(std::vector<int> ids) {
    StateSeq seq;
    seq.ids_ = std::move(ids);
    return seq;
}

bool StateSeq::contains(int id) const {
    return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
}

std::string StateSeq::to_string() const {
    std::string out = "[";
    for (size_t i = 0; i < ids_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(ids_[i]);
    }
    out += ']';
    return out;
}

ValidationReport validate_trace(std::span<const TraceStep> trace) {
    ValidationReport report;
    std::map<int, int> index_seen;
    int prev_index = 0;
    for (size_t pos = 0; pos < trace.size(); ++pos) {
        const TraceStep& step = trace[pos];
        auto [it, inserted] = index_seen.emplace(step.index, static_cast<int>(pos));
        if (!inserted) {
            report.findings.push_back(
                {static_cast<int>(pos), "duplicate step index " + std::to_string(step.index)});
        } else if (step.index <= prev_index) {
            report.findings.push_back(
                {static_cast<int>(pos), "step index " + std::to_string(step.index) +
                                            " does not increase (previous " +
                                            std::to_string(prev_index) + ")"});
        }
        prev_index = std::max(prev_index, step.index);
        if (step.states.empty()) {
            report.findings.push_back({static_cast<int>(pos), "empty state sequence"});
        }
        for (int id : step.states.ids()) {
            if (!StateId::valid(id)) {
                report.findings.push_back(
                    {static_cast<int>(pos), "unknown state id " + std::to_string(id)});
            }
        }
    }
    return report;
}

StateRegistry StateRegistry::parse(std::string_view content) {
    StateRegistry reg;
    std::set<std::string> names;
    auto lines = text::split(content, '\n');
    for (size_t ln = 0; ln < lines.size(); ++ln) {
        const int line_no = static_cast<int>(ln + 1);
        std::string line = lines[ln];
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto tokens = text::split_ws(line);
        if (tokens.empty()) continue;

        if (tokens[0] == "state") {
            // state <id> <name...> <layer>
            if (tokens.size() < 4)
                throw ParseError("state declaration needs id, name and layer", line_no, 1);
            int id = 0;
            if (!text::parse_int(tokens[1], id) || !StateId::valid(id))
                throw ParseError("bad state id '" + tokens[1] + "'", line_no, 7);
            auto layer = layer_from_name(tokens.back());
            if (!layer)
                throw ParseError("bad layer '" + tokens.back() + "'", line_no,
                                 static_cast<int>(line.rfind(tokens.back()) + 1));
            std::vector<std::string> name_parts(tokens.begin() + 2, tokens.end() - 1);
            std::string name = text::join(name_parts, " ");
            if (reg.states_[id - 1])
                throw ParseError("state " + std::to_string(id) + " declared twice", line_no, 1);
            if (!names.insert(name).second)
                throw ParseError("state name '" + name + "' is not unique", line_no, 1);
            reg.states_[id - 1] = StateDescriptor{id, std::move(name), *layer};
        } else if (tokens[0] == "rule") {
            // rule <verb>[+modifier...] -> <id>,<id>,...
            if (tokens.size() != 4 || tokens[2] != "->")
                throw ParseError("rule syntax is 'rule <action> -> <id>,...'", line_no, 1);
            ActionDescriptor action;
            try {
                action = parse_action(tokens[1]);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), line_no, 6);
            }
            std::vector<int> ids;
            for (const auto& part : text::split(tokens[3], ',')) {
                int id = 0;
                if (!text::parse_int(part, id))
                    throw ParseError("bad state id '" + part + "' in rule", line_no, 1);
                ids.push_back(id);
            }
            StateSeq seq;
            try {
                seq = StateSeq::checked(std::move(ids));
            } catch (const Error& e) {
                throw ParseError(e.what(), line_no, 1);
            }
            if (seq.empty()) throw ParseError("rule with empty state sequence", line_no, 1);
            std::string key = action.key();
            if (!reg.rule_index_.emplace(key, seq).second)
                throw ParseError("rule '" + key + "' declared twice", line_no, 1);
            reg.rules_.emplace_back(std::move(key), std::move(seq));
        } else {
            throw ParseError("unknown keyword '" + tokens[0] + "'", line_no, 1);
        }
    }
    for (int id = 1; id <= 10; ++id) {
        if (!reg.states_[id - 1])
            throw ParseError("state " + std::to_string(id) + " is not declared",
                             static_cast<int>(lines.size()), 1);
    }
    return reg;
}

const StateDescriptor& StateRegistry::resolve(StateId id) const {
    return *states_[id.value() - 1];
}

const StateDescriptor& StateRegistry::resolve(int id) const { return resolve(StateId(id)); }

StateSeq StateRegistry::derive(const ActionDescriptor& action) const {
    auto it = rule_index_.find(action.key());
    if (it == rule_index_.end())
        throw UnknownAction("no rule for action '" + action.key() + "'");
    return it->second;
}

bool StateRegistry::has_rule(const ActionDescriptor& action) const {
    return rule_index_.count(action.key()) > 0;
}

}  // namespace qualia
