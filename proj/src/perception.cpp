#include "qualia/perception.hpp"

#include <map>

#include "qualia/errors.hpp"
#include "qualia/textio.hpp"

namespace qualia {

FusedObservation fuse(std::span<const Percept> percepts) {
    if (percepts.empty()) throw InvalidArgument("fuse: no percepts");
    const int tick = percepts.front().tick;
    for (const auto& p : percepts) {
        if (p.tick != tick) throw InvalidArgument("fuse: percepts span multiple ticks");
    }

    struct Acc {
        double miss = 1.0;  // prod(1 - c_i)
        std::set<Modality> modalities;
    };
    std::map<std::string, Acc> by_label;
    for (const auto& p : percepts) {
        auto& acc = by_label[p.label];
        acc.miss *= 1.0 - p.confidence;
        acc.modalities.insert(p.modality);
    }

    const std::string* best = nullptr;
    double best_conf = -1.0;
    bool tied = false;
    for (const auto& [label, acc] : by_label) {
        const double conf = 1.0 - acc.miss;
        if (conf > best_conf) {
            best = &label;
            best_conf = conf;
            tied = false;
        } else if (conf == best_conf) {
            tied = true;
        }
    }
    if (tied)
        throw AmbiguousObservation("fused confidence tie at " + text::fmt_fixed(best_conf, 3));

    return FusedObservation{*best, best_conf, by_label.at(*best).modalities};
}

Percept ingest_percept(std::string_view line) {
    auto column_of = [&](const std::string& token, size_t nth) {
        // 1-based column of the nth whitespace token.
        size_t pos = 0;
        size_t count = 0;
        while (pos < line.size()) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            size_t end = pos;
            while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
            if (count == nth) return static_cast<int>(pos + 1);
            ++count;
            pos = end;
        }
        (void)token;
        return static_cast<int>(line.size() + 1);
    };

    auto tokens = text::split_ws(line);
    if (tokens.size() != 5 || tokens[0] != "percept" || tokens[3] != "conf")
        throw ParseError("expected 'percept <modality> <label> conf <c>'", 1, 1);

    auto modality = modality_from_name(tokens[1]);
    if (!modality)
        throw ParseError("unknown modality '" + tokens[1] + "'", 1, column_of(tokens[1], 1));

    double conf = 0.0;
    if (!text::parse_double(tokens[4], conf) || conf < 0.0 || conf > 1.0)
        throw ParseError("confidence must be a number in [0,1], got '" + tokens[4] + "'", 1,
                         column_of(tokens[4], 4));

    return Percept{*modality, tokens[2], conf, 0};
}

}  // namespace qualia
