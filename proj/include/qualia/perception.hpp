#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>

#include "qualia/states.hpp"

namespace qualia {

// A symbolic recognition result standing in for a sensory pipeline.
struct Percept {
    Modality modality = Modality::other;
    std::string label;
    double confidence = 0.0;  // [0,1]
    int tick = 0;

    bool operator==(const Percept&) const = default;
};

struct FusedObservation {
    std::string label;
    double confidence = 0.0;
    std::set<Modality> contributing;
};

// Combines same-tick percepts. Per label the confidences accumulate as
// 1 - prod(1 - c_i); the best-supported label wins. Throws InvalidArgument on
// empty input or mixed ticks and AmbiguousObservation on an exact tie between
// distinct labels.
FusedObservation fuse(std::span<const Percept> percepts);

// Parses "percept <modality> <label> conf <c>". Throws ParseError with the
// column of the offending token.
Percept ingest_percept(std::string_view line);

}  // namespace qualia
