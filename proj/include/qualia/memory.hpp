#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "qualia/affect.hpp"
#include "qualia/states.hpp"

namespace qualia {

struct MemoryParams {
    std::size_t short_capacity = 7;   // FIFO bound on the short-term store
    double long_threshold = 0.6;      // salience gate for long-term routing
};

enum class MemoryOrigin { stage, challenge, outcome };

const char* to_string(MemoryOrigin origin);

struct MemoryRecord {
    std::uint64_t id = 0;
    std::string event;
    EmotionVector emotion;
    StateSeq states;
    double salience = 0.0;  // max emotion component at write time
    int tick = 0;
    MemoryOrigin origin = MemoryOrigin::stage;
    bool long_term = false;  // whether the record was also routed long-term
};

// Short-term FIFO plus salience-gated long-term store, owned by one agent.
class MemoryStores {
public:
    explicit MemoryStores(MemoryParams params = {});

    // Appends to short-term (evicting the oldest past capacity) and, when the
    // salience reaches the gate, to long-term as well. Returns the record.
    MemoryRecord record_experience(const std::string& event, const EmotionVector& emotion,
                                   const StateSeq& states, int tick,
                                   MemoryOrigin origin = MemoryOrigin::stage);

    // Records whose event text contains every query token, ordered by
    // (salience desc, tick desc, id desc), long-term searched first,
    // duplicates removed. Throws InvalidArgument when limit < 1.
    std::vector<MemoryRecord> recall(const std::string& query, int limit) const;

    const std::deque<MemoryRecord>& short_term() const { return short_term_; }
    const std::vector<MemoryRecord>& long_term() const { return long_term_; }
    const MemoryParams& params() const { return params_; }
    std::size_t total_size() const { return short_term_.size() + long_term_.size(); }

private:
    MemoryParams params_;
    std::deque<MemoryRecord> short_term_;
    std::vector<MemoryRecord> long_term_;
    std::uint64_t next_id_ = 1;
};

// Log line in the export format: tick|salience|stores(S[,L])|states|event
std::string memory_log_line(const MemoryRecord& record);

}  // namespace qualia
