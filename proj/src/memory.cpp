#include "qualia/memory.hpp"

#include <algorithm>
#include <set>

#include "qualia/errors.hpp"
#include "qualia/textio.hpp"

namespace qualia {

const char* to_string(MemoryOrigin origin) {
    switch (origin) {
        case MemoryOrigin::stage: return "stage";
        case MemoryOrigin::challenge: return "challenge";
        case MemoryOrigin::outcome: return "outcome";
    }
    return "?";
}

MemoryStores::MemoryStores(MemoryParams params) : params_(params) {}

MemoryRecord MemoryStores::record_experience(const std::string& event,
                                             const EmotionVector& emotion,
                                             const StateSeq& states, int tick,
                                             MemoryOrigin origin) {
    MemoryRecord record;
    record.id = next_id_++;
    record.event = event;
    record.emotion = emotion;
    record.states = states;
    record.salience = emotion.max_component();
    record.tick = tick;
    record.origin = origin;
    record.long_term = record.salience >= params_.long_threshold;

    short_term_.push_back(record);
    while (short_term_.size() > params_.short_capacity) short_term_.pop_front();
    if (record.long_term) long_term_.push_back(record);
    return record;
}

namespace {

bool matches(const MemoryRecord& record, const std::vector<std::string>& query_tokens) {
    auto event_tokens = text::tokens_lower(record.event);
    std::set<std::string> have(event_tokens.begin(), event_tokens.end());
    for (const auto& q : query_tokens) {
        if (!have.count(q)) return false;
    }
    return true;
}

}  // namespace

std::vector<MemoryRecord> MemoryStores::recall(const std::string& query, int limit) const {
    if (limit < 1) throw InvalidArgument("recall: limit must be >= 1");
    const auto query_tokens = text::tokens_lower(query);

    std::vector<MemoryRecord> hits;
    std::set<std::uint64_t> seen;
    for (const auto& r : long_term_) {
        if (matches(r, query_tokens) && seen.insert(r.id).second) hits.push_back(r);
    }
    for (const auto& r : short_term_) {
        if (matches(r, query_tokens) && seen.insert(r.id).second) hits.push_back(r);
    }
    std::sort(hits.begin(), hits.end(), [](const MemoryRecord& a, const MemoryRecord& b) {
        if (a.salience != b.salience) return a.salience > b.salience;
        if (a.tick != b.tick) return a.tick > b.tick;
        return a.id > b.id;
    });
    if (hits.size() > static_cast<size_t>(limit)) hits.resize(static_cast<size_t>(limit));
    return hits;
}

std::string memory_log_line(const MemoryRecord& record) {
    std::string stores = record.long_term ? "stores(S,L)" : "stores(S)";
    return std::to_string(record.tick) + "|" + text::fmt_fixed(record.salience, 3) + "|" +
           stores + "|" + record.states.to_string() + "|" + record.event;
}

}  // namespace qualia
