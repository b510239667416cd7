#pragma once

// Proposal round of the stable roommates algorithm: agents propose along
// their reduced lists, proposees discard everyone worse than the proposal
// they hold, and the table shrinks until every agent is semiengaged or
// someone's list runs out.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sr/core.hpp"

namespace sr {

// The mutable state of the proposal round: which pairs survive, plus the
// proposal relation (who is semiengaged to whom). Presence is symmetric:
// removing {a,b} deletes b from a's list and a from b's list.
class PreferenceTable {
public:
    explicit PreferenceTable(const SRInstance& inst);

    const SRInstance& instance() const { return *inst_; }
    int num_agents() const { return inst_->num_agents(); }

    bool pair_present(AgentId a, AgentId b) const;
    int reduced_list_length(AgentId a) const { return list_len_[a]; }

    // Surviving entries of a's list, in preference order.
    std::vector<AgentId> reduced_list(AgentId a) const;

    // Most preferred surviving entry, or nullopt if the list is empty.
    std::optional<AgentId> first_on_list(AgentId a) const;

    // Symmetric removal. Throws if the pair is not present (double removal
    // is always a logic error upstream).
    void remove_pair(AgentId a, AgentId b);

    // b = semiengaged_to(a) means a's proposal is currently held by b.
    // Inverse view: holds_proposal_from(b) = a.
    std::optional<AgentId> semiengaged_to(AgentId a) const;
    std::optional<AgentId> holds_proposal_from(AgentId a) const;

    long long removals() const { return removals_; }

    // Set of surviving pairs, normalized and sorted; handy for comparing
    // runs under different proposal orders.
    std::vector<std::pair<AgentId, AgentId>> present_pairs() const;

private:
    friend struct Phase1Runner;

    int idx(AgentId a, AgentId b) const { return a * num_agents() + b; }

    const SRInstance* inst_;
    std::vector<std::uint8_t> present_;  // num_agents^2, symmetric
    std::vector<int> list_len_;
    mutable std::vector<int> head_;  // lazy cursor: first possibly-present list position
    std::vector<int> tail_;  // last possibly-present position
    std::vector<AgentId> semi_to_;      // -1 = free (no outstanding proposal)
    std::vector<AgentId> holds_from_;   // -1 = holds nothing
    long long removals_ = 0;
};

// Which free agent proposes next. All policies are deterministic given
// their parameters; runs differ only in proposal order, and the final
// table provably does not depend on it.
struct OrderPolicy {
    enum class Kind { Fifo, Lifo, MinId, Random, Scripted };

    Kind kind = Kind::Fifo;
    std::uint64_t seed = 0;             // Random only
    std::vector<AgentId> script;        // Scripted only: one pass in this order,
                                        // then FIFO over whoever is still free

    static OrderPolicy fifo() { return {}; }
    static OrderPolicy lifo() { return {Kind::Lifo, 0, {}}; }
    static OrderPolicy min_id() { return {Kind::MinId, 0, {}}; }
    static OrderPolicy random(std::uint64_t seed) { return {Kind::Random, seed, {}}; }
    static OrderPolicy scripted(std::vector<AgentId> order) {
        return {Kind::Scripted, 0, std::move(order)};
    }
};

struct Phase1Stats {
    long long proposals = 0;
    long long rejections = 0;
    long long removals = 0;
    long long boolean_queries = 0;  // stays 0 here; filled by the query-model port
};

struct Phase1Outcome {
    enum class Kind { EmptyList, AllSemiengaged };
    Kind kind = Kind::AllSemiengaged;
    AgentId empty_agent = -1;  // lowest-id agent whose list ran out, if any
};

struct Phase1Result {
    PreferenceTable table;
    Phase1Outcome outcome;
    Phase1Stats stats;
};

// One proposal step: proposer was assigned to proposee, displacing
// rejected (if set). Fired after the step's removals are applied.
struct ProposalEvent {
    long long step = 0;
    AgentId proposer = -1;
    AgentId proposee = -1;
    std::optional<AgentId> rejected;
};

using ProposalObserver = std::function<void(const ProposalEvent&, const PreferenceTable&)>;

// Runs proposals until no free agent has a nonempty list. The observer, if
// given, sees every proposal against the table state right after it.
Phase1Result run_phase1(const SRInstance& inst, const OrderPolicy& policy = OrderPolicy::fifo(),
                        const ProposalObserver& observer = {});

struct Phase1Classification {
    enum class Verdict { Unsolvable, UniqueStable, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Matching> matching;  // set iff UniqueStable
};

// Reads the final table: an empty list means no stable matching exists; a
// table that is exactly a perfect matching is the unique stable matching;
// anything else is not decided by the proposal round alone.
Phase1Classification classify(const Phase1Result& result);

}  // namespace sr
