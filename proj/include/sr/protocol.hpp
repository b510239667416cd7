#pragma once

// Two-party Boolean-query protocol over an embedded instance. One party
// knows x (and with it the preference lists of blocks A, C, D), the other
// knows y (blocks B, C, D). An algorithm probes the instance one Boolean
// predicate at a time; every query is answered by a single party from its
// own matrix alone and costs exactly one bit.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sr/core.hpp"
#include "sr/embedding.hpp"
#include "sr/phase1.hpp"

namespace sr {

enum class Party { Alice, Bob };

std::string to_string(Party p);

enum class BatchOwner { Alice, Bob, Either };

// Agents grouped into query batches. A batch may never contain both an
// A-block and a B-block agent: no single party could answer for it.
class BatchPartition {
public:
    struct Batch {
        std::string name;
        std::vector<AgentId> agents;
    };

    BatchPartition(int n, std::vector<Batch> batches);

    // One batch per role block, named A, B, C, D.
    static BatchPartition blocks(int n);

    int n() const { return n_; }
    int num_agents() const { return 4 * n_; }
    int batch_count() const { return static_cast<int>(batches_.size()); }
    const Batch& batch(int id) const;
    BatchOwner owner(int id) const;
    int batch_of(AgentId a) const;

    // The party that answers queries against this batch. Batches neither
    // side is forced to own go to Alice by convention.
    Party route(int id) const;

private:
    int n_;
    std::vector<Batch> batches_;
    std::vector<BatchOwner> owners_;
    std::vector<int> batch_of_;
};

struct BooleanQuery {
    enum class Kind { Comparison, ListEntry };

    Kind kind = Kind::Comparison;
    int batch = -1;        // declared batch; subject must belong to it
    AgentId subject = -1;  // whose preference list the predicate reads
    AgentId first = -1;    // Comparison: "subject prefers first to second?"
                           // ListEntry: the candidate agent
    AgentId second = -1;   // Comparison only
    int position = -1;     // ListEntry only: 0-based index into subject's full list

    static BooleanQuery comparison(int batch, AgentId subject, AgentId first, AgentId second);
    static BooleanQuery list_entry(int batch, AgentId subject, int position, AgentId candidate);
};

// Raised when a query breaks the protocol contract, e.g. reads an agent
// outside its declared batch.
class ProtocolViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QueryRecord {
    BooleanQuery query;
    Party responder = Party::Alice;
    bool bit = false;
};

struct ProtocolTranscript {
    std::vector<QueryRecord> records;
    bool answer = false;
    long long bits_exchanged = 0;  // one per query; the final answer is not counted
};

class QueryOracle {
public:
    virtual ~QueryOracle() = default;
    virtual bool ask(const BooleanQuery& q) = 0;
};

using QueryAlgorithm = std::function<bool(QueryOracle&, const BatchPartition&)>;

// Runs the algorithm against the instance embedded from (x, y). Each query
// is validated, routed to a party, and answered from that party's matrix
// alone; the full instance is never consulted directly.
ProtocolTranscript simulate(const QueryAlgorithm& algorithm, const BitMatrix& x, const BitMatrix& y,
                            const BatchPartition& partition);

// Re-answers a recorded query sequence against a different input pair.
// Queries routed to a party whose matrix is unchanged must come back with
// identical bits; that is what makes the one-bit simulation sound.
std::vector<bool> replay_answers(const std::vector<QueryRecord>& records, const BitMatrix& x,
                                 const BitMatrix& y, const BatchPartition& partition);

struct ReferenceRunStats {
    bool solvable = false;
    long long comparison_queries = 0;
    long long entry_queries = 0;
    Phase1Stats phase1;        // proposals/rejections as simulated; removals = pairs learned gone
    bool used_fallback = false;  // list materialization kicked in (never on promise inputs)
};

// Query-model port of the proposal round: tracks proposals locally,
// decides pair survival with at most two comparison queries, and picks
// proposal targets by tournament over the surviving candidates. Ends with
// the empty-list / perfect-matching classification; anything inconclusive
// falls back to materializing the lists entry by entry (list-entry
// queries) and solving locally. cap bounds that fallback's search.
ReferenceRunStats run_reference_algorithm(QueryOracle& oracle, const BatchPartition& partition,
                                          int cap = 16);

struct ReferenceSimulation {
    ProtocolTranscript transcript;
    ReferenceRunStats stats;
};

ReferenceSimulation simulate_reference(const BitMatrix& x, const BitMatrix& y,
                                       const BatchPartition& partition, int cap = 16);

// One line per query: "<seq> <batch> <kind> <args> <responder> <bit>",
// then "ANSWER <0|1> BITS <count>". Agents appear by block name (a1, b2, ...).
std::string format_transcript(const ProtocolTranscript& transcript,
                              const BatchPartition& partition);

}  // namespace sr
