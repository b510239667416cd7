#include "sr/protocol.hpp"

#include <deque>
#include <sstream>

#include "sr/solver.hpp"

namespace sr {

std::string to_string(Party p) { return p == Party::Alice ? "Alice" : "Bob"; }

BatchPartition::BatchPartition(int n, std::vector<Batch> batches)
    : n_(n), batches_(std::move(batches)) {
    if (n < 1) throw std::invalid_argument("partition needs n >= 1");
    batch_of_.assign(4 * n, -1);
    owners_.reserve(batches_.size());
    for (int id = 0; id < static_cast<int>(batches_.size()); ++id) {
        const Batch& b = batches_[id];
        if (b.agents.empty())
            throw std::invalid_argument("batch " + b.name + " is empty");
        bool has_a = false, has_b = false;
        for (AgentId a : b.agents) {
            if (a < 0 || a >= 4 * n)
                throw std::invalid_argument("batch " + b.name + " mentions agent " +
                                            std::to_string(a) + ", out of range");
            if (batch_of_[a] != -1)
                throw std::invalid_argument("agent " + std::to_string(a) + " is in two batches");
            batch_of_[a] = id;
            Role r = embed_role_of(a, n).first;
            has_a = has_a || r == Role::A;
            has_b = has_b || r == Role::B;
        }
        if (has_a && has_b)
            throw std::invalid_argument("batch " + b.name +
                                        " mixes A-block and B-block agents; no single party "
                                        "could answer for it");
        owners_.push_back(has_a ? BatchOwner::Alice : has_b ? BatchOwner::Bob : BatchOwner::Either);
    }
    for (AgentId a = 0; a < 4 * n; ++a)
        if (batch_of_[a] == -1)
            throw std::invalid_argument("agent " + std::to_string(a) + " is in no batch");
}

BatchPartition BatchPartition::blocks(int n) {
    std::vector<Batch> batches(4);
    static const char* names = "ABCD";
    for (int r = 0; r < 4; ++r) {
        batches[r].name = std::string(1, names[r]);
        for (int i = 0; i < n; ++i)
            batches[r].agents.push_back(embed_agent(static_cast<Role>(r), i, n));
    }
    return BatchPartition(n, std::move(batches));
}

const BatchPartition::Batch& BatchPartition::batch(int id) const {
    if (id < 0 || id >= batch_count()) throw std::invalid_argument("batch id out of range");
    return batches_[id];
}

BatchOwner BatchPartition::owner(int id) const {
    if (id < 0 || id >= batch_count()) throw std::invalid_argument("batch id out of range");
    return owners_[id];
}

int BatchPartition::batch_of(AgentId a) const {
    if (a < 0 || a >= 4 * n_) throw std::invalid_argument("agent id out of range");
    return batch_of_[a];
}

Party BatchPartition::route(int id) const {
    switch (owner(id)) {
        case BatchOwner::Alice: return Party::Alice;
        case BatchOwner::Bob: return Party::Bob;
        case BatchOwner::Either: return Party::Alice;  // pinned convention
    }
    return Party::Alice;
}

BooleanQuery BooleanQuery::comparison(int batch, AgentId subject, AgentId first, AgentId second) {
    BooleanQuery q;
    q.kind = Kind::Comparison;
    q.batch = batch;
    q.subject = subject;
    q.first = first;
    q.second = second;
    return q;
}

BooleanQuery BooleanQuery::list_entry(int batch, AgentId subject, int position, AgentId candidate) {
    BooleanQuery q;
    q.kind = Kind::ListEntry;
    q.batch = batch;
    q.subject = subject;
    q.first = candidate;
    q.position = position;
    return q;
}

namespace {

// What one party can derive from its own matrix: the full preference
// lists of the blocks it owns, nothing about the rest.
struct PartyView {
    std::vector<std::vector<AgentId>> lists;  // empty = this party cannot see that agent
    std::vector<std::vector<int>> rank;

    bool knows(AgentId a) const { return !lists[a].empty(); }
};

PartyView make_view(Party party, const BitMatrix& own, int n) {
    PartyView view;
    const int num = 4 * n;
    view.lists.resize(num);
    view.rank.resize(num);
    static const Role alice_roles[] = {Role::A, Role::C, Role::D};
    static const Role bob_roles[] = {Role::B, Role::C, Role::D};
    const Role* roles = party == Party::Alice ? alice_roles : bob_roles;
    for (int r = 0; r < 3; ++r)
        for (int i = 0; i < n; ++i) {
            AgentId id = embed_agent(roles[r], i, n);
            // Only the role matching the party's matrix actually reads it.
            view.lists[id] = embedding_preference_list(roles[r], i, n, own, own);
            auto& rk = view.rank[id];
            rk.assign(num, -1);
            for (int pos = 0; pos < num - 1; ++pos) rk[view.lists[id][pos]] = pos;
        }
    return view;
}

bool answer_query(const PartyView& alice, const PartyView& bob, const BatchPartition& part,
                  const BooleanQuery& q, Party& responder) {
    if (q.batch < 0 || q.batch >= part.batch_count())
        throw ProtocolViolation("query declares batch " + std::to_string(q.batch) +
                                ", which does not exist");
    const int num = part.num_agents();
    if (q.subject < 0 || q.subject >= num)
        throw ProtocolViolation("query subject out of range");
    if (part.batch_of(q.subject) != q.batch)
        throw ProtocolViolation("query reads agent " + std::to_string(q.subject) +
                                " outside its declared batch " + part.batch(q.batch).name);
    responder = part.route(q.batch);
    const PartyView& view = responder == Party::Alice ? alice : bob;
    if (!view.knows(q.subject))
        throw std::logic_error("routing sent a query to a party that cannot answer it");
    switch (q.kind) {
        case BooleanQuery::Kind::Comparison: {
            if (q.first < 0 || q.first >= num || q.second < 0 || q.second >= num)
                throw ProtocolViolation("comparison query names an agent out of range");
            if (q.first == q.second || q.first == q.subject || q.second == q.subject)
                throw ProtocolViolation("comparison query needs three distinct agents");
            return view.rank[q.subject][q.first] < view.rank[q.subject][q.second];
        }
        case BooleanQuery::Kind::ListEntry: {
            if (q.first < 0 || q.first >= num || q.first == q.subject)
                throw ProtocolViolation("list-entry query names an invalid candidate");
            if (q.position < 0 || q.position >= num - 1)
                throw ProtocolViolation("list-entry query position out of range");
            return view.lists[q.subject][q.position] == q.first;
        }
    }
    throw std::logic_error("unreachable query kind");
}

class SimulationOracle : public QueryOracle {
public:
    SimulationOracle(const PartyView& alice, const PartyView& bob, const BatchPartition& part)
        : alice_(alice), bob_(bob), part_(part) {}

    bool ask(const BooleanQuery& q) override {
        Party responder = Party::Alice;
        bool bit = answer_query(alice_, bob_, part_, q, responder);
        records_.push_back(QueryRecord{q, responder, bit});
        return bit;
    }

    std::vector<QueryRecord> take_records() { return std::move(records_); }

private:
    const PartyView& alice_;
    const PartyView& bob_;
    const BatchPartition& part_;
    std::vector<QueryRecord> records_;
};

}  // namespace

ProtocolTranscript simulate(const QueryAlgorithm& algorithm, const BitMatrix& x, const BitMatrix& y,
                            const BatchPartition& partition) {
    if (x.n() != partition.n() || y.n() != partition.n())
        throw std::invalid_argument("matrix size does not match the partition");
    PartyView alice = make_view(Party::Alice, x, partition.n());
    PartyView bob = make_view(Party::Bob, y, partition.n());
    SimulationOracle oracle(alice, bob, partition);
    ProtocolTranscript t;
    t.answer = algorithm(oracle, partition);
    t.records = oracle.take_records();
    t.bits_exchanged = static_cast<long long>(t.records.size());
    return t;
}

std::vector<bool> replay_answers(const std::vector<QueryRecord>& records, const BitMatrix& x,
                                 const BitMatrix& y, const BatchPartition& partition) {
    if (x.n() != partition.n() || y.n() != partition.n())
        throw std::invalid_argument("matrix size does not match the partition");
    PartyView alice = make_view(Party::Alice, x, partition.n());
    PartyView bob = make_view(Party::Bob, y, partition.n());
    std::vector<bool> bits;
    bits.reserve(records.size());
    for (const QueryRecord& r : records) {
        Party responder = Party::Alice;
        bits.push_back(answer_query(alice, bob, partition, r.query, responder));
    }
    return bits;
}

namespace {

// Phase-1 port against the oracle. Keeps its own proposal bookkeeping;
// the only facts it ever needs from the instance are "does u prefer v to
// w" bits, because a pair is out of the table exactly when one side holds
// a proposal it strictly prefers to the other agent.
struct QueryPhase1 {
    QueryOracle& oracle;
    const BatchPartition& part;
    int num;
    std::vector<AgentId> holds, semi;
    std::vector<std::uint8_t> gone;  // pairs learned to be out of the table
    ReferenceRunStats stats;

    QueryPhase1(QueryOracle& o, const BatchPartition& p)
        : oracle(o),
          part(p),
          num(p.num_agents()),
          holds(num, -1),
          semi(num, -1),
          gone(static_cast<size_t>(num) * num, 0) {}

    bool cmp(AgentId subject, AgentId a, AgentId b) {
        ++stats.comparison_queries;
        return oracle.ask(BooleanQuery::comparison(part.batch_of(subject), subject, a, b));
    }

    bool entry(AgentId subject, int pos, AgentId candidate) {
        ++stats.entry_queries;
        return oracle.ask(BooleanQuery::list_entry(part.batch_of(subject), subject, pos, candidate));
    }

    void mark_gone(AgentId u, AgentId v) {
        if (!gone[static_cast<size_t>(u) * num + v]) {
            gone[static_cast<size_t>(u) * num + v] = 1;
            gone[static_cast<size_t>(v) * num + u] = 1;
            ++stats.phase1.removals;
        }
    }

    bool pair_present(AgentId u, AgentId v) {
        if (gone[static_cast<size_t>(u) * num + v]) return false;
        AgentId w = holds[v];
        if (w != -1 && w != u && cmp(v, w, u)) {  // v holds someone it likes better
            mark_gone(u, v);
            return false;
        }
        w = holds[u];
        if (w != -1 && w != v && cmp(u, w, v)) {
            mark_gone(u, v);
            return false;
        }
        return true;
    }

    // Most preferred agent still pairable with u, by tournament.
    AgentId head(AgentId u) {
        AgentId best = -1;
        for (AgentId v = 0; v < num; ++v) {
            if (v == u || !pair_present(u, v)) continue;
            if (best == -1 || cmp(u, v, best)) best = v;
        }
        return best;
    }

    // Returns the outcome of the proposal round; nullopt answer means the
    // table is not decided by it.
    std::optional<bool> run_proposals() {
        std::deque<AgentId> queue;
        for (AgentId a = 0; a < num; ++a) queue.push_back(a);
        const long long proposal_bound = static_cast<long long>(num) * num + 4 * num;
        while (!queue.empty()) {
            AgentId u = queue.front();
            queue.pop_front();
            if (semi[u] != -1) continue;
            AgentId y = head(u);
            if (y == -1) return false;  // u's list ran out: no stable matching exists
            AgentId z = holds[y];
            if (z != -1) {
                semi[z] = -1;
                mark_gone(z, y);  // displaced by someone y strictly prefers
                ++stats.phase1.rejections;
                queue.push_back(z);
            }
            semi[u] = y;
            holds[y] = u;
            if (++stats.phase1.proposals > proposal_bound)
                throw std::logic_error("proposal round failed to terminate");
        }
        // Everyone is semiengaged. Decided iff every list is a singleton.
        for (AgentId u = 0; u < num; ++u)
            for (AgentId v = 0; v < num; ++v) {
                if (v == u || v == semi[u]) continue;
                if (pair_present(u, v)) return std::nullopt;
            }
        for (AgentId u = 0; u < num; ++u)
            if (semi[semi[u]] != u)
                throw std::logic_error("singleton lists failed to pair up");
        return true;
    }

    // Learns every preference list outright and solves locally. Only
    // reached on inputs where the promise does not hold.
    bool materialize_and_solve(int cap) {
        stats.used_fallback = true;
        std::vector<std::vector<AgentId>> rows(num);
        for (AgentId u = 0; u < num; ++u) {
            std::vector<char> placed(num, 0);
            placed[u] = 1;
            int remaining = num - 1;
            for (int pos = 0; pos < num - 1; ++pos) {
                AgentId found = -1;
                for (AgentId v = 0; v < num && found == -1; ++v) {
                    if (placed[v]) continue;
                    if (remaining == 1 || entry(u, pos, v)) found = v;  // last one is forced
                }
                if (found == -1)
                    throw std::logic_error("no candidate matched a list position");
                placed[found] = 1;
                --remaining;
                rows[u].push_back(found);
            }
        }
        SRInstance inst(std::move(rows));
        return decide_solvability(inst, OrderPolicy::fifo(), cap).solvable;
    }
};

}  // namespace

ReferenceRunStats run_reference_algorithm(QueryOracle& oracle, const BatchPartition& partition,
                                          int cap) {
    QueryPhase1 port(oracle, partition);
    std::optional<bool> verdict = port.run_proposals();
    port.stats.solvable = verdict ? *verdict : port.materialize_and_solve(cap);
    port.stats.phase1.boolean_queries = port.stats.comparison_queries + port.stats.entry_queries;
    return port.stats;
}

ReferenceSimulation simulate_reference(const BitMatrix& x, const BitMatrix& y,
                                       const BatchPartition& partition, int cap) {
    ReferenceSimulation out;
    out.transcript = simulate(
        [&](QueryOracle& oracle, const BatchPartition& part) {
            out.stats = run_reference_algorithm(oracle, part, cap);
            return out.stats.solvable;
        },
        x, y, partition);
    return out;
}

std::string format_transcript(const ProtocolTranscript& transcript,
                              const BatchPartition& partition) {
    std::ostringstream out;
    const int n = partition.n();
    long long seq = 0;
    for (const QueryRecord& r : transcript.records) {
        const BooleanQuery& q = r.query;
        out << ++seq << ' ' << partition.batch(q.batch).name << ' ';
        if (q.kind == BooleanQuery::Kind::Comparison)
            out << "cmp " << embed_agent_name(q.subject, n) << ' ' << embed_agent_name(q.first, n)
                << ' ' << embed_agent_name(q.second, n);
        else
            out << "entry " << embed_agent_name(q.subject, n) << ' ' << q.position << ' '
                << embed_agent_name(q.first, n);
        out << ' ' << to_string(r.responder) << ' ' << (r.bit ? 1 : 0) << '\n';
    }
    out << "ANSWER " << (transcript.answer ? 1 : 0) << " BITS " << transcript.bits_exchanged
        << '\n';
    return out.str();
}

}  // namespace sr
