#pragma once

// Core types for the stable roommates problem: instances, matchings,
// blocking-pair checks, and a brute-force enumeration oracle.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sr {

using AgentId = int;

// A complete preference profile: num_agents() is even, and every agent
// ranks all the others. Immutable once constructed; the constructor
// rejects anything that is not a permutation profile.
class SRInstance {
public:
    explicit SRInstance(std::vector<std::vector<AgentId>> pref_lists);

    int num_agents() const { return static_cast<int>(pref_.size()); }
    const std::vector<AgentId>& preference_list(AgentId a) const { return pref_[check(a)]; }

    // Position of b in a's list, 0 = most preferred.
    int rank_of(AgentId a, AgentId b) const;

    // True iff a ranks b strictly above c. a, b, c must be distinct.
    bool prefers(AgentId a, AgentId b, AgentId c) const;

private:
    AgentId check(AgentId a) const;

    std::vector<std::vector<AgentId>> pref_;
    std::vector<std::vector<int>> rank_;  // rank_[a][b], -1 on the diagonal
};

// A perfect matching on the agents of an instance. Pairs are kept
// normalized (lo < hi, sorted) so equal matchings compare equal.
class Matching {
public:
    Matching(int num_agents, const std::vector<std::pair<AgentId, AgentId>>& pairs);

    // partner[a] = a's partner; must be a fixed-point-free involution.
    static Matching from_partners(std::vector<AgentId> partner);

    int num_agents() const { return static_cast<int>(partner_.size()); }
    AgentId partner_of(AgentId a) const;
    bool contains(AgentId u, AgentId v) const;
    const std::vector<std::pair<AgentId, AgentId>>& pairs() const { return pairs_; }
    const std::vector<AgentId>& partners() const { return partner_; }

    friend bool operator==(const Matching& a, const Matching& b) { return a.partner_ == b.partner_; }
    friend bool operator!=(const Matching& a, const Matching& b) { return !(a == b); }

private:
    Matching() = default;

    std::vector<AgentId> partner_;
    std::vector<std::pair<AgentId, AgentId>> pairs_;
};

struct BlockingPairReport {
    std::pair<AgentId, AgentId> blocking_pair;  // normalized lo < hi
    AgentId partner_of_first = -1;
    AgentId partner_of_second = -1;
};

struct StabilityReport {
    bool stable = false;
    std::optional<BlockingPairReport> witness;  // set iff !stable
};

// True iff {u,v} is not in m and both u and v strictly prefer each other
// to their partners in m. Throws if {u,v} is matched in m.
bool is_blocking_pair(const SRInstance& inst, const Matching& m, AgentId u, AgentId v);

// Scans unmatched pairs in lexicographic order and reports the first
// blocking pair found, so the witness is deterministic.
StabilityReport is_stable(const SRInstance& inst, const Matching& m);

// Visits every perfect matching on num_agents agents exactly once, in the
// order produced by always pairing the lowest unmatched agent with each
// remaining agent in increasing order. There are (num_agents-1)!! of them;
// refuses to run above the cap.
void enumerate_perfect_matchings(int num_agents,
                                 const std::function<void(const Matching&)>& visit,
                                 int cap = 16);

// All stable matchings of inst, by exhaustive enumeration. The independent
// ground truth the other solvers are tested against.
std::vector<Matching> brute_force_stable_set(const SRInstance& inst, int cap = 16);

}  // namespace sr
