#pragma once

// Shared fixtures: the 4-agent unsolvable instance and the two 3x3
// matrix pairs whose embeddings the golden tests trace step by step.

#include <set>
#include <utility>
#include <vector>

#include "sr/core.hpp"
#include "sr/embedding.hpp"

namespace fixtures {

// a: b c d / b: c a d / c: a b d / d: a b c, with ids a=0 b=1 c=2 d=3.
// Each agent's favorite prefers someone else, so every matching leaves a
// blocking pair; d's row can be anything without changing that.
inline sr::SRInstance four_agent_cycle(std::vector<sr::AgentId> d_row = {0, 1, 2}) {
    return sr::SRInstance({{1, 2, 3}, {2, 0, 3}, {0, 1, 3}, std::move(d_row)});
}

// x has ones at (1,1), (1,2), (3,2); y at (2,2), (3,3) — 1-based. Disjoint.
inline sr::BitMatrix disjoint_x3() {
    sr::BitMatrix x(3);
    x.set(0, 0, true);
    x.set(0, 1, true);
    x.set(2, 1, true);
    return x;
}

// x has ones at (1,1), (2,2), (3,2); shares (2,2) with y3 below.
inline sr::BitMatrix intersecting_x3() {
    sr::BitMatrix x(3);
    x.set(0, 0, true);
    x.set(1, 1, true);
    x.set(2, 1, true);
    return x;
}

// y has ones at (2,2), (3,3).
inline sr::BitMatrix y3() {
    sr::BitMatrix y(3);
    y.set(1, 1, true);
    y.set(2, 2, true);
    return y;
}

using PairSet = std::set<std::pair<sr::AgentId, sr::AgentId>>;

inline PairSet to_pair_set(const std::vector<std::pair<sr::AgentId, sr::AgentId>>& pairs) {
    return PairSet(pairs.begin(), pairs.end());
}

}  // namespace fixtures
