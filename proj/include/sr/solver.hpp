#pragma once

// Full solvability decision: run the proposal round, and when that alone
// does not settle the instance, search the surviving pairs exhaustively.

#include <optional>
#include <string>

#include "sr/core.hpp"
#include "sr/phase1.hpp"

namespace sr {

enum class SolvePath { Phase1Empty, Phase1Perfect, Exhaustive };

std::string to_string(SolvePath path);

struct SolveStats {
    Phase1Stats phase1;
    long long search_nodes = 0;  // matchings tried by the exhaustive branch
};

struct SolveReport {
    bool solvable = false;
    std::optional<Matching> witness;  // a stable matching, iff solvable
    SolvePath path = SolvePath::Exhaustive;
    SolveStats stats;
};

// Decides whether inst admits a stable matching. The exhaustive branch
// enumerates perfect matchings restricted to pairs the proposal round left
// in the table (sound: discarded pairs are in no stable matching) and
// checks candidates against the full instance; it refuses instances above
// the cap. The witness, when present, is verified stable before returning.
SolveReport decide_solvability(const SRInstance& inst, const OrderPolicy& policy = OrderPolicy::fifo(),
                               int cap = 16);

// Convenience wrapper: the witness if solvable, nullopt otherwise.
std::optional<Matching> find_stable_matching(const SRInstance& inst,
                                             const OrderPolicy& policy = OrderPolicy::fifo(),
                                             int cap = 16);

}  // namespace sr
