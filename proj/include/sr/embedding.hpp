#pragma once

// Reduction from set disjointness to stable roommates. A pair of n-by-n
// bit matrices (x, y) turns into an instance on 4n agents, split into
// blocks A, B, C, D of n agents each, whose solvability mirrors whether
// the matrices share a one.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sr/core.hpp"

namespace sr {

class BitMatrix {
public:
    explicit BitMatrix(int n);

    int n() const { return n_; }
    bool at(int i, int j) const { return bits_[check(i) * n_ + check(j)] != 0; }
    void set(int i, int j, bool v) { bits_[check(i) * n_ + check(j)] = v ? 1 : 0; }
    int count_ones() const;

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

private:
    int check(int i) const;

    int n_;
    std::vector<std::uint8_t> bits_;
};

// Number of positions where both matrices have a one.
int intersection_count(const BitMatrix& x, const BitMatrix& y);

// True iff the matrices share no one anywhere.
bool disj(const BitMatrix& x, const BitMatrix& y);

// The four agent blocks. Ids are laid out block-major: a_i -> i,
// b_j -> n+j, c_i -> 2n+i, d_j -> 3n+j (block indices 0-based).
enum class Role { A, B, C, D };

AgentId embed_agent(Role role, int index, int n);
std::pair<Role, int> embed_role_of(AgentId id, int n);
std::string embed_agent_name(AgentId id, int n);  // "a1".."dN", 1-based like the block index

// Preference list of one embedded agent. A-agents read row `index` of x,
// B-agents read column `index` of y; C and D agents need no matrix at all
// (pass whatever is handy). Ties inside a block-tier are broken by
// ascending id, or shuffled when a tie-break source is given.
class Rng;
std::vector<AgentId> embedding_preference_list(Role role, int index, int n, const BitMatrix& x,
                                               const BitMatrix& y, Rng* tie_break = nullptr);

struct EmbeddedInstance {
    SRInstance instance;
    int n = 0;  // block size; instance has 4n agents

    AgentId agent(Role role, int index) const { return embed_agent(role, index, n); }
    std::pair<Role, int> role_of(AgentId id) const { return embed_role_of(id, n); }
    std::string agent_name(AgentId id) const { return embed_agent_name(id, n); }
};

// Builds the instance for (x, y). Accepts any pair of equal-size square
// matrices; nothing here assumes the matrices intersect at most once.
// tie_break_seed shuffles the order inside each "don't care" tier; the
// default keeps the canonical ascending order.
EmbeddedInstance build_embedding(const BitMatrix& x, const BitMatrix& y,
                                 std::optional<std::uint64_t> tie_break_seed = std::nullopt);

// Variant construction: identical templates, except each c_i lists the
// b_j with x_ij = 1 ahead of the other b_j (ascending inside each group).
// When x and y share exactly one cell (k, l), that order puts b_l first
// among the b_j with y_kj = 1 on c_k's list: column l is an x-one of row
// k, the row's other x-ones are not y-ones, and every other y-one sorts
// behind the x-ones. That closes the solvable loophole worked out in
// ANALYSIS.md — the pinned instance is solvable if and only if the
// matrices are disjoint, over all inputs sharing at most one cell. The
// price is that C-block preferences now depend on x.
EmbeddedInstance build_embedding_pinned(const BitMatrix& x, const BitMatrix& y);

// {a_i, c_i} for every i plus {b_j, d_j} for every j — the matching the
// construction is built around.
Matching canonical_matching(int n);

enum class PromiseKind { Disjoint, UniquelyIntersecting };

std::string to_string(PromiseKind kind);

// Seeded sampler for matrix pairs honoring the promise: either no shared
// one, or exactly one. density is the Bernoulli rate for x's cells (and
// for y's cells wherever x is zero).
std::pair<BitMatrix, BitMatrix> sample_promise_input(int n, PromiseKind kind, std::uint64_t seed,
                                                     double density = 0.3);

}  // namespace sr
