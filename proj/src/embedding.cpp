#include "sr/embedding.hpp"

#include <algorithm>
#include <stdexcept>

#include "sr/random.hpp"

namespace sr {

BitMatrix::BitMatrix(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("bit matrix needs n >= 1");
    bits_.assign(static_cast<size_t>(n) * n, 0);
}

int BitMatrix::check(int i) const {
    if (i < 0 || i >= n_) throw std::invalid_argument("bit matrix index out of range");
    return i;
}

int BitMatrix::count_ones() const {
    int c = 0;
    for (auto b : bits_) c += b;
    return c;
}

int intersection_count(const BitMatrix& x, const BitMatrix& y) {
    if (x.n() != y.n()) throw std::invalid_argument("bit matrices differ in size");
    int c = 0;
    for (int i = 0; i < x.n(); ++i)
        for (int j = 0; j < x.n(); ++j)
            if (x.at(i, j) && y.at(i, j)) ++c;
    return c;
}

bool disj(const BitMatrix& x, const BitMatrix& y) { return intersection_count(x, y) == 0; }

AgentId embed_agent(Role role, int index, int n) {
    if (n < 1) throw std::invalid_argument("embedding needs n >= 1");
    if (index < 0 || index >= n) throw std::invalid_argument("block index out of range");
    return static_cast<int>(role) * n + index;
}

std::pair<Role, int> embed_role_of(AgentId id, int n) {
    if (n < 1 || id < 0 || id >= 4 * n) throw std::invalid_argument("agent id out of range");
    return {static_cast<Role>(id / n), id % n};
}

std::string embed_agent_name(AgentId id, int n) {
    auto [role, index] = embed_role_of(id, n);
    static const char* letters = "abcd";
    return std::string(1, letters[static_cast<int>(role)]) + std::to_string(index + 1);
}

std::vector<AgentId> embedding_preference_list(Role role, int index, int n, const BitMatrix& x,
                                               const BitMatrix& y, Rng* tie_break) {
    if (x.n() != n || y.n() != n) throw std::invalid_argument("matrix size does not match n");
    const AgentId self = embed_agent(role, index, n);
    std::vector<AgentId> list;
    list.reserve(4 * n - 1);
    std::vector<char> placed(4 * n, 0);
    placed[self] = 1;

    auto add_tier = [&](std::vector<AgentId> tier) {
        if (tie_break) tie_break->shuffle(tier);
        for (AgentId a : tier) {
            placed[a] = 1;
            list.push_back(a);
        }
    };
    auto rest = [&] {
        std::vector<AgentId> tier;
        for (AgentId a = 0; a < 4 * n; ++a)
            if (!placed[a]) tier.push_back(a);
        return tier;
    };

    switch (role) {
        case Role::A: {  // matched b's, own c, everyone else
            std::vector<AgentId> ones;
            for (int j = 0; j < n; ++j)
                if (x.at(index, j)) ones.push_back(embed_agent(Role::B, j, n));
            add_tier(std::move(ones));
            add_tier({embed_agent(Role::C, index, n)});
            add_tier(rest());
            break;
        }
        case Role::B: {  // matched c's, matched a's, own d, everyone else
            std::vector<AgentId> cs, as;
            for (int i = 0; i < n; ++i)
                if (y.at(i, index)) {
                    cs.push_back(embed_agent(Role::C, i, n));
                    as.push_back(embed_agent(Role::A, i, n));
                }
            add_tier(std::move(cs));
            add_tier(std::move(as));
            add_tier({embed_agent(Role::D, index, n)});
            add_tier(rest());
            break;
        }
        case Role::C: {  // own a, all of B, everyone else
            add_tier({embed_agent(Role::A, index, n)});
            std::vector<AgentId> bs;
            for (int j = 0; j < n; ++j) bs.push_back(embed_agent(Role::B, j, n));
            add_tier(std::move(bs));
            add_tier(rest());
            break;
        }
        case Role::D: {  // own b, everyone else
            add_tier({embed_agent(Role::B, index, n)});
            add_tier(rest());
            break;
        }
    }
    return list;
}

EmbeddedInstance build_embedding(const BitMatrix& x, const BitMatrix& y,
                                 std::optional<std::uint64_t> tie_break_seed) {
    if (x.n() != y.n()) throw std::invalid_argument("bit matrices differ in size");
    const int n = x.n();
    std::optional<Rng> rng;
    if (tie_break_seed) rng.emplace(*tie_break_seed);
    std::vector<std::vector<AgentId>> rows(4 * n);
    for (AgentId id = 0; id < 4 * n; ++id) {
        auto [role, index] = embed_role_of(id, n);
        rows[id] = embedding_preference_list(role, index, n, x, y, rng ? &*rng : nullptr);
    }
    return EmbeddedInstance{SRInstance(std::move(rows)), n};
}

EmbeddedInstance build_embedding_pinned(const BitMatrix& x, const BitMatrix& y) {
    if (x.n() != y.n()) throw std::invalid_argument("bit matrices differ in size");
    const int n = x.n();
    std::vector<std::vector<AgentId>> rows(4 * n);
    for (AgentId id = 0; id < 4 * n; ++id) {
        auto [role, index] = embed_role_of(id, n);
        rows[id] = embedding_preference_list(role, index, n, x, y, nullptr);
        if (role == Role::C) {
            // c_i's list is [a_i] ++ B-tier ++ rest; rewrite the B-tier
            // with the x-ones of row i in front.
            std::vector<AgentId> tier;
            for (int pass = 0; pass < 2; ++pass)
                for (int j = 0; j < n; ++j)
                    if (x.at(index, j) == (pass == 0)) tier.push_back(embed_agent(Role::B, j, n));
            std::copy(tier.begin(), tier.end(), rows[id].begin() + 1);
        }
    }
    return EmbeddedInstance{SRInstance(std::move(rows)), n};
}

Matching canonical_matching(int n) {
    if (n < 1) throw std::invalid_argument("embedding needs n >= 1");
    std::vector<AgentId> partner(4 * n, -1);
    for (int i = 0; i < n; ++i) {
        partner[embed_agent(Role::A, i, n)] = embed_agent(Role::C, i, n);
        partner[embed_agent(Role::C, i, n)] = embed_agent(Role::A, i, n);
        partner[embed_agent(Role::B, i, n)] = embed_agent(Role::D, i, n);
        partner[embed_agent(Role::D, i, n)] = embed_agent(Role::B, i, n);
    }
    return Matching::from_partners(std::move(partner));
}

std::string to_string(PromiseKind kind) {
    return kind == PromiseKind::Disjoint ? "Disjoint" : "UniquelyIntersecting";
}

std::pair<BitMatrix, BitMatrix> sample_promise_input(int n, PromiseKind kind, std::uint64_t seed,
                                                     double density) {
    if (n < 1) throw std::invalid_argument("embedding needs n >= 1");
    if (density <= 0.0 || density >= 1.0)
        throw std::invalid_argument("density must lie strictly between 0 and 1");
    Rng rng(seed);
    BitMatrix x(n), y(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rng.chance(density)) x.set(i, j, true);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!x.at(i, j) && rng.chance(density)) y.set(i, j, true);
    if (kind == PromiseKind::UniquelyIntersecting) {
        int cell = rng.index(n * n);
        x.set(cell / n, cell % n, true);
        y.set(cell / n, cell % n, true);
    }
    return {std::move(x), std::move(y)};
}

}  // namespace sr
