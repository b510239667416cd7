#pragma once

// Seeded randomness helpers. Draw routines are hand-rolled on top of
// mt19937_64 (whose output sequence the standard pins down exactly) instead
// of <random> distributions, so a fixed seed gives the same instances,
// matrices, and CSV rows on every platform and standard library.

#include <cstdint>
#include <random>
#include <vector>

#include "sr/core.hpp"

namespace sr {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, bound). bound must be positive; modulo bias is fine here.
    std::uint64_t below(std::uint64_t bound) { return gen_() % bound; }

    int index(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[index(i + 1)]);
    }

private:
    std::mt19937_64 gen_;
};

// A uniformly random complete preference profile on num_agents agents.
inline SRInstance random_instance(int num_agents, Rng& rng) {
    std::vector<std::vector<AgentId>> rows(num_agents);
    for (AgentId a = 0; a < num_agents; ++a) {
        auto& row = rows[a];
        for (AgentId b = 0; b < num_agents; ++b)
            if (b != a) row.push_back(b);
        rng.shuffle(row);
    }
    return SRInstance(std::move(rows));
}

// A uniformly random perfect matching on num_agents agents.
inline Matching random_matching(int num_agents, Rng& rng) {
    std::vector<AgentId> pool;
    for (AgentId a = 0; a < num_agents; ++a) pool.push_back(a);
    std::vector<AgentId> partner(num_agents, -1);
    while (!pool.empty()) {
        AgentId u = pool.back();
        pool.pop_back();
        int k = rng.index(static_cast<int>(pool.size()));
        AgentId v = pool[k];
        pool.erase(pool.begin() + k);
        partner[u] = v;
        partner[v] = u;
    }
    return Matching::from_partners(std::move(partner));
}

}  // namespace sr
