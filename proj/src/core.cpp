#include "sr/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace sr {

namespace {

std::string agent_str(AgentId a) { return std::to_string(a); }

}  // namespace

SRInstance::SRInstance(std::vector<std::vector<AgentId>> pref_lists) : pref_(std::move(pref_lists)) {
    const int n = static_cast<int>(pref_.size());
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("instance needs a positive even number of agents, got " +
                                    std::to_string(n));
    rank_.assign(n, std::vector<int>(n, -1));
    for (AgentId a = 0; a < n; ++a) {
        const auto& row = pref_[a];
        if (static_cast<int>(row.size()) != n - 1)
            throw std::invalid_argument("agent " + agent_str(a) + " lists " +
                                        std::to_string(row.size()) + " agents, expected " +
                                        std::to_string(n - 1));
        for (int pos = 0; pos < n - 1; ++pos) {
            AgentId b = row[pos];
            if (b < 0 || b >= n)
                throw std::invalid_argument("agent " + agent_str(a) + " lists unknown agent " +
                                            agent_str(b));
            if (b == a)
                throw std::invalid_argument("agent " + agent_str(a) + " lists itself");
            if (rank_[a][b] != -1)
                throw std::invalid_argument("agent " + agent_str(a) + " lists agent " +
                                            agent_str(b) + " twice");
            rank_[a][b] = pos;
        }
    }
}

AgentId SRInstance::check(AgentId a) const {
    if (a < 0 || a >= num_agents())
        throw std::invalid_argument("agent id " + agent_str(a) + " out of range");
    return a;
}

int SRInstance::rank_of(AgentId a, AgentId b) const {
    check(a);
    check(b);
    if (a == b) throw std::invalid_argument("rank_of needs two distinct agents");
    return rank_[a][b];
}

bool SRInstance::prefers(AgentId a, AgentId b, AgentId c) const {
    check(a);
    check(b);
    check(c);
    if (a == b || a == c || b == c)
        throw std::invalid_argument("prefers needs three distinct agents");
    return rank_[a][b] < rank_[a][c];
}

Matching::Matching(int num_agents, const std::vector<std::pair<AgentId, AgentId>>& pairs) {
    if (num_agents < 2 || num_agents % 2 != 0)
        throw std::invalid_argument("matching needs a positive even number of agents");
    partner_.assign(num_agents, -1);
    for (auto [u, v] : pairs) {
        if (u < 0 || u >= num_agents || v < 0 || v >= num_agents)
            throw std::invalid_argument("matching pair mentions an agent out of range");
        if (u == v) throw std::invalid_argument("matching pairs an agent with itself");
        if (partner_[u] != -1 || partner_[v] != -1)
            throw std::invalid_argument("agent " + agent_str(partner_[u] != -1 ? u : v) +
                                        " appears in two pairs");
        partner_[u] = v;
        partner_[v] = u;
    }
    for (AgentId a = 0; a < num_agents; ++a)
        if (partner_[a] == -1)
            throw std::invalid_argument("agent " + agent_str(a) + " is unmatched");
    pairs_.reserve(num_agents / 2);
    for (AgentId a = 0; a < num_agents; ++a)
        if (a < partner_[a]) pairs_.emplace_back(a, partner_[a]);
}

Matching Matching::from_partners(std::vector<AgentId> partner) {
    const int n = static_cast<int>(partner.size());
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("matching needs a positive even number of agents");
    Matching m;
    for (AgentId a = 0; a < n; ++a) {
        AgentId b = partner[a];
        if (b < 0 || b >= n || b == a || partner[b] != a)
            throw std::invalid_argument("partner vector is not a fixed-point-free involution");
    }
    m.partner_ = std::move(partner);
    m.pairs_.reserve(n / 2);
    for (AgentId a = 0; a < n; ++a)
        if (a < m.partner_[a]) m.pairs_.emplace_back(a, m.partner_[a]);
    return m;
}

AgentId Matching::partner_of(AgentId a) const {
    if (a < 0 || a >= num_agents())
        throw std::invalid_argument("agent id " + agent_str(a) + " out of range");
    return partner_[a];
}

bool Matching::contains(AgentId u, AgentId v) const { return partner_of(u) == v; }

bool is_blocking_pair(const SRInstance& inst, const Matching& m, AgentId u, AgentId v) {
    if (m.num_agents() != inst.num_agents())
        throw std::invalid_argument("matching and instance disagree on the number of agents");
    if (u == v) throw std::invalid_argument("a blocking pair needs two distinct agents");
    if (m.contains(u, v))
        throw std::invalid_argument("pair {" + agent_str(u) + "," + agent_str(v) +
                                    "} is matched; blocking is only defined for unmatched pairs");
    return inst.prefers(u, v, m.partner_of(u)) && inst.prefers(v, u, m.partner_of(v));
}

StabilityReport is_stable(const SRInstance& inst, const Matching& m) {
    if (m.num_agents() != inst.num_agents())
        throw std::invalid_argument("matching and instance disagree on the number of agents");
    const int n = inst.num_agents();
    for (AgentId u = 0; u < n; ++u)
        for (AgentId v = u + 1; v < n; ++v) {
            if (m.contains(u, v)) continue;
            if (inst.prefers(u, v, m.partner_of(u)) && inst.prefers(v, u, m.partner_of(v))) {
                StabilityReport r;
                r.stable = false;
                r.witness = BlockingPairReport{{u, v}, m.partner_of(u), m.partner_of(v)};
                return r;
            }
        }
    return StabilityReport{true, std::nullopt};
}

namespace {

void enumerate_rec(std::vector<AgentId>& partner, int num_agents,
                   const std::function<void(const Matching&)>& visit) {
    AgentId u = 0;
    while (u < num_agents && partner[u] != -1) ++u;
    if (u == num_agents) {
        visit(Matching::from_partners(partner));
        return;
    }
    for (AgentId v = u + 1; v < num_agents; ++v) {
        if (partner[v] != -1) continue;
        partner[u] = v;
        partner[v] = u;
        enumerate_rec(partner, num_agents, visit);
        partner[u] = -1;
        partner[v] = -1;
    }
}

}  // namespace

void enumerate_perfect_matchings(int num_agents,
                                 const std::function<void(const Matching&)>& visit, int cap) {
    if (num_agents < 2 || num_agents % 2 != 0)
        throw std::invalid_argument("enumeration needs a positive even number of agents");
    if (num_agents > cap)
        throw std::invalid_argument("enumeration over " + std::to_string(num_agents) +
                                    " agents exceeds the cap of " + std::to_string(cap));
    std::vector<AgentId> partner(num_agents, -1);
    enumerate_rec(partner, num_agents, visit);
}

std::vector<Matching> brute_force_stable_set(const SRInstance& inst, int cap) {
    std::vector<Matching> stable;
    enumerate_perfect_matchings(
        inst.num_agents(),
        [&](const Matching& m) {
            if (is_stable(inst, m).stable) stable.push_back(m);
        },
        cap);
    return stable;
}

}  // namespace sr
