#include "sr/phase1.hpp"

#include <deque>
#include <stdexcept>

#include "sr/random.hpp"

namespace sr {

PreferenceTable::PreferenceTable(const SRInstance& inst) : inst_(&inst) {
    const int n = inst.num_agents();
    present_.assign(static_cast<size_t>(n) * n, 1);
    for (AgentId a = 0; a < n; ++a) present_[idx(a, a)] = 0;
    list_len_.assign(n, n - 1);
    head_.assign(n, 0);
    tail_.assign(n, n - 2);
    semi_to_.assign(n, -1);
    holds_from_.assign(n, -1);
}

bool PreferenceTable::pair_present(AgentId a, AgentId b) const {
    if (a < 0 || a >= num_agents() || b < 0 || b >= num_agents())
        throw std::invalid_argument("agent id out of range");
    if (a == b) return false;
    return present_[idx(a, b)] != 0;
}

std::vector<AgentId> PreferenceTable::reduced_list(AgentId a) const {
    const auto& row = inst_->preference_list(a);
    std::vector<AgentId> out;
    out.reserve(list_len_[a]);
    for (AgentId b : row)
        if (present_[idx(a, b)]) out.push_back(b);
    return out;
}

std::optional<AgentId> PreferenceTable::first_on_list(AgentId a) const {
    if (a < 0 || a >= num_agents()) throw std::invalid_argument("agent id out of range");
    if (list_len_[a] == 0) return std::nullopt;
    const auto& row = inst_->preference_list(a);
    int& h = head_[a];
    while (!present_[idx(a, row[h])]) ++h;
    return row[h];
}

void PreferenceTable::remove_pair(AgentId a, AgentId b) {
    if (a < 0 || a >= num_agents() || b < 0 || b >= num_agents() || a == b)
        throw std::invalid_argument("remove_pair needs two distinct agents in range");
    if (!present_[idx(a, b)])
        throw std::invalid_argument("pair {" + std::to_string(a) + "," + std::to_string(b) +
                                    "} is not in the table (double removal?)");
    present_[idx(a, b)] = 0;
    present_[idx(b, a)] = 0;
    --list_len_[a];
    --list_len_[b];
    ++removals_;
}

std::optional<AgentId> PreferenceTable::semiengaged_to(AgentId a) const {
    if (a < 0 || a >= num_agents()) throw std::invalid_argument("agent id out of range");
    if (semi_to_[a] == -1) return std::nullopt;
    return semi_to_[a];
}

std::optional<AgentId> PreferenceTable::holds_proposal_from(AgentId a) const {
    if (a < 0 || a >= num_agents()) throw std::invalid_argument("agent id out of range");
    if (holds_from_[a] == -1) return std::nullopt;
    return holds_from_[a];
}

std::vector<std::pair<AgentId, AgentId>> PreferenceTable::present_pairs() const {
    std::vector<std::pair<AgentId, AgentId>> out;
    const int n = num_agents();
    for (AgentId a = 0; a < n; ++a)
        for (AgentId b = a + 1; b < n; ++b)
            if (present_[idx(a, b)]) out.emplace_back(a, b);
    return out;
}

namespace {

// Yields the next proposer under the chosen policy. Agents are fed back in
// via on_freed when a proposal of theirs gets displaced.
class Scheduler {
public:
    Scheduler(const OrderPolicy& policy, int num_agents)
        : kind_(policy.kind), num_agents_(num_agents), rng_(policy.seed) {
        switch (kind_) {
            case OrderPolicy::Kind::Fifo:
            case OrderPolicy::Kind::Lifo:
                for (AgentId a = 0; a < num_agents; ++a) queue_.push_back(a);
                break;
            case OrderPolicy::Kind::MinId:
                break;  // scans the table directly
            case OrderPolicy::Kind::Random:
                for (AgentId a = 0; a < num_agents; ++a) pool_.push_back(a);
                break;
            case OrderPolicy::Kind::Scripted: {
                script_ = policy.script;
                std::vector<char> in_script(num_agents, 0);
                for (AgentId a : script_) {
                    if (a < 0 || a >= num_agents)
                        throw std::invalid_argument("scripted order mentions agent " +
                                                    std::to_string(a) + ", out of range");
                    in_script[a] = 1;
                }
                for (AgentId a = 0; a < num_agents; ++a)
                    if (!in_script[a]) queue_.push_back(a);
                break;
            }
        }
    }

    std::optional<AgentId> next(const PreferenceTable& table) {
        auto wants_turn = [&](AgentId a) {
            return !table.semiengaged_to(a).has_value() && table.reduced_list_length(a) > 0;
        };
        switch (kind_) {
            case OrderPolicy::Kind::Fifo:
                while (!queue_.empty()) {
                    AgentId a = queue_.front();
                    queue_.pop_front();
                    if (wants_turn(a)) return a;
                }
                return std::nullopt;
            case OrderPolicy::Kind::Lifo:
                while (!queue_.empty()) {
                    AgentId a = queue_.back();
                    queue_.pop_back();
                    if (wants_turn(a)) return a;
                }
                return std::nullopt;
            case OrderPolicy::Kind::MinId:
                for (AgentId a = 0; a < num_agents_; ++a)
                    if (wants_turn(a)) return a;
                return std::nullopt;
            case OrderPolicy::Kind::Random: {
                // Drop agents whose lists ran out; they stay free but can
                // never propose again.
                size_t w = 0;
                for (size_t r = 0; r < pool_.size(); ++r)
                    if (table.reduced_list_length(pool_[r]) > 0) pool_[w++] = pool_[r];
                pool_.resize(w);
                if (pool_.empty()) return std::nullopt;
                int k = rng_.index(static_cast<int>(pool_.size()));
                AgentId a = pool_[k];
                pool_[k] = pool_.back();
                pool_.pop_back();
                return a;
            }
            case OrderPolicy::Kind::Scripted:
                while (script_pos_ < script_.size()) {
                    AgentId a = script_[script_pos_++];
                    if (wants_turn(a)) return a;
                }
                while (!queue_.empty()) {
                    AgentId a = queue_.front();
                    queue_.pop_front();
                    if (wants_turn(a)) return a;
                }
                return std::nullopt;
        }
        return std::nullopt;
    }

    void on_freed(AgentId a) {
        switch (kind_) {
            case OrderPolicy::Kind::Fifo:
            case OrderPolicy::Kind::Lifo:
                queue_.push_back(a);
                break;
            case OrderPolicy::Kind::MinId:
                break;
            case OrderPolicy::Kind::Random:
                pool_.push_back(a);
                break;
            case OrderPolicy::Kind::Scripted:
                queue_.push_back(a);  // freed agents fall through to the FIFO tail
                break;
        }
    }

private:
    OrderPolicy::Kind kind_;
    int num_agents_;
    std::deque<AgentId> queue_;
    std::vector<AgentId> pool_;
    std::vector<AgentId> script_;
    size_t script_pos_ = 0;
    Rng rng_;
};

}  // namespace

// Grants the run loop access to the proposal relation.
struct Phase1Runner {
    static Phase1Result run(const SRInstance& inst, const OrderPolicy& policy,
                            const ProposalObserver& observer) {
        Phase1Result result{PreferenceTable(inst), Phase1Outcome{}, Phase1Stats{}};
        PreferenceTable& table = result.table;
        Scheduler sched(policy, inst.num_agents());
        while (auto proposer = sched.next(table)) {
            AgentId x = *proposer;
            AgentId y = *table.first_on_list(x);  // nonempty by scheduler contract
            std::optional<AgentId> displaced = table.holds_proposal_from(y);
            if (displaced) {
                table.semi_to_[*displaced] = -1;
                ++result.stats.rejections;
                sched.on_freed(*displaced);
            }
            table.semi_to_[x] = y;
            table.holds_from_[y] = x;
            ++result.stats.proposals;

            // y discards everyone it likes less than x.
            const auto& row = inst.preference_list(y);
            int rx = inst.rank_of(y, x);
            for (int k = rx + 1; k <= table.tail_[y]; ++k)
                if (table.present_[table.idx(y, row[k])]) table.remove_pair(y, row[k]);
            table.tail_[y] = rx;

            if (displaced && table.pair_present(*displaced, y))
                throw std::logic_error("displaced proposer survived the truncation of " +
                                       std::to_string(y) + "'s list");
            if (observer) {
                ProposalEvent ev{result.stats.proposals, x, y, displaced};
                observer(ev, table);
            }
        }
        result.stats.removals = table.removals();

        AgentId empty = -1;
        for (AgentId a = 0; a < inst.num_agents(); ++a)
            if (table.reduced_list_length(a) == 0) {
                empty = a;
                break;
            }
        if (empty != -1)
            result.outcome = {Phase1Outcome::Kind::EmptyList, empty};
        else
            result.outcome = {Phase1Outcome::Kind::AllSemiengaged, -1};
        return result;
    }
};

Phase1Result run_phase1(const SRInstance& inst, const OrderPolicy& policy,
                        const ProposalObserver& observer) {
    return Phase1Runner::run(inst, policy, observer);
}

Phase1Classification classify(const Phase1Result& result) {
    const PreferenceTable& table = result.table;
    const int n = table.num_agents();
    for (AgentId a = 0; a < n; ++a)
        if (table.reduced_list_length(a) == 0)
            return {Phase1Classification::Verdict::Unsolvable, std::nullopt};
    bool all_single = true;
    for (AgentId a = 0; a < n; ++a)
        if (table.reduced_list_length(a) != 1) {
            all_single = false;
            break;
        }
    if (!all_single) return {Phase1Classification::Verdict::Inconclusive, std::nullopt};
    std::vector<AgentId> partner(n);
    for (AgentId a = 0; a < n; ++a) partner[a] = *table.first_on_list(a);
    // Symmetry of the table makes singletons mutual, so this cannot throw.
    return {Phase1Classification::Verdict::UniqueStable, Matching::from_partners(std::move(partner))};
}

}  // namespace sr
