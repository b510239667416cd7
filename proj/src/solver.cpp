#include "sr/solver.hpp"

#include <stdexcept>

namespace sr {

std::string to_string(SolvePath path) {
    switch (path) {
        case SolvePath::Phase1Empty: return "Phase1-Empty";
        case SolvePath::Phase1Perfect: return "Phase1-Perfect";
        case SolvePath::Exhaustive: return "Exhaustive";
    }
    return "?";
}

namespace {

// Backtracks over perfect matchings that only use pairs still in the
// table, checking each completion against the full instance.
struct TableSearch {
    const SRInstance& inst;
    const PreferenceTable& table;
    std::vector<AgentId> partner;
    long long nodes = 0;
    std::optional<Matching> found;

    TableSearch(const SRInstance& i, const PreferenceTable& t)
        : inst(i), table(t), partner(i.num_agents(), -1) {}

    bool search() {
        AgentId u = 0;
        const int n = inst.num_agents();
        while (u < n && partner[u] != -1) ++u;
        if (u == n) {
            ++nodes;
            Matching m = Matching::from_partners(partner);
            if (is_stable(inst, m).stable) {
                found = std::move(m);
                return true;
            }
            return false;
        }
        for (AgentId v : table.reduced_list(u)) {
            if (partner[v] != -1) continue;
            partner[u] = v;
            partner[v] = u;
            if (search()) return true;
            partner[u] = -1;
            partner[v] = -1;
        }
        return false;
    }
};

}  // namespace

SolveReport decide_solvability(const SRInstance& inst, const OrderPolicy& policy, int cap) {
    SolveReport report;
    Phase1Result phase1 = run_phase1(inst, policy);
    report.stats.phase1 = phase1.stats;

    Phase1Classification cls = classify(phase1);
    switch (cls.verdict) {
        case Phase1Classification::Verdict::Unsolvable:
            report.solvable = false;
            report.path = SolvePath::Phase1Empty;
            return report;
        case Phase1Classification::Verdict::UniqueStable: {
            // The table being a perfect matching proves stability, but the
            // claim is cheap to re-check against the full instance.
            if (!is_stable(inst, *cls.matching).stable)
                throw std::logic_error("proposal round produced a non-stable matching table");
            report.solvable = true;
            report.witness = cls.matching;
            report.path = SolvePath::Phase1Perfect;
            return report;
        }
        case Phase1Classification::Verdict::Inconclusive:
            break;
    }

    if (inst.num_agents() > cap)
        throw std::invalid_argument("exhaustive search over " + std::to_string(inst.num_agents()) +
                                    " agents exceeds the cap of " + std::to_string(cap));
    TableSearch search(inst, phase1.table);
    search.search();
    report.stats.search_nodes = search.nodes;
    report.path = SolvePath::Exhaustive;
    report.solvable = search.found.has_value();
    report.witness = std::move(search.found);
    return report;
}

std::optional<Matching> find_stable_matching(const SRInstance& inst, const OrderPolicy& policy,
                                             int cap) {
    return decide_solvability(inst, policy, cap).witness;
}

}  // namespace sr
