#include "sr/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace sr {

namespace {

// Strips the comment and splits on whitespace.
std::vector<std::string> tokens_of(const std::string& raw) {
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

bool valid_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name)
        if (c == ':' || c == '#' || std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

AgentId NamedInstance::id_of(const std::string& name) const {
    auto it = ids.find(name);
    if (it == ids.end()) throw std::invalid_argument("unknown agent \"" + name + "\"");
    return it->second;
}

const std::string& NamedInstance::name_of(AgentId a) const {
    if (a < 0 || a >= static_cast<AgentId>(names.size()))
        throw std::invalid_argument("agent id " + std::to_string(a) + " out of range");
    return names[a];
}

NamedInstance make_named(SRInstance instance, std::vector<std::string> names) {
    if (static_cast<int>(names.size()) != instance.num_agents())
        throw std::invalid_argument("name count does not match the instance");
    std::unordered_map<std::string, AgentId> ids;
    for (AgentId a = 0; a < static_cast<AgentId>(names.size()); ++a) {
        if (!valid_name(names[a]))
            throw std::invalid_argument("invalid agent name \"" + names[a] + "\"");
        if (!ids.emplace(names[a], a).second)
            throw std::invalid_argument("duplicate agent name \"" + names[a] + "\"");
    }
    return NamedInstance{std::move(instance), std::move(names), std::move(ids)};
}

NamedInstance with_default_names(SRInstance instance) {
    std::vector<std::string> names;
    for (int a = 0; a < instance.num_agents(); ++a) names.push_back(std::to_string(a + 1));
    return make_named(std::move(instance), std::move(names));
}

NamedInstance named_embedding(const EmbeddedInstance& embedded) {
    std::vector<std::string> names;
    for (int a = 0; a < embedded.instance.num_agents(); ++a) names.push_back(embedded.agent_name(a));
    return make_named(embedded.instance, std::move(names));
}

NamedInstance parse_instance(std::istream& in) {
    std::string raw;
    int lineno = 0;

    std::vector<std::string> roster;
    std::unordered_map<std::string, AgentId> ids;
    int header_line = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = tokens_of(raw);
        if (toks.empty()) continue;
        if (toks[0] != "agents:")
            throw ParseError(lineno, "expected the roster line \"agents: <name> <name> ...\"");
        roster.assign(toks.begin() + 1, toks.end());
        header_line = lineno;
        break;
    }
    if (roster.empty()) throw ParseError(lineno, "no roster line found");
    if (roster.size() < 2 || roster.size() % 2 != 0)
        throw ParseError(header_line, "need a positive even number of agents, got " +
                                          std::to_string(roster.size()));
    for (size_t i = 0; i < roster.size(); ++i) {
        if (!valid_name(roster[i]))
            throw ParseError(header_line, "invalid agent name \"" + roster[i] + "\"");
        if (!ids.emplace(roster[i], static_cast<AgentId>(i)).second)
            throw ParseError(header_line, "duplicate agent \"" + roster[i] + "\"");
    }

    const int n = static_cast<int>(roster.size());
    std::vector<std::vector<AgentId>> rows(n);
    std::vector<int> row_line(n, 0);
    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = tokens_of(raw);
        if (toks.empty()) continue;
        std::string owner = toks[0];
        if (owner.size() < 2 || owner.back() != ':')
            throw ParseError(lineno, "expected \"<agent>: <agent> <agent> ...\"");
        owner.pop_back();
        auto it = ids.find(owner);
        if (it == ids.end()) throw ParseError(lineno, "unknown agent \"" + owner + "\"");
        AgentId a = it->second;
        if (row_line[a])
            throw ParseError(lineno, "agent \"" + owner + "\" already has a row on line " +
                                         std::to_string(row_line[a]));
        row_line[a] = lineno;
        std::vector<char> seen(n, 0);
        for (size_t i = 1; i < toks.size(); ++i) {
            auto jt = ids.find(toks[i]);
            if (jt == ids.end()) throw ParseError(lineno, "unknown agent \"" + toks[i] + "\"");
            if (jt->second == a)
                throw ParseError(lineno, "agent \"" + owner + "\" lists itself");
            if (seen[jt->second])
                throw ParseError(lineno, "agent \"" + toks[i] + "\" listed twice");
            seen[jt->second] = 1;
            rows[a].push_back(jt->second);
        }
        if (static_cast<int>(rows[a].size()) != n - 1)
            throw ParseError(lineno, "agent \"" + owner + "\" lists " +
                                         std::to_string(rows[a].size()) + " agents, expected " +
                                         std::to_string(n - 1));
    }
    for (AgentId a = 0; a < n; ++a)
        if (!row_line[a])
            throw ParseError(lineno, "agent \"" + roster[a] + "\" has no preference row");

    return NamedInstance{SRInstance(std::move(rows)), std::move(roster), std::move(ids)};
}

std::string serialize_instance(const NamedInstance& inst) {
    std::ostringstream out;
    out << "agents:";
    for (const auto& name : inst.names) out << ' ' << name;
    out << '\n';
    for (AgentId a = 0; a < inst.instance.num_agents(); ++a) {
        out << inst.names[a] << ':';
        for (AgentId b : inst.instance.preference_list(a)) out << ' ' << inst.names[b];
        out << '\n';
    }
    return out.str();
}

Matching parse_matching(std::istream& in, const NamedInstance& inst) {
    std::string raw;
    int lineno = 0;
    std::vector<std::pair<AgentId, AgentId>> pairs;
    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = tokens_of(raw);
        if (toks.empty()) continue;
        if (toks.size() != 2)
            throw ParseError(lineno, "expected \"<agent> <agent>\", got " +
                                         std::to_string(toks.size()) + " tokens");
        auto a = inst.ids.find(toks[0]);
        auto b = inst.ids.find(toks[1]);
        if (a == inst.ids.end()) throw ParseError(lineno, "unknown agent \"" + toks[0] + "\"");
        if (b == inst.ids.end()) throw ParseError(lineno, "unknown agent \"" + toks[1] + "\"");
        pairs.emplace_back(a->second, b->second);
    }
    try {
        return Matching(inst.instance.num_agents(), pairs);
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, std::string("not a perfect matching: ") + e.what());
    }
}

std::string serialize_matching(const Matching& m, const NamedInstance& inst) {
    std::ostringstream out;
    for (auto [u, v] : m.pairs()) out << inst.name_of(u) << ' ' << inst.name_of(v) << '\n';
    return out.str();
}

BitMatrix parse_bit_matrix(std::istream& in) {
    std::string raw;
    int lineno = 0;
    int n = -1;
    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = tokens_of(raw);
        if (toks.empty()) continue;
        if (toks.size() != 1 || toks[0].rfind("n=", 0) != 0)
            throw ParseError(lineno, "expected the size line \"n=<count>\"");
        try {
            size_t used = 0;
            n = std::stoi(toks[0].substr(2), &used);
            if (used != toks[0].size() - 2) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError(lineno, "cannot read the size from \"" + toks[0] + "\"");
        }
        if (n < 1) throw ParseError(lineno, "need n >= 1");
        break;
    }
    if (n < 1) throw ParseError(lineno, "no size line found");
    BitMatrix m(n);
    int row = 0;
    while (row < n && std::getline(in, raw)) {
        ++lineno;
        auto toks = tokens_of(raw);
        if (toks.empty()) continue;
        if (toks.size() != 1 || static_cast<int>(toks[0].size()) != n)
            throw ParseError(lineno, "expected a row of exactly " + std::to_string(n) +
                                         " characters from {0,1}");
        for (int j = 0; j < n; ++j) {
            char c = toks[0][j];
            if (c != '0' && c != '1')
                throw ParseError(lineno, std::string("unexpected character '") + c + "' in row");
            m.set(row, j, c == '1');
        }
        ++row;
    }
    if (row != n)
        throw ParseError(lineno, "expected " + std::to_string(n) + " rows, got " +
                                     std::to_string(row));
    return m;
}

std::string serialize_bit_matrix(const BitMatrix& m) {
    std::ostringstream out;
    out << "n=" << m.n() << '\n';
    for (int i = 0; i < m.n(); ++i) {
        for (int j = 0; j < m.n(); ++j) out << (m.at(i, j) ? '1' : '0');
        out << '\n';
    }
    return out.str();
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

}  // namespace

NamedInstance load_instance(const std::string& path) {
    auto in = open_or_throw(path);
    try {
        return parse_instance(in);
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

Matching load_matching(const std::string& path, const NamedInstance& inst) {
    auto in = open_or_throw(path);
    try {
        return parse_matching(in, inst);
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

BitMatrix load_bit_matrix(const std::string& path) {
    auto in = open_or_throw(path);
    try {
        return parse_bit_matrix(in);
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace sr
