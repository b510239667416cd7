#pragma once

// Text formats: instance files (agent roster plus one preference row per
// agent), matching files (one pair per line), and bit-matrix files
// ("n=<k>" header plus k rows of 0/1). '#' starts a comment anywhere.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sr/core.hpp"
#include "sr/embedding.hpp"

namespace sr {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// An instance together with the agent names used on disk. Internally
// agents are dense ids in roster order; names map back for output.
struct NamedInstance {
    SRInstance instance;
    std::vector<std::string> names;
    std::unordered_map<std::string, AgentId> ids;

    AgentId id_of(const std::string& name) const;
    const std::string& name_of(AgentId a) const;
};

NamedInstance make_named(SRInstance instance, std::vector<std::string> names);

// Numbers agents 1..2n when nothing better is around.
NamedInstance with_default_names(SRInstance instance);

// Names the embedded agents a1..aN, b1..bN, c1..cN, d1..dN.
NamedInstance named_embedding(const EmbeddedInstance& embedded);

NamedInstance parse_instance(std::istream& in);
std::string serialize_instance(const NamedInstance& inst);

Matching parse_matching(std::istream& in, const NamedInstance& inst);
std::string serialize_matching(const Matching& m, const NamedInstance& inst);

BitMatrix parse_bit_matrix(std::istream& in);
std::string serialize_bit_matrix(const BitMatrix& m);

// File helpers; errors mention the path.
NamedInstance load_instance(const std::string& path);
Matching load_matching(const std::string& path, const NamedInstance& inst);
BitMatrix load_bit_matrix(const std::string& path);
void save_text(const std::string& path, const std::string& content);

}  // namespace sr
