#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "sr/core.hpp"
#include "sr/embedding.hpp"
#include "sr/io.hpp"

using namespace sr;

namespace {

std::string fixture_path(const std::string& name) {
    const char* dir = std::getenv("SR_FIXTURES");
    REQUIRE_MESSAGE(dir != nullptr, "SR_FIXTURES must point at tests/fixtures");
    return std::string(dir) + "/" + name;
}

NamedInstance parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

int parse_error_line(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_instance(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("instance files round-trip through parse and serialize") {
    const std::string text =
        "agents: ann ben cam dee\n"
        "ann: ben cam dee\n"
        "ben: cam ann dee\n"
        "cam: ann ben dee\n"
        "dee: ann ben cam\n";
    NamedInstance named = parse_text(text);
    CHECK(named.instance.num_agents() == 4);
    CHECK(named.names == std::vector<std::string>{"ann", "ben", "cam", "dee"});
    CHECK(named.id_of("cam") == 2);
    CHECK(named.name_of(3) == "dee");
    CHECK(named.instance.preference_list(0) == std::vector<AgentId>{1, 2, 3});
    CHECK(serialize_instance(named) == text);

    // A second pass over the serialized text lands on the same instance.
    NamedInstance again = parse_text(serialize_instance(named));
    for (AgentId a = 0; a < 4; ++a)
        CHECK(again.instance.preference_list(a) == named.instance.preference_list(a));
}

TEST_CASE("comments, blank lines, and row order are all tolerated") {
    const std::string text =
        "# roster first\n"
        "\n"
        "agents: a b c d  # four of them\n"
        "c: a b d\n"
        "\n"
        "a: b c d # favorite first\n"
        "d: a b c\n"
        "b: c a d\n";
    NamedInstance named = parse_text(text);
    CHECK(named.instance.preference_list(0) == std::vector<AgentId>{1, 2, 3});
    CHECK(named.instance.preference_list(1) == std::vector<AgentId>{2, 0, 3});
    CHECK(named.instance.preference_list(3) == std::vector<AgentId>{0, 1, 2});
}

TEST_CASE("instance parse errors carry the offending line") {
    // No roster at all.
    CHECK(parse_error_line("# empty\n\n") == 2);
    // Rows before the roster line.
    CHECK(parse_error_line("a: b\nagents: a b\n") == 1);
    // Odd roster size.
    CHECK(parse_error_line("agents: u v w\n") == 1);
    // Duplicate roster entry.
    CHECK(parse_error_line("agents: u v u w\n") == 1);
    // Unknown row owner (line 3; blank line in between).
    CHECK(parse_error_line("agents: u v\n\nw: u\n") == 3);
    // Missing colon on a row.
    CHECK(parse_error_line("agents: u v\nu v\n") == 2);
    // Unknown agent inside a row.
    CHECK(parse_error_line("agents: u v\nu: w\n") == 2);
    // Self-reference.
    CHECK(parse_error_line("agents: u v\nu: u\n") == 2);
    // Duplicate entry in a row.
    CHECK(parse_error_line("agents: u v w z\nu: v v w\n") == 2);
    // Wrong row length.
    CHECK(parse_error_line("agents: u v w z\nu: v w\n") == 2);
    // Same agent rowed twice.
    CHECK(parse_error_line("agents: u v\nu: v\nu: v\n") == 3);
    // Missing row for someone (reported at end of input).
    CHECK(parse_error_line("agents: u v\nu: v\n") == 2);

    // what() mentions the line for humans.
    try {
        parse_text("agents: u v w\n");
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("line 1:", 0) == 0);
    }
}

TEST_CASE("matching files parse against the instance's names") {
    NamedInstance named = parse_text(
        "agents: p q r s\n"
        "p: q r s\n"
        "q: p r s\n"
        "r: s p q\n"
        "s: r p q\n");
    std::istringstream good("p q # best friends\n\nr s\n");
    Matching m = parse_matching(good, named);
    CHECK(m.partner_of(0) == 1);
    CHECK(m.partner_of(2) == 3);
    CHECK(serialize_matching(m, named) == "p q\nr s\n");

    auto line_of = [&](const std::string& text) {
        std::istringstream in(text);
        try {
            parse_matching(in, named);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("p q r\n") == 1);            // three tokens
    CHECK(line_of("p z\n") == 1);              // unknown agent
    CHECK(line_of("p q\nq r\n") == 2);         // q matched twice -> not a matching
    CHECK(line_of("p q\n") == 1);              // r and s left unmatched
    CHECK(line_of("p q\nr s\np q\n") == 3);    // duplicate pair
}

TEST_CASE("bit-matrix files round-trip and reject malformed rows") {
    const std::string text = "n=3\n110\n000\n010\n";
    std::istringstream in(text);
    BitMatrix m = parse_bit_matrix(in);
    CHECK(m == fixtures::disjoint_x3());
    CHECK(serialize_bit_matrix(m) == text);

    std::istringstream commented("# header\nn=2 # two\n01 # first row\n\n10\n");
    BitMatrix c = parse_bit_matrix(commented);
    CHECK(c.at(0, 1));
    CHECK(c.at(1, 0));
    CHECK(c.count_ones() == 2);

    auto line_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            parse_bit_matrix(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("") == 0);                  // no size line
    CHECK(line_of("x=3\n") == 1);             // wrong header keyword
    CHECK(line_of("n=zero\n") == 1);          // unreadable size
    CHECK(line_of("n=3x\n") == 1);            // trailing junk in the size
    CHECK(line_of("n=0\n") == 1);             // size out of range
    CHECK(line_of("n=2\n01\n1\n") == 3);      // short row
    CHECK(line_of("n=2\n01\n121\n") == 3);    // long row
    CHECK(line_of("n=2\n01\n2x\n") == 3);     // bad characters
    CHECK(line_of("n=2\n01\n") == 2);         // missing rows
}

TEST_CASE("file loaders read the shipped fixtures and blame the path") {
    NamedInstance four = load_instance(fixture_path("four_cycle.sr"));
    CHECK(four.names == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(four.instance.preference_list(1) ==
          fixtures::four_agent_cycle().preference_list(1));

    BitMatrix x = load_bit_matrix(fixture_path("disjoint_x.bits"));
    BitMatrix y = load_bit_matrix(fixture_path("shared_y.bits"));
    CHECK(x == fixtures::disjoint_x3());
    CHECK(y == fixtures::y3());
    CHECK(load_bit_matrix(fixture_path("intersecting_x.bits")) == fixtures::intersecting_x3());

    NamedInstance pairs = load_instance(fixture_path("pairs.sr"));
    Matching stable = load_matching(fixture_path("pairs_stable.matching"), pairs);
    CHECK(stable.partner_of(pairs.id_of("p")) == pairs.id_of("q"));

    CHECK_THROWS_AS(load_instance(fixture_path("missing.sr")), std::runtime_error);
    try {
        load_bit_matrix(fixture_path("bad_matrix.bits"));
        FAIL("expected a failure for the malformed matrix");
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("bad_matrix.bits") != std::string::npos);
        CHECK(msg.find("line 3") != std::string::npos);
    }
}

TEST_CASE("save_text writes what load reads back") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "sr_io_test";
    fs::create_directories(dir);
    fs::path path = dir / "roundtrip.sr";

    NamedInstance named = with_default_names(fixtures::four_agent_cycle());
    CHECK(named.names == std::vector<std::string>{"1", "2", "3", "4"});
    save_text(path.string(), serialize_instance(named));
    NamedInstance back = load_instance(path.string());
    CHECK(back.names == named.names);
    for (AgentId a = 0; a < 4; ++a)
        CHECK(back.instance.preference_list(a) == named.instance.preference_list(a));
    fs::remove_all(dir);

    CHECK_THROWS_AS(save_text((dir / "nope" / "x.txt").string(), "content"),
                    std::runtime_error);
}

TEST_CASE("named wrappers enforce sane names") {
    CHECK_THROWS_AS(make_named(fixtures::four_agent_cycle(), {"a", "b", "c"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_named(fixtures::four_agent_cycle(), {"a", "b", "c", "a"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_named(fixtures::four_agent_cycle(), {"a", "b", "c", "d:"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_named(fixtures::four_agent_cycle(), {"a", "b", "c", ""}),
                    std::invalid_argument);

    NamedInstance named = with_default_names(fixtures::four_agent_cycle());
    CHECK_THROWS_AS(named.id_of("zz"), std::invalid_argument);
    CHECK_THROWS_AS(named.name_of(4), std::invalid_argument);

    NamedInstance emb = named_embedding(build_embedding(fixtures::disjoint_x3(), fixtures::y3()));
    CHECK(emb.names.front() == "a1");
    CHECK(emb.names.back() == "d3");
    CHECK(emb.id_of("c2") == 7);
}
