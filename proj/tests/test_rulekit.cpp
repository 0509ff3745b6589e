#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thurston/rule.hpp"

#include <fstream>
#include <set>
#include <sstream>

using namespace thurston;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string rule_path(const char* name) { return std::string(RULES_DIR) + "/" + name; }

// independent traversal oracles, deliberately not sharing code with the validator
long long euler_oracle(const SubdivisionRule& r) {
    return (long long)r.vertices.size() - (long long)r.edges.size() + (long long)r.tiles.size();
}

long long riemann_hurwitz_oracle(const SubdivisionRule& r) {
    std::vector<int> incident(r.vertices.size(), 0);
    for (const auto& t : r.tiles)
        for (auto v : t.vertices) incident[v]++;
    long long sum = 0;
    for (int c : incident) sum += c / 2 - 1;
    return sum;
}

} // namespace

TEST_CASE("bundled 2x2 rule parses with the expected shape") {
    SubdivisionRule r = parse_rule(slurp(rule_path("lattes2x2.rule")));
    CHECK(r.d == 4);
    CHECK(r.m == 4);
    CHECK(r.tiles.size() == 8);
    CHECK(r.edges.size() == 16);
    CHECK(validate_rule(r).ok());
    CHECK(euler_oracle(r) == 2);
    CHECK(riemann_hurwitz_oracle(r) == 2 * r.d - 2);
}

TEST_CASE("every bundled rule validates and satisfies the traversal oracles") {
    for (const char* name : {"lattes2x2.rule", "lattes3x3.rule", "barycentric.rule"}) {
        CAPTURE(name);
        SubdivisionRule r = parse_rule(slurp(rule_path(name)));
        ValidationReport rep = validate_rule(r);
        INFO(rep.to_string());
        CHECK(rep.ok());
        CHECK(euler_oracle(r) == 2);
        CHECK(riemann_hurwitz_oracle(r) == 2 * r.d - 2);
    }
}

TEST_CASE("bundled files are the canonical serialization of their generators") {
    CHECK(save_rule(generate_checkerboard(2, 2)) == slurp(rule_path("lattes2x2.rule")));
    CHECK(save_rule(generate_checkerboard(3, 3)) == slurp(rule_path("lattes3x3.rule")));
    CHECK(save_rule(generate_barycentric()) == slurp(rule_path("barycentric.rule")));
}

TEST_CASE("canonical round trip is byte identical") {
    for (const char* name : {"lattes2x2.rule", "lattes3x3.rule", "barycentric.rule"}) {
        std::string doc = slurp(rule_path(name));
        CHECK(save_rule(parse_rule(doc)) == doc);
    }
}

TEST_CASE("missing curve field raises a schema error naming it") {
    std::string doc = slurp(rule_path("lattes2x2.rule"));
    auto pos = doc.find("\"curve\"");
    REQUIRE(pos != std::string::npos);
    // rename the key so it is absent
    doc.replace(pos, 7, "\"curvx\"");
    try {
        parse_rule(doc);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("curve") != std::string::npos);
    }
}

TEST_CASE("dangling references are schema errors") {
    SubdivisionRule r = parse_rule(slurp(rule_path("lattes2x2.rule")));
    std::string doc = save_rule(r);
    // point the first curve vertex way out of range
    auto j = doc.find("\"vertices\": [");
    (void)j;
    SubdivisionRule broken = r;
    broken.curve_vertices[0] = 999;
    CHECK_THROWS_AS(parse_rule(save_rule(broken)), SchemaError);
}

TEST_CASE("dropping a tile is flagged as a tile count violation") {
    SubdivisionRule r = parse_rule(slurp(rule_path("lattes2x2.rule")));
    r.tiles.pop_back();
    ValidationReport rep = validate_rule(r);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.invariant.find("tile count") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("a curve cycle skipping a 0-vertex is a curve order violation") {
    SubdivisionRule r = parse_rule(slurp(rule_path("lattes2x2.rule")));
    std::swap(r.curve_vertices[1], r.curve_vertices[2]);
    ValidationReport rep = validate_rule(r);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.invariant.find("curve order") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("degenerate checkerboard is rejected") {
    CHECK_THROWS_AS(generate_checkerboard(1, 1), DegenerateRule);
}

TEST_CASE("stats: exact class counts, mixing weights and curve degree") {
    RuleStats s22 = rule_stats(generate_checkerboard(2, 2));
    CHECK(s22.w_w == 2);
    CHECK(s22.b_w == 2);
    CHECK(s22.w == Rational(1, 2));
    CHECK(s22.b == Rational(1, 2));
    CHECK(s22.w + s22.b == 1);
    CHECK(s22.deg_on_curve == 0);

    RuleStats s33 = rule_stats(generate_checkerboard(3, 3));
    CHECK(s33.w_w == 5);
    CHECK(s33.b_w == 4);
    CHECK(s33.deg_on_curve == 1);

    for (const char* name : {"lattes2x2.rule", "lattes3x3.rule", "barycentric.rule"}) {
        SubdivisionRule r = parse_rule(slurp(rule_path(name)));
        RuleStats st = rule_stats(r);
        CHECK(st.w_w + st.w_b == st.d);
        CHECK(st.b_w + st.b_b == st.d);
        CHECK(st.w > 0);
        CHECK(st.b > 0);
        CHECK(std::abs(st.deg_on_curve) < st.d);
        CHECK(st.deg_on_curve == curve_winding_degree(r));
    }
}

TEST_CASE("mis-oriented input trips the winding cross-check") {
    SubdivisionRule r = generate_checkerboard(2, 2);
    // flip one curve edge orientation flag; the image walk of the curve no
    // longer closes up consistently with the class counts
    auto e = r.curve_chains[0][0];
    r.edges[e].reversed = !r.edges[e].reversed;
    CHECK_THROWS_AS(rule_stats(r), InconsistentRule);
}

TEST_CASE("checkerboard sweep produces valid rules") {
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) {
            if (a * b < 2) continue;
            CAPTURE(a);
            CAPTURE(b);
            SubdivisionRule r = generate_checkerboard(a, b);
            ValidationReport rep = validate_rule(r);
            INFO(rep.to_string());
            CHECK(rep.ok());
            CHECK(r.d == a * b);
            RuleStats st = rule_stats(r);
            CHECK(st.deg_on_curve == (a % 2 && b % 2 ? 1 : 0));
        }
}
