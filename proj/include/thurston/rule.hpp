#pragma once

#include "thurston/cell.hpp"
#include "thurston/errors.hpp"
#include "thurston/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace thurston {

// Combinatorial presentation of a two-tile subdivision rule: the level-1
// decomposition of the sphere induced by a degree-d map with an invariant
// Jordan curve through the m postcritical points.
//
// Conventions, used everywhere downstream:
//  - 0-vertices are indexed 0..m-1 in cyclic order along the curve, oriented
//    so the white 0-tile lies on the left.
//  - 0-edge j runs from 0-vertex j to 0-vertex j+1 (mod m).
//  - Tile boundary cycles alternate m vertices and m edges, counterclockwise
//    as seen from the tile interior; edges[i] joins vertices[i] and
//    vertices[i+1 mod m].
struct SubdivisionRule {
    struct Vertex {
        int label = -1; // index of the 0-vertex this vertex maps to
    };
    struct Edge {
        std::array<std::int32_t, 2> ends{-1, -1};
        int image = -1;        // 0-edge index this edge maps onto
        bool reversed = false; // ends[0] maps to the image's head instead of its tail
    };
    struct Tile {
        Color color = Color::white;    // image 0-tile
        Color location = Color::white; // containing 0-tile
        std::vector<std::int32_t> vertices;
        std::vector<std::int32_t> edges;
    };

    int m = 0;
    int d = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Tile> tiles;
    // curve_vertices[k] = id of the level-1 vertex equal to 0-vertex k.
    std::vector<std::int32_t> curve_vertices;
    // curve_chains[j] = the level-1 edges subdividing 0-edge j, in curve order.
    std::vector<std::vector<std::int32_t>> curve_chains;

    bool on_curve_edge(std::int32_t e) const;
    bool on_curve_vertex(std::int32_t v) const;
    // Action of the map on 0-vertex indices.
    int vertex_label0(int k) const { return vertices[curve_vertices[k]].label; }
};

struct ValidationReport {
    struct Violation {
        std::string invariant;
        std::string detail;
    };
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

struct RuleStats {
    long long w_w = 0, w_b = 0, b_w = 0, b_b = 0;
    Rational w, b;
    long long deg_on_curve = 0;
    int m = 0, d = 0;
    std::string entropy() const { return "log(" + std::to_string(d) + ")"; }
};

SubdivisionRule parse_rule(const std::string& json_text);
SubdivisionRule load_rule_file(const std::string& path);
// Canonical serialization: cells renumbered by (on-curve flag, first
// appearance in tile cycles), sorted keys, fixed layout. Idempotent.
std::string save_rule(const SubdivisionRule& rule);
SubdivisionRule canonicalize(const SubdivisionRule& rule);

ValidationReport validate_rule(const SubdivisionRule& rule);

// d = a*b checkerboard subdivision of a square pillow (m = 4).
SubdivisionRule generate_checkerboard(int a, int b);
// Barycentric subdivision of a triangle pillow: m = 3, d = 6, with a fixed
// critical point at 0-vertex 0.
SubdivisionRule generate_barycentric();

// Exact class counts plus the curve degree, cross-checked against an
// independent winding traversal of the curve. Throws InconsistentRule on
// mismatch.
RuleStats rule_stats(const SubdivisionRule& rule);

// The winding oracle on its own: signed number of times the image of the
// curve wraps around it.
long long curve_winding_degree(const SubdivisionRule& rule);

} // namespace thurston
