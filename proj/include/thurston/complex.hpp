#pragma once

#include "thurston/cell.hpp"
#include "thurston/errors.hpp"
#include "thurston/rational.hpp"
#include "thurston/rule.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace thurston {

// One level of the induced cell decompositions. Every cell of level n >= 1
// stores its image (the level-(n-1) cell it maps onto), its parent (the
// minimal level-(n-1) cell containing its interior), its key1 (the minimal
// level-1 cell containing its interior) and its level-0 ancestor. A cell is
// keyed uniquely by the pair (key1, image); subdivision builds level n+1 by
// enumerating admissible pairs, so gluing is by key equality and needs no
// geometry.
struct CellComplex {
    struct Vertex {
        std::int32_t image = -1;
        Cell parent;
        Cell key1;
        Cell parent0;
        int label = -1; // 0-vertex index reached after `level` applications
    };
    struct Edge {
        std::int32_t image = -1;
        Cell parent;
        Cell key1;
        Cell parent0;
        std::array<std::int32_t, 2> ends{-1, -1};
        bool img_reversed = false; // orientation of one application of the map
    };
    struct Tile {
        std::int32_t image = -1;
        std::int32_t parent = -1; // containing tile one level up
        Cell key1;
        Cell parent0;
        Color color = Color::white;
        std::vector<std::int32_t> vertices;
        std::vector<std::int32_t> edges;
    };

    int level = 0;
    int m = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Tile> tiles;
    // prev_vertex_child[v] = id here of the level-(n-1) vertex v (vertices persist).
    std::vector<std::int32_t> prev_vertex_child;
    // zero_vertex_rep[k] = id here of 0-vertex k.
    std::vector<std::int32_t> zero_vertex_rep;
    // (dim, key1, image) -> id, for levels >= 1.
    std::unordered_map<std::uint64_t, std::int32_t> keymap;

    bool on_curve(const Cell& c) const;
    Cell parent_of(const Cell& c) const;
    Cell parent0_of(const Cell& c) const;
    Cell key1_of(const Cell& c) const;
    Cell image_of(const Cell& c) const;
    Color location(std::int32_t tile) const { return Color(tiles[tile].parent0.id); }
    long long euler_characteristic() const {
        return (long long)vertices.size() - (long long)edges.size() + (long long)tiles.size();
    }
    std::int32_t key_lookup(std::int8_t dim, Cell key1, std::int32_t image) const;

    // incidence, built lazily
    const std::vector<std::vector<std::int32_t>>& vertex_tiles() const;
    const std::vector<std::vector<std::int32_t>>& vertex_edges() const;

private:
    mutable std::vector<std::vector<std::int32_t>> vtx_tiles_, vtx_edges_;
};

struct EngineStats {
    long long levels_built = 0;
    long long levels_loaded = 0;
    long long cache_writes = 0;
    long long cache_rejects = 0;
};

struct EngineOptions {
    int max_level = -1;          // default derived from d
    std::string cache_dir;       // empty: no cache (THURSTON_CACHE wired by the CLI)
    bool cache_write = false;    // only the cache command writes
};

// Owns the rule and the tower of complexes, building levels on demand.
class Engine {
public:
    explicit Engine(SubdivisionRule rule, EngineOptions opts = {});

    const SubdivisionRule& rule() const { return rule_; }
    int max_level() const { return opts_.max_level; }
    const EngineStats& stats() const { return stats_; }

    const CellComplex& level(int n);
    int built_levels() const { return (int)levels_.size(); }
    // memory policy: deep levels can be dropped and are rebuilt
    // deterministically (or reloaded from the cache) on demand
    void drop_levels_above(int n);

    // level-1 preimage fans of the 0-cells (sheet lists), in table order
    const std::vector<std::int32_t>& white_tiles1() const { return white1_; }
    const std::vector<std::int32_t>& black_tiles1() const { return black1_; }
    const std::vector<std::int32_t>& edge_preimages1(int zero_edge) const {
        return edge_pre_[zero_edge];
    }
    const std::vector<std::int32_t>& vertex_preimages1(int zero_vertex) const {
        return vertex_pre_[zero_vertex];
    }
    // local degree of the map at the point whose minimal level-1 cell is c
    int local_degree1(const Cell& c);

    // persisting copy of level-n vertex v at a deeper level
    std::int32_t vertex_at_level(int n, std::int32_t v, int deeper);

    // curve chains of level n: per 0-edge, the on-curve edges in curve order,
    // each with the direction (+1 stored-forward) it is traversed
    struct CurveWalk {
        std::vector<std::vector<std::pair<std::int32_t, int>>> chains;
    };
    const CurveWalk& curve_walk(int n);

    std::string cache_key() const { return cache_key_; }
    void write_cache(int upto_level);
    int clear_cache();

private:
    void build_level0();
    void build_level1();
    void subdivide();
    bool try_load_level(int n);
    void finish_level(CellComplex& cx);

    SubdivisionRule rule_;
    EngineOptions opts_;
    EngineStats stats_;
    std::deque<CellComplex> levels_;
    std::vector<std::int32_t> white1_, black1_;
    std::vector<std::vector<std::int32_t>> edge_pre_, vertex_pre_;
    // per 1-tile: boundary edge realizing each 0-edge, boundary vertex per label
    std::vector<std::vector<std::int32_t>> tile_edge_for0_, tile_vert_for0_;
    std::vector<CurveWalk> walks_;
    std::string cache_key_;

    Cell sub_cell(const Cell& c1, const Cell& zero) const;
};

int default_level_cap(int d);

// --- operations ---

std::map<TileClass, long long> tile_class_counts(Engine& eng, int n);
// classes of level-n tiles relative to level 0 (the classes of the n-th
// iterate's level-1 decomposition)
std::map<TileClass, long long> iterate_class_counts(Engine& eng, int n);

// number of white level-i tiles contained in the given level-m tile, by
// direct enumeration; the closed form (w d^(i-m) +/- b (w_w-b_w)^(i-m)) is
// asserted against it in tests
long long count_white_tiles_in(Engine& eng, const CellRef& tile, int i);
Rational count_white_tiles_closed_form(const RuleStats& st, Color target, int gap);

std::vector<CellRef> flower(Engine& eng, const CellRef& v);
int local_degree_at(Engine& eng, const CellRef& v);

bool joins_opposite_sides(Engine& eng, const CellRef& tile);
std::optional<int> find_expansion_level(Engine& eng, int max_n);

std::vector<CellRef> cover_edge(Engine& eng, const CellRef& edge, int k);
// independent check of the interior-containment postcondition
bool cover_contains_edge(Engine& eng, const CellRef& edge, int k,
                         const std::vector<CellRef>& cover);

SubdivisionRule iterate_rule(Engine& eng, int n);

// planar-map isomorphism over the shared curve seed; labels, colors, images
// and orientations must all transport
bool rules_isomorphic(const SubdivisionRule& a, const SubdivisionRule& b);

// cache serialization (exposed for tests)
std::string serialize_complex(const CellComplex& cx);

} // namespace thurston
