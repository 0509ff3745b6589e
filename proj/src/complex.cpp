#include "thurston/complex.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace thurston {

using nlohmann::json;

namespace {

std::uint64_t pack_key(std::int8_t dim, Cell key1, std::int32_t image) {
    return (std::uint64_t(std::uint8_t(dim)) << 62) | (std::uint64_t(std::uint8_t(key1.dim)) << 60) |
           (std::uint64_t(std::uint32_t(key1.id)) << 30) | std::uint64_t(std::uint32_t(image));
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void require_sound(const SubdivisionRule& r) {
    auto bad = [] { throw SchemaError("rule tables are malformed"); };
    if (r.m < 3 || r.d < 2) bad();
    if ((int)r.curve_vertices.size() != r.m || (int)r.curve_chains.size() != r.m) bad();
    for (const auto& e : r.edges)
        if (e.ends[0] < 0 || (std::size_t)e.ends[0] >= r.vertices.size() || e.ends[1] < 0 ||
            (std::size_t)e.ends[1] >= r.vertices.size() || e.image < 0 || e.image >= r.m)
            bad();
    for (const auto& t : r.tiles) {
        if ((int)t.vertices.size() != r.m || (int)t.edges.size() != r.m) bad();
        for (auto v : t.vertices)
            if (v < 0 || (std::size_t)v >= r.vertices.size()) bad();
        for (auto e : t.edges)
            if (e < 0 || (std::size_t)e >= r.edges.size()) bad();
    }
    for (auto v : r.curve_vertices)
        if (v < 0 || (std::size_t)v >= r.vertices.size()) bad();
    for (const auto& c : r.curve_chains) {
        if (c.empty()) bad();
        for (auto e : c)
            if (e < 0 || (std::size_t)e >= r.edges.size()) bad();
    }
    for (const auto& v : r.vertices)
        if (v.label < 0 || v.label >= r.m) bad();
}

} // namespace

int default_level_cap(int d) {
    long long cells = 2;
    int n = 0;
    while (n < 12 && cells * d <= 3000000) {
        cells *= d;
        ++n;
    }
    return std::max(n, 3);
}

// ---------------------------------------------------------------------------
// CellComplex accessors

bool CellComplex::on_curve(const Cell& c) const { return parent0_of(c).dim <= 1; }

Cell CellComplex::parent_of(const Cell& c) const {
    switch (c.dim) {
    case 0: return vertices[c.id].parent;
    case 1: return edges[c.id].parent;
    default: return tile_cell(tiles[c.id].parent);
    }
}

Cell CellComplex::parent0_of(const Cell& c) const {
    switch (c.dim) {
    case 0: return vertices[c.id].parent0;
    case 1: return edges[c.id].parent0;
    default: return tiles[c.id].parent0;
    }
}

Cell CellComplex::key1_of(const Cell& c) const {
    switch (c.dim) {
    case 0: return vertices[c.id].key1;
    case 1: return edges[c.id].key1;
    default: return tiles[c.id].key1;
    }
}

Cell CellComplex::image_of(const Cell& c) const {
    switch (c.dim) {
    case 0: return vertex_cell(vertices[c.id].image);
    case 1: return edge_cell(edges[c.id].image);
    default: return tile_cell(tiles[c.id].image);
    }
}

std::int32_t CellComplex::key_lookup(std::int8_t dim, Cell key1, std::int32_t image) const {
    auto it = keymap.find(pack_key(dim, key1, image));
    return it == keymap.end() ? -1 : it->second;
}

const std::vector<std::vector<std::int32_t>>& CellComplex::vertex_tiles() const {
    if (vtx_tiles_.empty() && !vertices.empty()) {
        vtx_tiles_.resize(vertices.size());
        for (std::size_t t = 0; t < tiles.size(); ++t)
            for (auto v : tiles[t].vertices) vtx_tiles_[v].push_back((std::int32_t)t);
    }
    return vtx_tiles_;
}

const std::vector<std::vector<std::int32_t>>& CellComplex::vertex_edges() const {
    if (vtx_edges_.empty() && !vertices.empty()) {
        vtx_edges_.resize(vertices.size());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            vtx_edges_[edges[e].ends[0]].push_back((std::int32_t)e);
            if (edges[e].ends[1] != edges[e].ends[0])
                vtx_edges_[edges[e].ends[1]].push_back((std::int32_t)e);
        }
    }
    return vtx_edges_;
}

// ---------------------------------------------------------------------------
// Engine construction

Engine::Engine(SubdivisionRule rule, EngineOptions opts) : rule_(std::move(rule)), opts_(opts) {
    require_sound(rule_);
    if (opts_.max_level < 0) opts_.max_level = default_level_cap(rule_.d);
    cache_key_ = [&] {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx",
                      (unsigned long long)fnv1a64(save_rule(rule_)));
        return std::string(buf);
    }();

    for (std::size_t t = 0; t < rule_.tiles.size(); ++t)
        (rule_.tiles[t].color == Color::white ? white1_ : black1_).push_back((std::int32_t)t);
    edge_pre_.resize(rule_.m);
    for (std::size_t e = 0; e < rule_.edges.size(); ++e)
        edge_pre_[rule_.edges[e].image].push_back((std::int32_t)e);
    vertex_pre_.resize(rule_.m);
    for (std::size_t v = 0; v < rule_.vertices.size(); ++v)
        vertex_pre_[rule_.vertices[v].label].push_back((std::int32_t)v);

    tile_edge_for0_.assign(rule_.tiles.size(), std::vector<std::int32_t>(rule_.m, -1));
    tile_vert_for0_.assign(rule_.tiles.size(), std::vector<std::int32_t>(rule_.m, -1));
    for (std::size_t t = 0; t < rule_.tiles.size(); ++t)
        for (int k = 0; k < rule_.m; ++k) {
            tile_vert_for0_[t][rule_.vertices[rule_.tiles[t].vertices[k]].label] =
                rule_.tiles[t].vertices[k];
            tile_edge_for0_[t][rule_.edges[rule_.tiles[t].edges[k]].image] = rule_.tiles[t].edges[k];
        }

    build_level0();
    build_level1();
}

void Engine::build_level0() {
    CellComplex cx;
    cx.level = 0;
    cx.m = rule_.m;
    const int m = rule_.m;
    cx.vertices.resize(m);
    for (int k = 0; k < m; ++k) {
        cx.vertices[k].label = k;
        cx.vertices[k].parent0 = vertex_cell(k);
    }
    cx.edges.resize(m);
    for (int j = 0; j < m; ++j) {
        cx.edges[j].ends = {j, (j + 1) % m};
        cx.edges[j].parent0 = edge_cell(j);
    }
    cx.tiles.resize(2);
    cx.tiles[0].color = Color::white;
    cx.tiles[0].parent0 = tile_cell(0);
    cx.tiles[1].color = Color::black;
    cx.tiles[1].parent0 = tile_cell(1);
    for (int k = 0; k < m; ++k) {
        cx.tiles[0].vertices.push_back(k);
        cx.tiles[0].edges.push_back(k);
        cx.tiles[1].vertices.push_back((m - k) % m);
        cx.tiles[1].edges.push_back(m - 1 - k);
    }
    cx.zero_vertex_rep.resize(m);
    for (int k = 0; k < m; ++k) cx.zero_vertex_rep[k] = k;
    levels_.push_back(std::move(cx));
}

void Engine::build_level1() {
    const auto& r = rule_;
    CellComplex cx;
    cx.level = 1;
    cx.m = r.m;

    std::vector<Cell> v_par0(r.vertices.size(), Cell{});
    std::vector<Cell> e_par0(r.edges.size(), Cell{});
    for (int k = 0; k < r.m; ++k) v_par0[r.curve_vertices[k]] = vertex_cell(k);
    for (int j = 0; j < r.m; ++j) {
        std::int32_t at = r.curve_vertices[j];
        for (auto eid : r.curve_chains[j]) {
            e_par0[eid] = edge_cell(j);
            const auto& e = r.edges[eid];
            at = e.ends[0] == at ? e.ends[1] : e.ends[0];
            if (!v_par0[at].valid()) v_par0[at] = edge_cell(j);
        }
    }
    // off-curve cells live inside the 0-tile given by incidence
    std::vector<std::int8_t> v_loc(r.vertices.size(), -1), e_loc(r.edges.size(), -1);
    for (const auto& t : r.tiles) {
        std::int8_t loc = t.location == Color::white ? 0 : 1;
        for (auto v : t.vertices)
            if (v_loc[v] < 0) v_loc[v] = loc;
        for (auto e : t.edges)
            if (e_loc[e] < 0) e_loc[e] = loc;
    }

    cx.vertices.resize(r.vertices.size());
    for (std::size_t v = 0; v < r.vertices.size(); ++v) {
        auto& rec = cx.vertices[v];
        rec.image = r.vertices[v].label;
        rec.label = r.vertices[v].label;
        rec.key1 = vertex_cell((std::int32_t)v);
        rec.parent0 = v_par0[v].valid() ? v_par0[v] : tile_cell(v_loc[v]);
        rec.parent = rec.parent0;
        cx.keymap[pack_key(0, rec.key1, rec.image)] = (std::int32_t)v;
    }
    cx.edges.resize(r.edges.size());
    for (std::size_t e = 0; e < r.edges.size(); ++e) {
        auto& rec = cx.edges[e];
        rec.image = r.edges[e].image;
        rec.img_reversed = r.edges[e].reversed;
        rec.ends = r.edges[e].ends;
        rec.key1 = edge_cell((std::int32_t)e);
        rec.parent0 = e_par0[e].valid() ? e_par0[e] : tile_cell(e_loc[e]);
        rec.parent = rec.parent0;
        cx.keymap[pack_key(1, rec.key1, rec.image)] = (std::int32_t)e;
    }
    cx.tiles.resize(r.tiles.size());
    for (std::size_t t = 0; t < r.tiles.size(); ++t) {
        auto& rec = cx.tiles[t];
        rec.color = r.tiles[t].color;
        rec.image = r.tiles[t].color == Color::white ? 0 : 1;
        rec.parent = r.tiles[t].location == Color::white ? 0 : 1;
        rec.parent0 = tile_cell(rec.parent);
        rec.key1 = tile_cell((std::int32_t)t);
        rec.vertices = r.tiles[t].vertices;
        rec.edges = r.tiles[t].edges;
        cx.keymap[pack_key(2, rec.key1, rec.image)] = (std::int32_t)t;
    }
    cx.prev_vertex_child.assign(r.m, -1);
    cx.zero_vertex_rep.resize(r.m);
    for (int k = 0; k < r.m; ++k) {
        cx.prev_vertex_child[k] = r.curve_vertices[k];
        cx.zero_vertex_rep[k] = r.curve_vertices[k];
    }
    levels_.push_back(std::move(cx));
}

// pullback of a 0-cell through a level-1 cell: the unique sub-cell of c1
// mapping onto it
Cell Engine::sub_cell(const Cell& c1, const Cell& zero) const {
    if (c1.dim == 2) {
        if (zero.dim == 2) return c1;
        std::int32_t id = zero.dim == 1 ? tile_edge_for0_[c1.id][zero.id]
                                        : tile_vert_for0_[c1.id][zero.id];
        if (id < 0)
            throw GluingError("tile " + std::to_string(c1.id) +
                              " has no boundary cell over 0-cell " + std::to_string(zero.id));
        return {zero.dim, id};
    }
    if (c1.dim == 1) {
        const auto& e = rule_.edges[c1.id];
        if (zero.dim == 1) {
            if (zero.id != e.image)
                throw GluingError("edge pullback image mismatch on edge " + std::to_string(c1.id));
            return c1;
        }
        int tail = e.reversed ? (e.image + 1) % rule_.m : e.image;
        if (zero.id == tail) return vertex_cell(e.ends[0]);
        if (zero.id == (e.reversed ? e.image : (e.image + 1) % rule_.m))
            return vertex_cell(e.ends[1]);
        throw GluingError("edge " + std::to_string(c1.id) + " has no endpoint over 0-vertex " +
                          std::to_string(zero.id));
    }
    if (zero.dim != 0 || rule_.vertices[c1.id].label != zero.id)
        throw GluingError("vertex pullback mismatch at vertex " + std::to_string(c1.id));
    return c1;
}

void Engine::subdivide() {
    const CellComplex& prev = levels_.back();
    const int m = rule_.m;
    CellComplex cx;
    cx.level = prev.level + 1;
    cx.m = m;

    auto fan = [&](const Cell& zero, std::vector<Cell>& out) {
        out.clear();
        if (zero.dim == 2) {
            const auto& list = zero.id == 0 ? white1_ : black1_;
            for (auto t : list) out.push_back(tile_cell(t));
        } else if (zero.dim == 1) {
            for (auto e : edge_pre_[zero.id]) out.push_back(edge_cell(e));
        } else {
            for (auto v : vertex_pre_[zero.id]) out.push_back(vertex_cell(v));
        }
    };

    std::vector<Cell> sheets;
    cx.prev_vertex_child.assign(prev.vertices.size(), -1);

    for (std::size_t u = 0; u < prev.vertices.size(); ++u) {
        const auto& pu = prev.vertices[u];
        fan(pu.parent0, sheets);
        for (const Cell& c1 : sheets) {
            CellComplex::Vertex rec;
            rec.image = (std::int32_t)u;
            rec.key1 = c1;
            rec.parent0 = levels_[1].parent0_of(c1);
            rec.label = pu.label;
            std::int32_t par = prev.key_lookup(pu.parent.dim, c1, pu.parent.id);
            if (par < 0) throw GluingError("vertex parent lookup failed during subdivision");
            rec.parent = {pu.parent.dim, par};
            std::int32_t id = (std::int32_t)cx.vertices.size();
            cx.vertices.push_back(rec);
            cx.keymap[pack_key(0, c1, rec.image)] = id;
            if (rec.parent.dim == 0) cx.prev_vertex_child[rec.parent.id] = id;
        }
    }
    for (std::size_t v = 0; v < prev.vertices.size(); ++v)
        if (cx.prev_vertex_child[v] < 0)
            throw GluingError("vertex " + std::to_string(v) + " did not persist to level " +
                              std::to_string(cx.level));

    for (std::size_t e = 0; e < prev.edges.size(); ++e) {
        const auto& pe = prev.edges[e];
        fan(pe.parent0, sheets);
        for (const Cell& c1 : sheets) {
            CellComplex::Edge rec;
            rec.image = (std::int32_t)e;
            rec.img_reversed = false;
            rec.key1 = c1;
            rec.parent0 = levels_[1].parent0_of(c1);
            for (int s = 0; s < 2; ++s) {
                std::int32_t a = pe.ends[s];
                Cell c1a = sub_cell(c1, prev.vertices[a].parent0);
                std::int32_t av = cx.key_lookup(0, c1a, a);
                if (av < 0) throw GluingError("edge endpoint lookup failed during subdivision");
                rec.ends[s] = av;
            }
            std::int32_t par = prev.key_lookup(pe.parent.dim, c1, pe.parent.id);
            if (par < 0) throw GluingError("edge parent lookup failed during subdivision");
            rec.parent = {pe.parent.dim, par};
            std::int32_t id = (std::int32_t)cx.edges.size();
            cx.edges.push_back(std::move(rec));
            cx.keymap[pack_key(1, c1, (std::int32_t)e)] = id;
        }
    }

    for (std::size_t z = 0; z < prev.tiles.size(); ++z) {
        const auto& pz = prev.tiles[z];
        Color loc = Color(pz.parent0.id);
        const auto& ys = loc == Color::white ? white1_ : black1_;
        for (auto y : ys) {
            Cell Y = tile_cell(y);
            CellComplex::Tile rec;
            rec.image = (std::int32_t)z;
            rec.color = pz.color;
            rec.key1 = Y;
            rec.parent0 = levels_[1].parent0_of(Y);
            std::int32_t par = prev.key_lookup(2, Y, pz.parent);
            if (par < 0) throw GluingError("tile parent lookup failed during subdivision");
            rec.parent = par;
            rec.vertices.resize(m);
            rec.edges.resize(m);
            for (int k = 0; k < m; ++k) {
                std::int32_t a = pz.vertices[k];
                Cell c1a = sub_cell(Y, prev.vertices[a].parent0);
                rec.vertices[k] = cx.key_lookup(0, c1a, a);
                std::int32_t b = pz.edges[k];
                Cell c1b = sub_cell(Y, prev.edges[b].parent0);
                rec.edges[k] = cx.key_lookup(1, c1b, b);
                if (rec.vertices[k] < 0 || rec.edges[k] < 0)
                    throw GluingError("tile boundary lookup failed during subdivision");
            }
            std::int32_t id = (std::int32_t)cx.tiles.size();
            cx.tiles.push_back(std::move(rec));
            cx.keymap[pack_key(2, Y, (std::int32_t)z)] = id;
        }
    }

    finish_level(cx);
    levels_.push_back(std::move(cx));
    stats_.levels_built++;
}

// consistency checks shared by freshly built and cache-loaded levels
void Engine::finish_level(CellComplex& cx) {
    const int m = rule_.m;
    long long dn = 1;
    for (int i = 0; i < cx.level; ++i) dn *= rule_.d;
    if ((long long)cx.tiles.size() != 2 * dn || (long long)cx.edges.size() != (long long)m * dn ||
        (long long)cx.vertices.size() > (long long)m * dn)
        throw GluingError("level " + std::to_string(cx.level) + " has inconsistent cell counts");
    for (std::size_t t = 0; t < cx.tiles.size(); ++t) {
        const auto& tl = cx.tiles[t];
        for (int k = 0; k < m; ++k) {
            const auto& e = cx.edges[tl.edges[k]];
            std::int32_t a = tl.vertices[k], b = tl.vertices[(k + 1) % m];
            if (!((e.ends[0] == a && e.ends[1] == b) || (e.ends[0] == b && e.ends[1] == a)))
                throw GluingError("tile " + std::to_string(t) + " cycle broken at level " +
                                  std::to_string(cx.level) + " slot " + std::to_string(k));
        }
    }
    cx.zero_vertex_rep.resize(m);
    const CellComplex& prev = levels_.back();
    for (int k = 0; k < m; ++k) cx.zero_vertex_rep[k] = cx.prev_vertex_child[prev.zero_vertex_rep[k]];
}

void Engine::drop_levels_above(int n) {
    if (n < 1) n = 1; // levels 0 and 1 come straight from the rule
    while ((int)levels_.size() > n + 1) levels_.pop_back();
    if ((int)walks_.size() > n + 1) walks_.resize(n + 1);
}

const CellComplex& Engine::level(int n) {
    if (n < 0) throw LevelUnavailable("negative level");
    if (n > opts_.max_level)
        throw LevelUnavailable("level " + std::to_string(n) + " exceeds the cap " +
                               std::to_string(opts_.max_level) +
                               " (raise with --max-level or EngineOptions)");
    while ((int)levels_.size() <= n) {
        int next = (int)levels_.size();
        if (!try_load_level(next)) subdivide();
    }
    return levels_[n];
}

int Engine::local_degree1(const Cell& c) {
    if (c.dim != 0) return 1;
    return (int)levels_[1].vertex_tiles()[c.id].size() / 2;
}

std::int32_t Engine::vertex_at_level(int n, std::int32_t v, int deeper) {
    std::int32_t id = v;
    for (int l = n + 1; l <= deeper; ++l) id = level(l).prev_vertex_child[id];
    return id;
}

const Engine::CurveWalk& Engine::curve_walk(int n) {
    if ((int)walks_.size() > n && !walks_[n].chains.empty()) return walks_[n];
    const CellComplex& cx = level(n);
    if ((int)walks_.size() <= n) walks_.resize(n + 1);
    CurveWalk walk;
    walk.chains.resize(rule_.m);
    std::vector<std::vector<std::int32_t>> by_chain(rule_.m);
    for (std::size_t e = 0; e < cx.edges.size(); ++e)
        if (cx.edges[e].parent0.dim == 1) by_chain[cx.edges[e].parent0.id].push_back((std::int32_t)e);
    for (int j = 0; j < rule_.m; ++j) {
        std::vector<char> used(by_chain[j].size(), 0);
        std::int32_t at = cx.zero_vertex_rep[j];
        std::int32_t goal = cx.zero_vertex_rep[(j + 1) % rule_.m];
        for (std::size_t step = 0; step < by_chain[j].size(); ++step) {
            bool found = false;
            for (std::size_t i = 0; i < by_chain[j].size(); ++i) {
                if (used[i]) continue;
                const auto& e = cx.edges[by_chain[j][i]];
                if (e.ends[0] == at || e.ends[1] == at) {
                    int dir = e.ends[0] == at ? +1 : -1;
                    walk.chains[j].push_back({by_chain[j][i], dir});
                    at = dir > 0 ? e.ends[1] : e.ends[0];
                    used[i] = 1;
                    found = true;
                    break;
                }
            }
            if (!found) throw GluingError("curve walk broken at level " + std::to_string(n));
        }
        if (at != goal) throw GluingError("curve walk does not close at level " + std::to_string(n));
    }
    walks_[n] = std::move(walk);
    return walks_[n];
}

// ---------------------------------------------------------------------------
// cache

std::string serialize_complex(const CellComplex& cx) {
    json j;
    j["level"] = cx.level;
    j["m"] = cx.m;
    json jv = json::array();
    for (const auto& v : cx.vertices)
        jv.push_back({v.image, (int)v.parent.dim, v.parent.id, (int)v.key1.dim, v.key1.id,
                      (int)v.parent0.dim, v.parent0.id, v.label});
    j["vertices"] = std::move(jv);
    json je = json::array();
    for (const auto& e : cx.edges)
        je.push_back({e.image, (int)e.parent.dim, e.parent.id, (int)e.key1.dim, e.key1.id,
                      (int)e.parent0.dim, e.parent0.id, e.ends[0], e.ends[1], e.img_reversed});
    j["edges"] = std::move(je);
    json jt = json::array();
    for (const auto& t : cx.tiles)
        jt.push_back({t.image, t.parent, (int)t.key1.dim, t.key1.id, (int)t.parent0.dim,
                      t.parent0.id, t.color == Color::white ? 0 : 1, t.vertices, t.edges});
    j["tiles"] = std::move(jt);
    j["prev_vertex_child"] = cx.prev_vertex_child;
    return j.dump();
}

namespace {

CellComplex deserialize_complex(const std::string& payload) {
    json j = json::parse(payload);
    CellComplex cx;
    cx.level = j.at("level").get<int>();
    cx.m = j.at("m").get<int>();
    for (const auto& a : j.at("vertices")) {
        CellComplex::Vertex v;
        v.image = a.at(0).get<std::int32_t>();
        v.parent = {(std::int8_t)a.at(1).get<int>(), a.at(2).get<std::int32_t>()};
        v.key1 = {(std::int8_t)a.at(3).get<int>(), a.at(4).get<std::int32_t>()};
        v.parent0 = {(std::int8_t)a.at(5).get<int>(), a.at(6).get<std::int32_t>()};
        v.label = a.at(7).get<int>();
        cx.vertices.push_back(v);
    }
    for (const auto& a : j.at("edges")) {
        CellComplex::Edge e;
        e.image = a.at(0).get<std::int32_t>();
        e.parent = {(std::int8_t)a.at(1).get<int>(), a.at(2).get<std::int32_t>()};
        e.key1 = {(std::int8_t)a.at(3).get<int>(), a.at(4).get<std::int32_t>()};
        e.parent0 = {(std::int8_t)a.at(5).get<int>(), a.at(6).get<std::int32_t>()};
        e.ends = {a.at(7).get<std::int32_t>(), a.at(8).get<std::int32_t>()};
        e.img_reversed = a.at(9).get<bool>();
        cx.edges.push_back(e);
    }
    for (const auto& a : j.at("tiles")) {
        CellComplex::Tile t;
        t.image = a.at(0).get<std::int32_t>();
        t.parent = a.at(1).get<std::int32_t>();
        t.key1 = {(std::int8_t)a.at(2).get<int>(), a.at(3).get<std::int32_t>()};
        t.parent0 = {(std::int8_t)a.at(4).get<int>(), a.at(5).get<std::int32_t>()};
        t.color = a.at(6).get<int>() == 0 ? Color::white : Color::black;
        t.vertices = a.at(7).get<std::vector<std::int32_t>>();
        t.edges = a.at(8).get<std::vector<std::int32_t>>();
        cx.tiles.push_back(std::move(t));
    }
    cx.prev_vertex_child = j.at("prev_vertex_child").get<std::vector<std::int32_t>>();
    for (std::size_t v = 0; v < cx.vertices.size(); ++v)
        cx.keymap[pack_key(0, cx.vertices[v].key1, cx.vertices[v].image)] = (std::int32_t)v;
    for (std::size_t e = 0; e < cx.edges.size(); ++e)
        cx.keymap[pack_key(1, cx.edges[e].key1, cx.edges[e].image)] = (std::int32_t)e;
    for (std::size_t t = 0; t < cx.tiles.size(); ++t)
        cx.keymap[pack_key(2, cx.tiles[t].key1, cx.tiles[t].image)] = (std::int32_t)t;
    return cx;
}

std::string cache_file(const std::string& dir, const std::string& key, int n) {
    return dir + "/" + key + "_L" + std::to_string(n) + ".cplx";
}

} // namespace

bool Engine::try_load_level(int n) {
    if (opts_.cache_dir.empty() || n < 2) return false;
    std::ifstream in(cache_file(opts_.cache_dir, cache_key_, n), std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    try {
        json wrap = json::parse(text);
        std::string payload = wrap.at("payload").get<std::string>();
        std::uint64_t crc = wrap.at("crc").get<std::uint64_t>();
        if (fnv1a64(payload) != crc) {
            stats_.cache_rejects++;
            return false;
        }
        CellComplex cx = deserialize_complex(payload);
        if (cx.level != n || cx.m != rule_.m) {
            stats_.cache_rejects++;
            return false;
        }
        finish_level(cx);
        levels_.push_back(std::move(cx));
        stats_.levels_loaded++;
        return true;
    } catch (const std::exception&) {
        stats_.cache_rejects++;
        return false;
    }
}

void Engine::write_cache(int upto_level) {
    if (opts_.cache_dir.empty()) throw CacheError("no cache directory configured");
    std::error_code ec;
    std::filesystem::create_directories(opts_.cache_dir, ec);
    level(upto_level);
    for (int n = 2; n <= upto_level; ++n) {
        std::string payload = serialize_complex(levels_[n]);
        json wrap;
        wrap["crc"] = fnv1a64(payload);
        wrap["payload"] = payload;
        std::string path = cache_file(opts_.cache_dir, cache_key_, n);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot write " + path);
        out << wrap.dump();
        stats_.cache_writes++;
    }
}

int Engine::clear_cache() {
    if (opts_.cache_dir.empty()) return 0;
    int removed = 0;
    std::error_code ec;
    for (int n = 2; n <= 64; ++n) {
        std::string path = cache_file(opts_.cache_dir, cache_key_, n);
        if (std::filesystem::remove(path, ec)) ++removed;
    }
    return removed;
}

// ---------------------------------------------------------------------------
// operations

std::map<TileClass, long long> tile_class_counts(Engine& eng, int n) {
    if (n < 1) throw LevelUnavailable("tile classes need level >= 1");
    const CellComplex& cx = eng.level(n);
    const CellComplex& prev = eng.level(n - 1);
    std::map<TileClass, long long> out{{TileClass::ww, 0}, {TileClass::wb, 0},
                                       {TileClass::bw, 0}, {TileClass::bb, 0}};
    for (const auto& t : cx.tiles) {
        Color container = n == 1 ? Color(t.parent0.id) : prev.tiles[t.parent].color;
        out[make_class(t.color, container)]++;
    }
    return out;
}

std::map<TileClass, long long> iterate_class_counts(Engine& eng, int n) {
    const CellComplex& cx = eng.level(n);
    std::map<TileClass, long long> out{{TileClass::ww, 0}, {TileClass::wb, 0},
                                       {TileClass::bw, 0}, {TileClass::bb, 0}};
    for (const auto& t : cx.tiles) out[make_class(t.color, Color(t.parent0.id))]++;
    return out;
}

long long count_white_tiles_in(Engine& eng, const CellRef& tile, int i) {
    if (tile.cell.dim != 2) throw std::invalid_argument("count_white_tiles_in needs a tile");
    if (i < tile.level) throw LevelUnavailable("target level exceeds the query level");
    const CellComplex& cx = eng.level(i);
    long long count = 0;
    for (std::size_t t = 0; t < cx.tiles.size(); ++t) {
        if (cx.tiles[t].color != Color::white) continue;
        std::int32_t anc = (std::int32_t)t;
        for (int l = i; l > tile.level; --l) anc = eng.level(l).tiles[anc].parent;
        if (anc == tile.cell.id) ++count;
    }
    return count;
}

Rational count_white_tiles_closed_form(const RuleStats& st, Color target, int gap) {
    Rational dn = ipow(st.d, gap);
    Rational delta = 1;
    Integer base = st.w_w - st.b_w;
    delta = ipow(base, gap);
    if (target == Color::white) return st.w * dn + st.b * delta;
    return st.b * dn - st.b * delta;
}

std::vector<CellRef> flower(Engine& eng, const CellRef& v) {
    if (v.cell.dim != 0) throw std::invalid_argument("flower needs a vertex");
    const CellComplex& cx = eng.level(v.level);
    std::vector<CellRef> out;
    out.push_back(v);
    for (auto e : cx.vertex_edges()[v.cell.id]) out.push_back({v.level, edge_cell(e)});
    for (auto t : cx.vertex_tiles()[v.cell.id]) out.push_back({v.level, tile_cell(t)});
    return out;
}

int local_degree_at(Engine& eng, const CellRef& v) {
    if (v.cell.dim != 0) throw std::invalid_argument("local degree needs a vertex");
    const CellComplex& cx = eng.level(v.level);
    return (int)cx.vertex_tiles()[v.cell.id].size() / 2;
}

bool joins_opposite_sides(Engine& eng, const CellRef& tile) {
    const CellComplex& cx = eng.level(tile.level);
    const int m = eng.rule().m;
    const auto& t = cx.tiles[tile.cell.id];
    std::set<int> met;
    auto absorb = [&](const Cell& par0) {
        if (par0.dim == 1) met.insert(par0.id);
        else if (par0.dim == 0) {
            met.insert(par0.id);
            met.insert((par0.id + m - 1) % m);
        }
    };
    for (auto v : t.vertices) absorb(cx.vertices[v].parent0);
    for (auto e : t.edges) absorb(cx.edges[e].parent0);
    if (m == 3) return met.size() == 3;
    for (auto i : met)
        for (auto j : met) {
            if (i == j) continue;
            bool adjacent = (i + 1) % m == j || (j + 1) % m == i;
            if (!adjacent) return true;
        }
    return false;
}

std::optional<int> find_expansion_level(Engine& eng, int max_n) {
    int cap = std::min(max_n, eng.max_level());
    for (int n = 1; n <= cap; ++n) {
        const CellComplex& cx = eng.level(n);
        bool joiner = false;
        for (std::size_t t = 0; t < cx.tiles.size() && !joiner; ++t)
            joiner = joins_opposite_sides(eng, {n, tile_cell((std::int32_t)t)});
        if (!joiner) return n;
    }
    return std::nullopt;
}

namespace {

// minimal level-m cell of a level-L vertex
Cell ancestor_cell(Engine& eng, int L, std::int32_t v, int target_level) {
    Cell c = vertex_cell(v);
    for (int l = L; l > target_level; --l) c = eng.level(l).parent_of(c);
    return c;
}

} // namespace

std::vector<CellRef> cover_edge(Engine& eng, const CellRef& edge, int k) {
    if (edge.cell.dim != 1) throw std::invalid_argument("cover_edge needs an edge");
    const int L = edge.level + k;
    const CellComplex& cx = eng.level(L);
    const CellComplex& base = eng.level(edge.level);
    Cell e = edge.cell;
    Cell a = vertex_cell(base.edges[e.id].ends[0]);
    Cell b = vertex_cell(base.edges[e.id].ends[1]);
    std::set<std::int32_t> tiles;
    for (std::size_t v = 0; v < cx.vertices.size(); ++v) {
        Cell anc = ancestor_cell(eng, L, (std::int32_t)v, edge.level);
        if (anc == e || anc == a || anc == b)
            for (auto t : cx.vertex_tiles()[v]) tiles.insert(t);
    }
    std::vector<CellRef> out;
    for (auto t : tiles) out.push_back({L, tile_cell(t)});
    return out;
}

bool cover_contains_edge(Engine& eng, const CellRef& edge, int k, const std::vector<CellRef>& cover) {
    const int L = edge.level + k;
    const CellComplex& cx = eng.level(L);
    const CellComplex& base = eng.level(edge.level);
    Cell e = edge.cell;
    Cell a = vertex_cell(base.edges[e.id].ends[0]);
    Cell b = vertex_cell(base.edges[e.id].ends[1]);
    std::set<std::int32_t> in_cover;
    for (const auto& c : cover) in_cover.insert(c.cell.id);
    for (std::size_t t = 0; t < cx.tiles.size(); ++t) {
        if (in_cover.count((std::int32_t)t)) continue;
        for (auto v : cx.tiles[t].vertices) {
            Cell anc = ancestor_cell(eng, L, v, edge.level);
            if (anc == e || anc == a || anc == b) return false; // touches the edge but excluded
        }
    }
    return true;
}

SubdivisionRule iterate_rule(Engine& eng, int n) {
    if (n < 1) throw std::invalid_argument("iterate_rule needs n >= 1");
    const CellComplex& cx = eng.level(n);
    SubdivisionRule out;
    out.m = eng.rule().m;
    long long dn = 1;
    for (int i = 0; i < n; ++i) dn *= eng.rule().d;
    out.d = (int)dn;
    out.vertices.resize(cx.vertices.size());
    for (std::size_t v = 0; v < cx.vertices.size(); ++v) out.vertices[v].label = cx.vertices[v].label;
    out.edges.resize(cx.edges.size());
    for (std::size_t e = 0; e < cx.edges.size(); ++e) {
        auto& oe = out.edges[e];
        oe.ends = cx.edges[e].ends;
        std::int32_t img = (std::int32_t)e;
        bool rev = false;
        for (int l = n; l >= 1; --l) {
            rev ^= eng.level(l).edges[img].img_reversed;
            img = eng.level(l).edges[img].image;
        }
        oe.image = img;
        oe.reversed = rev;
    }
    out.tiles.resize(cx.tiles.size());
    for (std::size_t t = 0; t < cx.tiles.size(); ++t) {
        auto& ot = out.tiles[t];
        ot.color = cx.tiles[t].color;
        ot.location = Color(cx.tiles[t].parent0.id);
        ot.vertices = cx.tiles[t].vertices;
        ot.edges = cx.tiles[t].edges;
    }
    out.curve_vertices.assign(cx.zero_vertex_rep.begin(), cx.zero_vertex_rep.end());
    const auto& walk = eng.curve_walk(n);
    out.curve_chains.resize(out.m);
    for (int j = 0; j < out.m; ++j)
        for (const auto& [e, dir] : walk.chains[j]) out.curve_chains[j].push_back(e);
    return canonicalize(out);
}

// ---------------------------------------------------------------------------
// rule isomorphism: spread a curve-seeded matching across tiles

bool rules_isomorphic(const SubdivisionRule& a, const SubdivisionRule& b) {
    if (a.m != b.m || a.d != b.d) return false;
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size() ||
        a.tiles.size() != b.tiles.size())
        return false;
    const int m = a.m;

    auto edge_tiles = [](const SubdivisionRule& r) {
        std::vector<std::array<std::int32_t, 2>> et(r.edges.size(), {-1, -1});
        for (std::size_t t = 0; t < r.tiles.size(); ++t)
            for (auto e : r.tiles[t].edges) {
                if (et[e][0] < 0) et[e][0] = (std::int32_t)t;
                else if (et[e][1] < 0) et[e][1] = (std::int32_t)t;
                else return std::vector<std::array<std::int32_t, 2>>{};
            }
        return et;
    };
    auto eta = edge_tiles(a), etb = edge_tiles(b);
    if (eta.empty() || etb.empty()) return false;
    for (const auto& p : eta)
        if (p[1] < 0) return false;
    for (const auto& p : etb)
        if (p[1] < 0) return false;

    std::vector<std::int32_t> vmap(a.vertices.size(), -1), emap(a.edges.size(), -1),
        tmap(a.tiles.size(), -1);
    bool ok = true;
    auto bind_v = [&](std::int32_t va, std::int32_t vb) {
        if (va < 0 || vb < 0 || a.vertices[va].label != b.vertices[vb].label) return false;
        if (vmap[va] == -1) vmap[va] = vb;
        return vmap[va] == vb;
    };
    auto bind_e = [&](std::int32_t ea, std::int32_t eb) {
        if (ea < 0 || eb < 0 || a.edges[ea].image != b.edges[eb].image) return false;
        if (emap[ea] == -1) emap[ea] = eb;
        return emap[ea] == eb;
    };

    // seed along the curve
    for (int k = 0; k < m && ok; ++k) ok = bind_v(a.curve_vertices[k], b.curve_vertices[k]);
    for (int j = 0; j < m && ok; ++j) {
        if (a.curve_chains[j].size() != b.curve_chains[j].size()) return false;
        std::int32_t at_a = a.curve_vertices[j], at_b = b.curve_vertices[j];
        for (std::size_t i = 0; i < a.curve_chains[j].size() && ok; ++i) {
            std::int32_t ea = a.curve_chains[j][i], eb = b.curve_chains[j][i];
            ok = bind_e(ea, eb);
            at_a = a.edges[ea].ends[0] == at_a ? a.edges[ea].ends[1] : a.edges[ea].ends[0];
            at_b = b.edges[eb].ends[0] == at_b ? b.edges[eb].ends[1] : b.edges[eb].ends[0];
            if (ok) ok = bind_v(at_a, at_b);
        }
    }
    if (!ok) return false;

    auto slot_of = [](const SubdivisionRule::Tile& t, std::int32_t e) {
        for (std::size_t k = 0; k < t.edges.size(); ++k)
            if (t.edges[k] == e) return (int)k;
        return -1;
    };

    std::vector<std::pair<std::int32_t, std::int32_t>> queue;
    auto match_tile = [&](std::int32_t ta, std::int32_t tb, int sa, int sb) {
        if (tmap[ta] != -1) return tmap[ta] == tb;
        const auto& A = a.tiles[ta];
        const auto& B = b.tiles[tb];
        if (A.color != B.color || A.location != B.location) return false;
        tmap[ta] = tb;
        for (int k = 0; k < m; ++k) {
            if (!bind_v(A.vertices[(sa + k) % m], B.vertices[(sb + k) % m])) return false;
            if (!bind_e(A.edges[(sa + k) % m], B.edges[(sb + k) % m])) return false;
        }
        queue.push_back({ta, tb});
        return true;
    };

    // first curve edge: its white-side incident tiles correspond
    {
        std::int32_t ea = a.curve_chains[0][0], eb = b.curve_chains[0][0];
        for (Color side : {Color::white, Color::black}) {
            std::int32_t ta = a.tiles[eta[ea][0]].location == side ? eta[ea][0] : eta[ea][1];
            std::int32_t tb = b.tiles[etb[eb][0]].location == side ? etb[eb][0] : etb[eb][1];
            if (!match_tile(ta, tb, slot_of(a.tiles[ta], ea), slot_of(b.tiles[tb], eb)))
                return false;
        }
    }

    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        auto [ta, tb] = queue[qi];
        for (int k = 0; k < m; ++k) {
            std::int32_t ea = a.tiles[ta].edges[k];
            std::int32_t eb = emap[ea];
            std::int32_t oa = eta[ea][0] == ta ? eta[ea][1] : eta[ea][0];
            std::int32_t ob = etb[eb][0] == tb ? etb[eb][1] : etb[eb][0];
            if (!match_tile(oa, ob, slot_of(a.tiles[oa], ea), slot_of(b.tiles[ob], eb)))
                return false;
        }
    }
    for (auto t : tmap)
        if (t < 0) return false;
    return true;
}

} // namespace thurston
