#include "thurston/periodic.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace thurston {

long long CircleAnalysis::preserve_count() const {
    long long n = 0;
    for (const auto& s : fixed_sites)
        if (s.orientation == SiteOrientation::preserve) ++n;
    return n;
}

long long CircleAnalysis::reverse_count() const {
    long long n = 0;
    for (const auto& s : fixed_sites)
        if (s.orientation == SiteOrientation::reverse) ++n;
    return n;
}

IterateChoice establish_expansion(Engine& eng, int n, int search_cap) {
    if (n < 1) throw std::invalid_argument("iterate must be >= 1");
    IterateChoice choice;
    choice.requested_n = n;
    if (search_cap <= 0) search_cap = eng.max_level();
    auto joins_at = [&](int lvl) {
        const CellComplex& cx = eng.level(lvl);
        for (std::size_t t = 0; t < cx.tiles.size(); ++t)
            if (joins_opposite_sides(eng, {lvl, tile_cell((std::int32_t)t)})) return true;
        return false;
    };
    if (!joins_at(n)) {
        choice.used_n = n;
        return choice;
    }
    auto n0 = find_expansion_level(eng, search_cap);
    if (!n0)
        throw ExpansionNotEstablished("no expansion level found up to " +
                                      std::to_string(search_cap));
    int k = (*n0 + n - 1) / n;
    if ((long long)n * k > eng.max_level())
        throw ExpansionNotEstablished("escalated iterate " + std::to_string((long long)n * k) +
                                      " exceeds the level cap");
    choice.escalation = k;
    choice.used_n = n * k;
    return choice;
}

std::vector<CellRef> fixed_candidate_tiles(Engine& eng, int n) {
    IterateChoice choice = establish_expansion(eng, n);
    const CellComplex& cx = eng.level(choice.used_n);
    std::vector<CellRef> out;
    for (std::size_t t = 0; t < cx.tiles.size(); ++t)
        if (cx.tiles[t].color == Color(cx.tiles[t].parent0.id))
            out.push_back({choice.used_n, tile_cell((std::int32_t)t)});
    return out;
}

namespace {

// image 0-edge of a level-n edge under the n-th iterate, with orientation
std::pair<int, bool> composed_edge_image(Engine& eng, int n, std::int32_t edge) {
    std::int32_t img = edge;
    bool rev = false;
    for (int l = n; l >= 1; --l) {
        rev ^= eng.level(l).edges[img].img_reversed;
        img = eng.level(l).edges[img].image;
    }
    return {img, rev};
}

int sigma_iterate(Engine& eng, int k, int n) {
    for (int i = 0; i < n; ++i) k = eng.rule().vertex_label0(k);
    return k;
}

struct FixedSites {
    // fixed 0-vertices of the iterate, with orientation
    std::vector<std::pair<int, SiteOrientation>> vertex_sites;
    // on-curve edges whose interior holds a fixed point, with orientation
    std::vector<std::pair<std::int32_t, SiteOrientation>> edge_sites;
    // every cell containing some fixed point of the restriction to the curve
    std::set<std::int32_t> site_vertex_reps; // level-n vertex ids
    std::set<std::int32_t> site_edges;       // level-n edge ids
};

FixedSites compute_fixed_sites(Engine& eng, int n) {
    FixedSites out;
    const int m = eng.rule().m;
    const CellComplex& cx = eng.level(n);
    const auto& walk = eng.curve_walk(n);

    std::vector<char> vertex_fixed(m, 0);
    for (int k = 0; k < m; ++k) vertex_fixed[k] = sigma_iterate(eng, k, n) == k;

    for (int k = 0; k < m; ++k) {
        if (!vertex_fixed[k]) continue;
        // incoming arc: last edge of the previous chain; outgoing: first of chain k
        const auto& prev_chain = walk.chains[(k + m - 1) % m];
        const auto& next_chain = walk.chains[k];
        auto [img_in, rev_in] = composed_edge_image(eng, n, prev_chain.back().first);
        auto [img_out, rev_out] = composed_edge_image(eng, n, next_chain.front().first);
        int before = (k + m - 1) % m;
        SiteOrientation o;
        if (img_in == before && img_out == k) o = SiteOrientation::preserve;
        else if (img_in == k && img_out == before) o = SiteOrientation::reverse;
        else o = SiteOrientation::fold;
        out.vertex_sites.push_back({k, o});
        out.site_vertex_reps.insert(cx.zero_vertex_rep[k]);
    }

    for (int j = 0; j < m; ++j) {
        for (const auto& [eid, dir] : walk.chains[j]) {
            auto [img, rev] = composed_edge_image(eng, n, eid);
            if (img != j) continue; // the edge does not map over itself
            const auto& e = cx.edges[eid];
            bool endpoint_fix = false;
            for (int s = 0; s < 2; ++s) {
                Cell p0 = cx.vertices[e.ends[s]].parent0;
                if (p0.dim == 0 && vertex_fixed[p0.id]) endpoint_fix = true;
            }
            if (endpoint_fix) continue; // the fixed point of this edge is the vertex site
            int direction = dir * (rev ? -1 : +1);
            out.edge_sites.push_back({eid, direction > 0 ? SiteOrientation::preserve
                                                         : SiteOrientation::reverse});
            out.site_edges.insert(eid);
        }
    }
    return out;
}

// itinerary block of a level-n cell (length n)
std::vector<Cell> block_of(Engine& eng, const CellRef& c) {
    std::vector<Cell> block(c.level);
    Cell cur = c.cell;
    for (int l = c.level; l >= 1; --l) {
        const CellComplex& cx = eng.level(l);
        block[(std::size_t)(c.level - l)] = cx.key1_of(cur);
        cur = cx.image_of(cur);
    }
    return block;
}

bool block_shift_invariant(const std::vector<Cell>& block, int n) {
    const int len = (int)block.size();
    for (int j = 0; j < len; ++j)
        if (block[(std::size_t)j] != block[(std::size_t)((j + n) % len)]) return false;
    return true;
}

} // namespace

PointAddress locate_fixed_point(Engine& eng, const CellRef& tile, int depth) {
    const int n = tile.level;
    const CellComplex& cx = eng.level(n);
    const auto& t = cx.tiles[tile.cell.id];
    if (t.color != Color(t.parent0.id))
        throw std::invalid_argument("not a candidate tile: its class is not ww or bb");
    FixedSites sites = compute_fixed_sites(eng, n);
    for (auto v : t.vertices)
        if (sites.site_vertex_reps.count(v))
            return vertex_address(eng, {n, vertex_cell(v)}, depth);
    for (auto e : t.edges)
        if (sites.site_edges.count(e))
            return PointAddress::periodic(eng, block_of(eng, {n, edge_cell(e)}), depth);
    return PointAddress::periodic(eng, block_of(eng, tile), depth);
}

CircleAnalysis circle_analysis(Engine& eng, int n) {
    CircleAnalysis out;
    FixedSites sites = compute_fixed_sites(eng, n);
    const CellComplex& cx = eng.level(n);
    for (const auto& [k, o] : sites.vertex_sites)
        out.fixed_sites.push_back({{n, vertex_cell(cx.zero_vertex_rep[k])}, o});
    for (const auto& [e, o] : sites.edge_sites) out.fixed_sites.push_back({{n, edge_cell(e)}, o});
    auto classes = iterate_class_counts(eng, n);
    out.degree_on_curve = classes[TileClass::ww] - classes[TileClass::bw];
    return out;
}

std::vector<FixedPointRecord> enumerate_fixed_points(Engine& eng, int n, int depth) {
    IterateChoice choice = establish_expansion(eng, n);
    const int N = choice.used_n;
    if (depth < 2 * N) depth = 2 * N;
    const CellComplex& cx = eng.level(N);
    FixedSites sites = compute_fixed_sites(eng, N);

    std::vector<FixedPointRecord> out;

    auto candidate_witnesses = [&](auto&& contains) {
        std::vector<CellRef> w;
        for (std::size_t t = 0; t < cx.tiles.size(); ++t) {
            const auto& tl = cx.tiles[t];
            if (tl.color != Color(tl.parent0.id)) continue;
            if (contains(tl)) w.push_back({N, tile_cell((std::int32_t)t)});
        }
        return w;
    };

    for (const auto& [k, o] : sites.vertex_sites) {
        if (sigma_iterate(eng, k, n) != k) continue; // fixed for the iterate only
        std::int32_t rep = cx.zero_vertex_rep[k];
        std::int32_t rep_n = eng.level(n).zero_vertex_rep[k];
        FixedPointRecord rec;
        rec.address = vertex_address(eng, {0, vertex_cell(k)}, depth);
        rec.weight = local_degree_at(eng, {n, vertex_cell(rep_n)});
        rec.locus = FixedLocus::vertex;
        rec.witness = candidate_witnesses([&](const CellComplex::Tile& tl) {
            return std::find(tl.vertices.begin(), tl.vertices.end(), rep) != tl.vertices.end();
        });
        out.push_back(std::move(rec));
    }

    for (const auto& [eid, o] : sites.edge_sites) {
        std::vector<Cell> block = block_of(eng, {N, edge_cell(eid)});
        if (!block_shift_invariant(block, n)) continue;
        FixedPointRecord rec;
        rec.address = PointAddress::periodic(eng, block, depth);
        rec.weight = 1;
        rec.locus = FixedLocus::curve_edge_interior;
        rec.witness = candidate_witnesses([&](const CellComplex::Tile& tl) {
            return std::find(tl.edges.begin(), tl.edges.end(), eid) != tl.edges.end();
        });
        out.push_back(std::move(rec));
    }

    for (std::size_t t = 0; t < cx.tiles.size(); ++t) {
        const auto& tl = cx.tiles[t];
        if (tl.color != Color(tl.parent0.id)) continue;
        bool on_site = false;
        for (auto v : tl.vertices)
            if (sites.site_vertex_reps.count(v)) on_site = true;
        for (auto e : tl.edges)
            if (sites.site_edges.count(e)) on_site = true;
        if (on_site) continue; // its unique fixed point is a curve site
        std::vector<Cell> block = block_of(eng, {N, tile_cell((std::int32_t)t)});
        if (!block_shift_invariant(block, n)) continue;
        FixedPointRecord rec;
        rec.address = PointAddress::periodic(eng, block, depth);
        rec.weight = 1;
        rec.locus = FixedLocus::tile_interior;
        rec.witness = {{N, tile_cell((std::int32_t)t)}};
        out.push_back(std::move(rec));
    }
    return out;
}

PreperiodicCensus preperiodic_census(Engine& eng, int m, int n, int depth) {
    if (m < 0 || m >= n) throw std::invalid_argument("preperiodic census needs 0 <= m < n");
    auto fixed = enumerate_fixed_points(eng, n - m, depth);
    PreperiodicCensus out;
    std::vector<WeightedPreimage> frontier;
    for (auto& rec : fixed) frontier.push_back({std::move(rec.address), rec.weight});
    for (int round = 0; round < m; ++round) {
        std::vector<WeightedPreimage> next;
        for (const auto& wp : frontier)
            for (auto& br : preimages(eng, wp.address))
                next.push_back({std::move(br.address), br.weight * wp.weight});
        frontier = std::move(next);
    }
    for (auto& wp : frontier) {
        out.s += wp.weight;
        out.s_tilde += 1;
    }
    out.points = std::move(frontier);
    return out;
}

namespace {

long long moebius(long long n) {
    long long mu = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

} // namespace

Integer moebius_period_count(Engine& eng, int n) {
    CriticalReport crit = analyze_critical(eng);
    if (crit.has_periodic_critical)
        throw PeriodicCriticalPresent("the rule has periodic critical points; the Moebius count "
                                      "does not apply");
    const Integer d = eng.rule().d;
    if (n == 1) return 1 + d;
    Integer sum = 0;
    for (long long t = 1; t <= n; ++t) {
        if (n % t) continue;
        long long mu = moebius(t);
        if (mu) sum += Integer(mu) * ipow(d, (unsigned)(n / t));
    }
    return sum;
}

Integer exact_period_count(Engine& eng, int n) {
    auto fixed = enumerate_fixed_points(eng, n, 2 * n);
    Integer count = 0;
    for (const auto& rec : fixed) {
        const auto& a = rec.address;
        int period = n;
        for (int k = 1; k < n; ++k) {
            if (n % k) continue;
            bool shift_ok = true;
            for (int j = 0; j + k < a.depth() && shift_ok; ++j)
                shift_ok = a.letter(j) == a.letter(j + k);
            if (shift_ok) {
                period = k;
                break;
            }
        }
        if (period == n) ++count;
    }
    return count;
}

} // namespace thurston
