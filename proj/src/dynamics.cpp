#include "thurston/dynamics.hpp"

#include <algorithm>
#include <sstream>

namespace thurston {

PointAddress PointAddress::from_cell(Engine& eng, const CellRef& c) {
    PointAddress p;
    if (c.level == 0) {
        p.base0_ = c.cell;
        return p;
    }
    p.base0_ = eng.level(c.level).parent0_of(c.cell);
    p.rev_.resize(c.level);
    Cell cur = c.cell;
    for (int l = c.level; l >= 1; --l) {
        const CellComplex& cx = eng.level(l);
        // letter (c.level - l) in logical order, so deepest-last in storage
        p.rev_[(std::size_t)l - 1] = cx.key1_of(cur);
        cur = cx.image_of(cur);
    }
    return p;
}

PointAddress PointAddress::periodic(Engine& eng, const std::vector<Cell>& block, int depth) {
    PointAddress p;
    p.base0_ = eng.level(1).parent0_of(block[0]);
    p.rev_.resize(depth);
    for (int j = 0; j < depth; ++j) p.rev_[(std::size_t)(depth - 1 - j)] = block[j % block.size()];
    return p;
}

CellRef PointAddress::cell_at(Engine& eng, int k) const {
    if (k < 0 || k > depth())
        throw DepthExhausted("address depth " + std::to_string(depth()) +
                             " cannot produce level " + std::to_string(k));
    if (k == 0) return {0, base0_};
    Cell cur = letter(k - 1); // t_k as a level-1 cell
    for (int l = 2; l <= k; ++l) {
        Cell t = letter(k - l); // t_{k-l+1}
        std::int32_t id = eng.level(l).key_lookup(cur.dim, t, cur.id);
        if (id < 0)
            throw GluingError("address prefix does not materialize at level " + std::to_string(l));
        cur = {cur.dim, id};
    }
    return {k, cur};
}

PointAddress PointAddress::truncated(int max_depth) const {
    if (max_depth < 1 || depth() <= max_depth) return *this;
    PointAddress p;
    p.base0_ = base0_;
    p.rev_.assign(rev_.end() - max_depth, rev_.end());
    return p;
}

bool PointAddress::all_tiles() const {
    if (base0_.dim != 2) return false;
    return std::all_of(rev_.begin(), rev_.end(), [](const Cell& c) { return c.dim == 2; });
}

PointAddress PointAddress::applied(Engine& eng) const {
    if (depth() == 0) throw DepthExhausted("cannot apply the map to a depth-0 address");
    PointAddress p = *this;
    Cell dropped = p.rev_.back();
    p.rev_.pop_back();
    p.base0_ = p.rev_.empty() ? eng.level(1).image_of(dropped)
                              : eng.level(1).parent0_of(p.rev_.back());
    return p;
}

PointAddress PointAddress::prepended(Engine& eng, Cell t0) const {
    PointAddress p = *this;
    p.prepend_inplace(eng, t0);
    return p;
}

void PointAddress::prepend_inplace(Engine& eng, Cell t0) {
    rev_.push_back(t0);
    base0_ = eng.level(1).parent0_of(t0);
}

std::string PointAddress::to_string(Engine& eng, int max_levels) const {
    std::ostringstream os;
    int upto = std::min(depth(), max_levels);
    for (int k = 0; k <= upto; ++k) {
        if (k) os << ";";
        os << cell_str(cell_at(eng, k));
    }
    if (upto < depth()) os << ";...(depth " << depth() << ")";
    return os.str();
}

PointAddress apply_map(Engine& eng, const PointAddress& p) { return p.applied(eng); }

std::vector<WeightedPreimage> preimages(Engine& eng, const PointAddress& p) {
    Cell anchor = p.depth() == 0 ? p.base0() : eng.level(1).parent0_of(p.letter(0));
    std::vector<WeightedPreimage> out;
    auto push = [&](Cell t0) {
        WeightedPreimage wp;
        wp.address = p.prepended(eng, t0);
        wp.weight = eng.local_degree1(t0);
        out.push_back(std::move(wp));
    };
    if (anchor.dim == 2) {
        const auto& list = anchor.id == 0 ? eng.white_tiles1() : eng.black_tiles1();
        for (auto t : list) push(tile_cell(t));
    } else if (anchor.dim == 1) {
        for (auto e : eng.edge_preimages1(anchor.id)) push(edge_cell(e));
    } else {
        for (auto v : eng.vertex_preimages1(anchor.id)) push(vertex_cell(v));
    }
    return out;
}

PointAddress vertex_address(Engine& eng, const CellRef& v, int depth) {
    if (v.cell.dim != 0) throw std::invalid_argument("vertex_address needs a vertex");
    if (depth < v.level) throw DepthExhausted("depth must be at least the vertex level");
    std::int32_t deep = eng.vertex_at_level(v.level, v.cell.id, depth);
    return PointAddress::from_cell(eng, {depth, vertex_cell(deep)});
}

long long local_degree_along_orbit(Engine& eng, const PointAddress& p, int n) {
    if (n > p.depth())
        throw DepthExhausted("orbit of length " + std::to_string(n) + " exceeds address depth " +
                             std::to_string(p.depth()));
    long long deg = 1;
    for (int j = 0; j < n; ++j) deg *= eng.local_degree1(p.letter(j));
    return deg;
}

CriticalReport analyze_critical(Engine& eng) {
    CriticalReport rep;
    const CellComplex& one = eng.level(1);
    const int m = eng.rule().m;
    for (std::size_t v = 0; v < one.vertices.size(); ++v) {
        int deg = (int)one.vertex_tiles()[v].size() / 2;
        if (deg >= 2)
            rep.critical_vertices.push_back({(std::int32_t)v, deg, one.vertices[v].label});
    }

    std::vector<int> sigma(m);
    for (int k = 0; k < m; ++k) sigma[k] = eng.rule().vertex_label0(k);
    rep.preperiod.assign(m, 0);
    rep.period.assign(m, 0);
    std::vector<char> on_cycle(m, 0);
    for (int k = 0; k < m; ++k) {
        std::vector<int> seen;
        std::vector<int> pos(m, -1);
        int at = k;
        while (pos[at] < 0) {
            pos[at] = (int)seen.size();
            seen.push_back(at);
            at = sigma[at];
        }
        rep.preperiod[k] = pos[at];
        rep.period[k] = (int)seen.size() - pos[at];
        for (std::size_t i = pos[at]; i < seen.size(); ++i) on_cycle[seen[i]] = 1;
    }
    std::vector<char> cycle_done(m, 0);
    for (int k = 0; k < m; ++k) {
        if (!on_cycle[k] || cycle_done[k]) continue;
        std::vector<int> cyc;
        int at = k;
        do {
            cyc.push_back(at);
            cycle_done[at] = 1;
            at = sigma[at];
        } while (at != k);
        rep.cycles.push_back(std::move(cyc));
    }

    rep.kappa = 1;
    for (const auto& cv : rep.critical_vertices) {
        Cell p0 = one.vertices[cv.vertex].parent0;
        if (p0.dim != 0) continue;
        int k = p0.id;
        if (rep.preperiod[k] == 0) {
            rep.has_periodic_critical = true;
            rep.kappa *= rep.period[k];
        }
    }
    return rep;
}

} // namespace thurston
