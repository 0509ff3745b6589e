#include "thurston/measure.hpp"

#include <algorithm>
#include <cmath>

namespace thurston {

Rational TileMeasure::total() const {
    Rational t = skeleton_mass;
    for (const auto& m : masses) t += m;
    return t;
}

TileMeasure EmpiricalMeasure::evaluate(Engine& eng, int level) const {
    TileMeasure out;
    out.level = level;
    out.masses.assign(eng.level(level).tiles.size(), Rational(0));
    for (const auto& [addr, w] : atoms) {
        CellRef c = addr.cell_at(eng, level); // throws DepthExhausted on shallow atoms
        if (c.cell.dim == 2) out.masses[c.cell.id] += w;
        else out.skeleton_mass += w;
    }
    return out;
}

TileMeasure mome(Engine& eng, int level) {
    RuleStats st = rule_stats(eng.rule());
    const CellComplex& cx = eng.level(level);
    Rational dn = ipow(st.d, (unsigned)level);
    TileMeasure out;
    out.level = level;
    out.masses.reserve(cx.tiles.size());
    for (const auto& t : cx.tiles)
        out.masses.push_back((t.color == Color::white ? st.w : st.b) / dn);
    return out;
}

StepFunction apply_Q(Engine& eng, const StepFunction& phi) {
    const int m = phi.level;
    if (phi.values.size() != eng.level(m).tiles.size())
        throw std::invalid_argument("step function size does not match its level");
    const CellComplex& fine = eng.level(m + 1);
    const int d = eng.rule().d;
    StepFunction out;
    out.level = m;
    out.values.assign(eng.level(m).tiles.size(), Rational(0));
    for (const auto& t : fine.tiles) out.values[t.image] += phi.values[t.parent];
    for (auto& v : out.values) v /= d;
    return out;
}

TileMeasure apply_Q_star(Engine& eng, const TileMeasure& rho) {
    if (rho.masses.size() != eng.level(rho.level).tiles.size())
        throw std::invalid_argument("tile measure size does not match its level");
    const CellComplex& fine = eng.level(rho.level + 1);
    const int d = eng.rule().d;
    TileMeasure out;
    out.level = rho.level + 1;
    out.masses.reserve(fine.tiles.size());
    for (const auto& t : fine.tiles) out.masses.push_back(rho.masses[t.image] / d);
    out.skeleton_mass = rho.skeleton_mass;
    return out;
}

EmpiricalMeasure equidist_measure(Engine& eng, EquidistKind kind, const EquidistParams& params) {
    EmpiricalMeasure out;
    if (kind == EquidistKind::preimage_weighted || kind == EquidistKind::preimage_plain) {
        std::vector<WeightedPreimage> frontier{{params.base, 1}};
        for (int round = 0; round < params.i; ++round) {
            std::vector<WeightedPreimage> next;
            for (const auto& wp : frontier)
                for (auto& br : preimages(eng, wp.address))
                    next.push_back({std::move(br.address), br.weight * wp.weight});
            frontier = std::move(next);
        }
        if (kind == EquidistKind::preimage_weighted) {
            Rational norm = ipow(eng.rule().d, (unsigned)params.i);
            for (auto& wp : frontier)
                out.atoms.push_back({std::move(wp.address), Rational(wp.weight) / norm});
        } else {
            Rational norm = (long long)frontier.size();
            for (auto& wp : frontier)
                out.atoms.push_back({std::move(wp.address), Rational(1) / norm});
        }
        return out;
    }
    PreperiodicCensus census = preperiodic_census(eng, params.m, params.n, params.depth);
    if (kind == EquidistKind::preperiodic_weighted) {
        for (auto& wp : census.points)
            out.atoms.push_back({std::move(wp.address), Rational(wp.weight) / Rational(census.s)});
    } else {
        for (auto& wp : census.points)
            out.atoms.push_back({std::move(wp.address), Rational(1) / Rational(census.s_tilde)});
    }
    return out;
}

ComparisonReport compare(const TileMeasure& a, const TileMeasure& b) {
    if (a.level != b.level || a.masses.size() != b.masses.size())
        throw std::invalid_argument("compared measures live on different algebras");
    ComparisonReport rep;
    rep.level = a.level;
    rep.deviation.reserve(a.masses.size());
    Rational sum = 0;
    for (std::size_t t = 0; t < a.masses.size(); ++t) {
        rep.deviation.push_back(a.masses[t] - b.masses[t]);
        sum += rat_abs(rep.deviation.back());
    }
    rep.skeleton_deviation = a.skeleton_mass - b.skeleton_mass;
    rep.total_variation = (sum + rat_abs(rep.skeleton_deviation)) / 2;
    return rep;
}

ComparisonReport compare(Engine& eng, const EmpiricalMeasure& a, const TileMeasure& b, int level) {
    return compare(a.evaluate(eng, level), b);
}

// ---------------------------------------------------------------------------
// sampler

std::uint64_t RngState::next() {
    state += 0x9E3779B97f4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RngState RngState::split(std::uint64_t stream) const {
    RngState child{state ^ (0xD1342543DE82EF95ULL * (stream + 1))};
    child.next();
    return child;
}

namespace {

struct BranchFan {
    const std::vector<std::int32_t>* ids = nullptr;
    std::int8_t dim = 2;
};

BranchFan fan_of(Engine& eng, const Cell& anchor) {
    if (anchor.dim == 2)
        return {anchor.id == 0 ? &eng.white_tiles1() : &eng.black_tiles1(), 2};
    if (anchor.dim == 1) return {&eng.edge_preimages1(anchor.id), 1};
    return {&eng.vertex_preimages1(anchor.id), 0};
}

// exact threshold choice from one 64-bit draw: branch i gets the slice of
// [0, 2^64) proportional to weight_i / d
Cell weighted_pick(Engine& eng, const Cell& anchor, std::uint64_t draw) {
    BranchFan fan = fan_of(eng, anchor);
    const unsigned __int128 scaled = (unsigned __int128)draw * (std::uint64_t)eng.rule().d;
    const std::uint64_t target = (std::uint64_t)(scaled >> 64);
    std::uint64_t acc = 0;
    for (auto id : *fan.ids) {
        Cell c{fan.dim, id};
        acc += (std::uint64_t)eng.local_degree1(c);
        if (target < acc) return c;
    }
    return {fan.dim, fan.ids->back()}; // unreachable when weights sum to d
}

} // namespace

MarkovStepResult markov_step(Engine& eng, const PointAddress& p, RngState rng, int max_depth) {
    if (p.depth() >= max_depth)
        throw DepthBudgetExceeded("address depth " + std::to_string(p.depth()) +
                                  " has no headroom under the budget " + std::to_string(max_depth));
    Cell anchor = p.depth() == 0 ? p.base0() : eng.level(1).parent0_of(p.letter(0));
    std::uint64_t draw = rng.next();
    Cell chosen = weighted_pick(eng, anchor, draw);
    return {p.prepended(eng, chosen), rng};
}

Rational OrbitRun::tv_to(const TileMeasure& target) const {
    if (tile_counts.size() != target.masses.size())
        throw std::invalid_argument("orbit counts live on a different algebra");
    Rational sum = 0;
    for (std::size_t t = 0; t < tile_counts.size(); ++t)
        sum += rat_abs(Rational(tile_counts[t], steps) - target.masses[t]);
    sum += rat_abs(Rational(skeleton_count, steps) - target.skeleton_mass);
    return sum / 2;
}

OrbitRun run_backward_orbit(Engine& eng, const PointAddress& z, long long steps,
                            std::uint64_t seed, const OrbitOptions& opts) {
    if (steps < 1) throw std::invalid_argument("the orbit needs at least one step");
    if (z.depth() < opts.eval_level)
        throw DepthExhausted("start point depth " + std::to_string(z.depth()) +
                             " is shallower than the evaluation level");
    const CellComplex& one = eng.level(1);
    const CellComplex& eval = eng.level(opts.eval_level);
    OrbitRun run;
    run.steps = steps;
    run.tile_counts.assign(eval.tiles.size(), 0);
    RngState rng{seed};
    PointAddress cur = z;
    Rational atom_weight = Rational(1, steps);
    for (long long j = 0; j < steps; ++j) {
        CellRef cell = cur.cell_at(eng, opts.eval_level);
        if (cell.cell.dim == 2) run.tile_counts[cell.cell.id]++;
        else run.skeleton_count++;
        if (opts.keep_atoms)
            run.measure.atoms.push_back({cur.truncated(opts.atom_depth_cap), atom_weight});
        if (opts.observer) opts.observer(j, cell);
        if (j + 1 < steps) {
            Cell anchor = cur.depth() == 0 ? cur.base0() : one.parent0_of(cur.letter(0));
            cur.prepend_inplace(eng, weighted_pick(eng, anchor, rng.next()));
        }
    }
    return run;
}

// ---------------------------------------------------------------------------
// degree-sum bound

BoundReport degree_sum_bound_check(Engine& eng, const std::vector<CellRef>& M, int n) {
    if (M.empty()) throw std::invalid_argument("the vertex set must be nonempty");
    const int d = eng.rule().d;
    const CellComplex& cx = eng.level(n);
    BoundReport rep;
    Integer degsum = 0;
    for (const auto& v : M) {
        if (v.level != n || v.cell.dim != 0)
            throw std::invalid_argument("bound check needs level-n vertices");
        degsum += (long long)cx.vertex_tiles()[v.cell.id].size() / 2;
    }
    Integer dn = ipow(d, (unsigned)n);
    rep.lhs = Rational(degsum, dn);

    CriticalReport crit = analyze_critical(eng);
    Integer bigD = 1;
    for (const auto& cv : crit.critical_vertices) bigD *= cv.degree;

    long long card = (long long)M.size();
    double alpha = 1.0;
    Rational C;
    if (!crit.has_periodic_critical) {
        rep.case_used = 1;
        C = bigD;
    } else {
        long long kappa = crit.kappa;
        if (kappa == 1) {
            rep.case_used = 2;
            long long t0 = 0;
            const CellComplex& one = eng.level(1);
            for (const auto& cv : crit.critical_vertices) {
                Cell p0 = one.vertices[cv.vertex].parent0;
                if (p0.dim == 0 && eng.rule().vertex_label0(p0.id) == p0.id) ++t0;
            }
            C = Rational(2 * bigD * Integer(t0) * d * d, d - 1);
            alpha = std::log((double)d / (d - 1)) / std::log((double)d);
        } else {
            rep.case_used = 3;
            // constants of the kappa-th iterate
            const CellComplex& kx = eng.level((int)kappa);
            Integer bigDk = 1;
            long long t0k = 0;
            for (std::size_t v = 0; v < kx.vertices.size(); ++v) {
                long long deg = (long long)kx.vertex_tiles()[v].size() / 2;
                if (deg < 2) continue;
                bigDk *= deg;
                Cell p0 = kx.vertices[v].parent0;
                if (p0.dim == 0) {
                    int k0 = p0.id, at = k0;
                    for (long long i = 0; i < kappa; ++i) at = eng.rule().vertex_label0(at);
                    if (at == k0) ++t0k;
                }
            }
            Integer dk = ipow(d, (unsigned)kappa);
            C = Rational(dk) * Rational(2 * bigDk * Integer(t0k) * dk * dk, dk - 1);
            double dkf = pow((double)d, (double)kappa);
            alpha = std::log(dkf / (dkf - 1)) / std::log(dkf);
        }
    }
    rep.constant = C;
    rep.alpha = alpha;
    rep.linear_branch = Integer(card) >= dn;
    if (rep.linear_branch) {
        rep.rhs_linear = C * Rational(card, dn);
        rep.holds = rep.lhs <= rep.rhs_linear;
        rep.rhs_float = rat_double(rep.rhs_linear);
    } else {
        double ratio = (double)card / rat_double(Rational(dn));
        rep.rhs_float = rat_double(C) * std::pow(ratio, alpha);
        rep.holds = rat_double(rep.lhs) <= rep.rhs_float;
    }
    return rep;
}

} // namespace thurston
