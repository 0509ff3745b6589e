#pragma once

#include "thurston/dynamics.hpp"
#include "thurston/periodic.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace thurston {

// Finitely-additive measure on the level-m tile algebra, exact masses.
struct TileMeasure {
    int level = 0;
    std::vector<Rational> masses; // per tile id
    Rational skeleton_mass = 0;
    Rational total() const;
};

// Weighted finite multiset of point addresses.
struct EmpiricalMeasure {
    std::vector<std::pair<PointAddress, Rational>> atoms;
    TileMeasure evaluate(Engine& eng, int level) const;
};

// Function constant on level-m tile interiors.
struct StepFunction {
    int level = 0;
    std::vector<Rational> values;
};

// Measure of maximal entropy restricted to the level-m algebra:
// w d^-m per white tile, b d^-m per black tile.
TileMeasure mome(Engine& eng, int level);

// Markov operator on step functions: (Q phi)(T) averages phi over the
// preimage tiles of T one level deeper. Input at level m, output at level m.
StepFunction apply_Q(Engine& eng, const StepFunction& phi);
// adjoint: rho'(A) = rho(f(A)) / d, one level deeper
TileMeasure apply_Q_star(Engine& eng, const TileMeasure& rho);

enum class EquidistKind { preimage_weighted, preimage_plain, preperiodic_weighted, preperiodic_plain };

struct EquidistParams {
    PointAddress base;  // preimage kinds
    int i = 0;          // preimage kinds: number of pullback rounds
    int m = 0, n = 1;   // preperiodic kinds
    int depth = 0;      // address depth for preperiodic enumeration (0: derived)
};

EmpiricalMeasure equidist_measure(Engine& eng, EquidistKind kind, const EquidistParams& params);

struct ComparisonReport {
    int level = 0;
    std::vector<Rational> deviation; // a(T) - b(T) per tile
    Rational skeleton_deviation = 0;
    Rational total_variation = 0;
};

ComparisonReport compare(const TileMeasure& a, const TileMeasure& b);
ComparisonReport compare(Engine& eng, const EmpiricalMeasure& a, const TileMeasure& b, int level);

// Counter-based generator (splitmix64): one draw per step, exact integer
// thresholding for the weighted choice.
struct RngState {
    std::uint64_t state = 0;
    std::uint64_t next();
    RngState split(std::uint64_t stream) const;
};

struct MarkovStepResult {
    PointAddress point;
    RngState rng;
};
// one backward step: a preimage chosen with probability deg(y)/d
MarkovStepResult markov_step(Engine& eng, const PointAddress& p, RngState rng,
                             int max_depth = 1 << 30);

struct OrbitOptions {
    int eval_level = 1;     // level used for the streamed tile counts
    int atom_depth_cap = 8; // atoms kept truncated to this depth
    bool keep_atoms = true;
    // optional per-step observer (step index, level cell of the new point)
    std::function<void(long long, const CellRef&)> observer;
};

struct OrbitRun {
    EmpiricalMeasure measure;            // Birkhoff average of the visited points
    std::vector<long long> tile_counts;  // visits per tile at eval_level
    long long skeleton_count = 0;
    long long steps = 0;
    Rational tv_to(const TileMeasure& target) const;
};

OrbitRun run_backward_orbit(Engine& eng, const PointAddress& z, long long steps,
                            std::uint64_t seed, const OrbitOptions& opts = {});

struct BoundReport {
    int case_used = 1;           // constants case: 1 no periodic criticals, 2/3 otherwise
    Rational lhs;                // d^-n sum of local degrees over M
    Rational constant;           // C
    double alpha = 1.0;          // exponent (1 in case 1)
    bool linear_branch = true;   // card M >= d^n picks the linear bound (exact)
    Rational rhs_linear;         // C * card M / d^n (valid when linear_branch)
    double rhs_float = 0.0;      // evaluated bound (float only when alpha < 1 branch)
    bool holds = false;
};

BoundReport degree_sum_bound_check(Engine& eng, const std::vector<CellRef>& M, int n);

} // namespace thurston
