#pragma once

#include "thurston/dynamics.hpp"

#include <optional>
#include <vector>

namespace thurston {

enum class FixedLocus { tile_interior, curve_edge_interior, vertex };
enum class SiteOrientation { preserve, reverse, fold };

struct FixedPointRecord {
    PointAddress address;
    long long weight = 1;
    FixedLocus locus = FixedLocus::tile_interior;
    std::vector<CellRef> witness; // candidate tiles of the iterate containing the point
};

struct CircleAnalysis {
    struct Site {
        CellRef site; // vertex or edge at the iterate's level
        SiteOrientation orientation = SiteOrientation::preserve;
    };
    std::vector<Site> fixed_sites;
    long long degree_on_curve = 0; // degree of the iterate restricted to the curve
    long long preserve_count() const;
    long long reverse_count() const;
};

// resolve the level at which no tile of the n-th iterate joins opposite
// sides; escalates n to a multiple when needed (the factor is reported)
struct IterateChoice {
    int requested_n = 1;
    int used_n = 1; // requested_n * escalation
    int escalation = 1;
};
IterateChoice establish_expansion(Engine& eng, int n, int search_cap = 0);

// level-n tiles of class ww/bb relative to level 0: the candidate tiles of
// the n-th iterate
std::vector<CellRef> fixed_candidate_tiles(Engine& eng, int n);

// unique fixed point of the n-th iterate inside a candidate tile, to depth
PointAddress locate_fixed_point(Engine& eng, const CellRef& tile, int depth);

CircleAnalysis circle_analysis(Engine& eng, int n = 1);

std::vector<FixedPointRecord> enumerate_fixed_points(Engine& eng, int n, int depth);

struct PreperiodicCensus {
    Integer s = 0;        // weighted count
    Integer s_tilde = 0;  // plain cardinality
    std::vector<WeightedPreimage> points; // weights are deg of f^n at the point
};
// S_n^m = f^{-m}(Fix(f^{n-m}))
PreperiodicCensus preperiodic_census(Engine& eng, int m, int n, int depth);

// Moebius count of period-n points; requires no periodic critical points
Integer moebius_period_count(Engine& eng, int n);
// direct census: points of exact period n among Fix(f^n)
Integer exact_period_count(Engine& eng, int n);

} // namespace thurston
