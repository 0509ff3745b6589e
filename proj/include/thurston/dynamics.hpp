#pragma once

#include "thurston/complex.hpp"

#include <string>
#include <vector>

namespace thurston {

// A point of the sphere known to combinatorial depth D: the nested sequence
// of its minimal cells, one per level. Stored as the itinerary word
// (t_1, ..., t_D) of level-1 cells, where t_j is the minimal level-1 cell of
// the (j-1)-th image of the point; the minimal level-k cell is the
// materialization of the prefix (t_1 ... t_k). Applying the map drops the
// first letter; taking a preimage prepends one.
class PointAddress {
public:
    PointAddress() = default;
    // depth-0 address: nothing known beyond the level-0 cell
    explicit PointAddress(Cell base0) : base0_(base0) {}

    static PointAddress from_cell(Engine& eng, const CellRef& c);
    // the word repeating the given block forever, truncated at depth
    static PointAddress periodic(Engine& eng, const std::vector<Cell>& block, int depth);

    int depth() const { return (int)rev_.size(); }
    Cell base0() const { return base0_; }
    // logical letter j (0 = deepest; the point's own minimal level-1 cell)
    Cell letter(int j) const { return rev_[rev_.size() - 1 - (std::size_t)j]; }
    // minimal level-k cell (k <= depth; k = 0 gives base0)
    CellRef cell_at(Engine& eng, int k) const;
    // same point known only to the given depth (>= 1)
    PointAddress truncated(int max_depth) const;

    bool all_tiles() const;
    bool is_vertex_point() const { return depth() > 0 && letter(0).dim == 0; }

    PointAddress applied(Engine& eng) const;          // depth-1 image point
    PointAddress prepended(Engine& eng, Cell t0) const; // one preimage branch
    void prepend_inplace(Engine& eng, Cell t0);       // O(1) variant for long orbits

    friend bool operator==(const PointAddress&, const PointAddress&) = default;
    friend auto operator<=>(const PointAddress&, const PointAddress&) = default;

    std::string to_string(Engine& eng, int max_levels = 8) const;

private:
    Cell base0_;
    std::vector<Cell> rev_; // letters stored deepest-last so both ends are O(1)
};

struct WeightedPreimage {
    PointAddress address;
    long long weight = 1; // local degree of the map at the preimage point
};

PointAddress apply_map(Engine& eng, const PointAddress& p);
// all preimages with local-degree weights; weights sum to d
std::vector<WeightedPreimage> preimages(Engine& eng, const PointAddress& p);
// exact address of a vertex point to the requested depth
PointAddress vertex_address(Engine& eng, const CellRef& v, int depth);
// product of step degrees deg(f) along p, f(p), ..., f^(n-1)(p)
long long local_degree_along_orbit(Engine& eng, const PointAddress& p, int n);

struct CriticalReport {
    struct CriticalVertex {
        std::int32_t vertex = -1; // level-1 vertex id
        int degree = 1;
        int label = -1;
    };
    std::vector<CriticalVertex> critical_vertices;
    // orbit structure of the 0-vertex label map
    std::vector<int> preperiod; // per 0-vertex
    std::vector<int> period;    // per 0-vertex: period of its eventual cycle
    std::vector<std::vector<int>> cycles;
    bool has_periodic_critical = false;
    long long kappa = 1; // product of periods of periodic critical points
};

CriticalReport analyze_critical(Engine& eng);

} // namespace thurston
