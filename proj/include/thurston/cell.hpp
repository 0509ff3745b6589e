#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace thurston {

enum class Color : std::uint8_t { white = 0, black = 1 };

inline Color other(Color c) { return c == Color::white ? Color::black : Color::white; }
inline const char* color_name(Color c) { return c == Color::white ? "white" : "black"; }

// A cell within one level's tables: dimension 0/1/2 plus index.
struct Cell {
    std::int8_t dim = -1;
    std::int32_t id = -1;

    bool valid() const { return dim >= 0; }
    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline Cell vertex_cell(std::int32_t id) { return {0, id}; }
inline Cell edge_cell(std::int32_t id) { return {1, id}; }
inline Cell tile_cell(std::int32_t id) { return {2, id}; }

// A cell of a specific decomposition level.
struct CellRef {
    std::int32_t level = -1;
    Cell cell;

    friend bool operator==(const CellRef&, const CellRef&) = default;
    friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

inline std::string cell_str(const CellRef& c) {
    return std::to_string(c.level) + ":" + std::to_string(int(c.cell.dim)) + ":" +
           std::to_string(c.cell.id);
}

// Tile class: own color paired with the color of the containing coarser tile.
enum class TileClass : std::uint8_t { ww = 0, wb = 1, bw = 2, bb = 3 };

inline TileClass make_class(Color own, Color container) {
    if (own == Color::white)
        return container == Color::white ? TileClass::ww : TileClass::wb;
    return container == Color::white ? TileClass::bw : TileClass::bb;
}

inline const char* class_name(TileClass c) {
    switch (c) {
    case TileClass::ww: return "ww";
    case TileClass::wb: return "wb";
    case TileClass::bw: return "bw";
    default: return "bb";
    }
}

} // namespace thurston
