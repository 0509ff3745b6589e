#pragma once

#include "thurston/dynamics.hpp"
#include "thurston/measure.hpp"

#include <string>
#include <vector>

namespace thurston {

// Word over the alphabet {0..d-1}; serialized as digits then lowercase
// letters (d <= 36).
struct Word {
    std::vector<int> letters;
    int length() const { return (int)letters.size(); }
    Word shifted() const; // drop the first letter
    std::string to_string() const;
    static Word parse(const std::string& digits, int d);
};

// Fixed bijections from the alphabet onto the level-1 tiles of each color.
struct CodingTable {
    std::vector<std::int32_t> white_order;
    std::vector<std::int32_t> black_order;
    static CodingTable canonical(const Engine& eng); // tiles in id order per color
    const std::vector<std::int32_t>& order(Color c) const {
        return c == Color::white ? white_order : black_order;
    }
};

// The white level-n tile coded by the word; bijective onto the white n-tiles
// and equivariant: f(tile(I)) = tile(shift I).
CellRef word_to_tile(Engine& eng, const CodingTable& table, const Word& word);

// The unique preimage of a generic base point (in the white 0-tile) under
// the n-th iterate lying in tile(word).
PointAddress word_to_preimage(Engine& eng, const CodingTable& table, const Word& word,
                              const PointAddress& base);

// Push-forward of the uniform measure on words of length n to the level-m
// tile algebra.
TileMeasure cylinder_pushforward(Engine& eng, int n, int level);

} // namespace thurston
