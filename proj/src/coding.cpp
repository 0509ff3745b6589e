#include "thurston/coding.hpp"

#include <algorithm>

namespace thurston {

namespace {

int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
    return -1;
}

char digit_char(int v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

} // namespace

Word Word::shifted() const {
    Word w;
    if (!letters.empty()) w.letters.assign(letters.begin() + 1, letters.end());
    return w;
}

std::string Word::to_string() const {
    std::string s;
    for (int v : letters) s += digit_char(v);
    return s;
}

Word Word::parse(const std::string& digits, int d) {
    if (d > 36) throw std::invalid_argument("word serialization supports degree <= 36");
    Word w;
    for (char c : digits) {
        int v = digit_value(c);
        if (v < 0 || v >= d)
            throw std::invalid_argument(std::string("word digit '") + c + "' out of range");
        w.letters.push_back(v);
    }
    return w;
}

CodingTable CodingTable::canonical(const Engine& eng) {
    CodingTable t;
    t.white_order = eng.white_tiles1();
    t.black_order = eng.black_tiles1();
    return t;
}

namespace {

// resolve the itinerary letters: the sheet for position j is drawn from the
// 1-tiles whose color matches the location of the deeper part already chosen
std::vector<Cell> resolve_letters(Engine& eng, const CodingTable& table, const Word& word) {
    const int n = word.length();
    std::vector<Cell> u((std::size_t)n);
    Color needed = Color::white; // the base of the recursion is the white 0-tile
    for (int j = n - 1; j >= 0; --j) {
        const auto& order = table.order(needed);
        int idx = word.letters[(std::size_t)j];
        if (idx < 0 || idx >= (int)order.size())
            throw std::invalid_argument("word letter out of range for the coding table");
        u[(std::size_t)j] = tile_cell(order[(std::size_t)idx]);
        needed = Color(eng.level(1).parent0_of(u[(std::size_t)j]).id);
    }
    return u;
}

} // namespace

CellRef word_to_tile(Engine& eng, const CodingTable& table, const Word& word) {
    if (word.length() == 0) return {0, tile_cell(0)};
    std::vector<Cell> u = resolve_letters(eng, table, word);
    // materialize the prefix directly
    Cell cur = u.back();
    for (int l = 2; l <= word.length(); ++l) {
        Cell t = u[(std::size_t)(word.length() - l)];
        std::int32_t id = eng.level(l).key_lookup(cur.dim, t, cur.id);
        if (id < 0) throw GluingError("coded tile does not materialize");
        cur = {cur.dim, id};
    }
    return {word.length(), cur};
}

PointAddress word_to_preimage(Engine& eng, const CodingTable& table, const Word& word,
                              const PointAddress& base) {
    if (!base.all_tiles() || base.base0() != tile_cell(0))
        throw NonGenericBasePoint("base point must be generic in the white 0-tile");
    if (word.length() == 0) return base;
    std::vector<Cell> u = resolve_letters(eng, table, word);
    PointAddress p = base;
    for (int j = word.length() - 1; j >= 0; --j) p = p.prepended(eng, u[(std::size_t)j]);
    return p;
}

TileMeasure cylinder_pushforward(Engine& eng, int n, int level) {
    if (level > n) throw std::invalid_argument("cylinder pushforward needs level <= word length");
    const CellComplex& cx = eng.level(n);
    TileMeasure out;
    out.level = level;
    out.masses.assign(eng.level(level).tiles.size(), Rational(0));
    Rational unit = Rational(1, ipow(eng.rule().d, (unsigned)n));
    for (std::size_t t = 0; t < cx.tiles.size(); ++t) {
        if (cx.tiles[t].color != Color::white) continue;
        std::int32_t anc = (std::int32_t)t;
        for (int l = n; l > level; --l) anc = eng.level(l).tiles[anc].parent;
        out.masses[anc] += unit;
    }
    return out;
}

} // namespace thurston
