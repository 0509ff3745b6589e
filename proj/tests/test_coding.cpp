#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thurston/coding.hpp"

#include <set>

using namespace thurston;

namespace {

long long pow_ll(long long b, int e) {
    long long r = 1;
    while (e--) r *= b;
    return r;
}

std::vector<Word> all_words(int d, int n) {
    std::vector<Word> out;
    std::vector<int> letters(n, 0);
    while (true) {
        out.push_back(Word{letters});
        int i = n - 1;
        while (i >= 0 && ++letters[i] == d) letters[i--] = 0;
        if (i < 0) break;
    }
    if (n == 0) out = {Word{}};
    return out;
}

} // namespace

TEST_CASE("word serialization round trips") {
    Word w = Word::parse("0312", 4);
    CHECK(w.to_string() == "0312");
    CHECK(w.shifted().to_string() == "312");
    CHECK_THROWS_AS(Word::parse("04", 4), std::invalid_argument);
    Word wide = Word::parse("a9", 11);
    CHECK(wide.letters[0] == 10);
}

TEST_CASE("the empty word codes the white 0-tile") {
    Engine eng{generate_checkerboard(2, 2)};
    CodingTable table = CodingTable::canonical(eng);
    CHECK(word_to_tile(eng, table, Word{}) == CellRef{0, tile_cell(0)});
}

TEST_CASE("words biject onto the white tiles of their level") {
    for (auto gen : {generate_checkerboard(2, 2), generate_checkerboard(3, 3)}) {
        Engine eng{gen};
        CodingTable table = CodingTable::canonical(eng);
        const int d = eng.rule().d;
        const int top = d == 4 ? 4 : 3;
        for (int n = 1; n <= top; ++n) {
            std::set<std::int32_t> seen;
            for (const auto& w : all_words(d, n)) {
                CellRef t = word_to_tile(eng, table, w);
                CHECK(t.level == n);
                CHECK(eng.level(n).tiles[t.cell.id].color == Color::white);
                seen.insert(t.cell.id);
            }
            CHECK((long long)seen.size() == pow_ll(d, n)); // injective and onto
        }
    }
}

TEST_CASE("coding is equivariant: map after coding equals coding after shift") {
    Engine eng{generate_checkerboard(2, 2)};
    CodingTable table = CodingTable::canonical(eng);
    for (int n = 1; n <= 4; ++n) {
        for (const auto& w : all_words(4, n)) {
            CellRef t = word_to_tile(eng, table, w);
            std::int32_t image = eng.level(n).tiles[t.cell.id].image;
            CellRef shifted = word_to_tile(eng, table, w.shifted());
            CHECK(CellRef{n - 1, tile_cell(image)} == shifted);
        }
    }
}

TEST_CASE("coded preimages of a generic point") {
    Engine eng{generate_checkerboard(2, 2)};
    CodingTable table = CodingTable::canonical(eng);
    PointAddress base{tile_cell(0)};
    CHECK(word_to_preimage(eng, table, Word{}, base) == base);
    const int n = 3;
    std::set<Cell> cells;
    for (const auto& w : all_words(4, n)) {
        PointAddress q = word_to_preimage(eng, table, w, base);
        CHECK(q.depth() == n);
        // the preimage lives in the coded tile
        CHECK(q.cell_at(eng, n).cell == word_to_tile(eng, table, w).cell);
        cells.insert(q.cell_at(eng, n).cell);
        // and maps back to the base point
        PointAddress back = q;
        for (int i = 0; i < n; ++i) back = apply_map(eng, back);
        CHECK(back == base);
    }
    CHECK((long long)cells.size() == pow_ll(4, n)); // distinct words, disjoint cells

    PointAddress black_base{tile_cell(1)};
    CHECK_THROWS_AS(word_to_preimage(eng, table, Word::parse("0", 4), black_base),
                    NonGenericBasePoint);
    PointAddress vertex_base = vertex_address(eng, {0, vertex_cell(0)}, 1);
    CHECK_THROWS_AS(word_to_preimage(eng, table, Word::parse("0", 4), vertex_base),
                    NonGenericBasePoint);
}

TEST_CASE("front extensions step through the fiber product") {
    // prepending a letter picks one preimage sheet, so the extended point maps
    // back onto the original and the extended tile maps onto the original tile
    Engine eng{generate_checkerboard(2, 2)};
    CodingTable table = CodingTable::canonical(eng);
    PointAddress base{tile_cell(0)};
    for (const auto& w : all_words(4, 2)) {
        PointAddress q = word_to_preimage(eng, table, w, base);
        CellRef t = word_to_tile(eng, table, w);
        for (int j = 0; j < 4; ++j) {
            Word ext;
            ext.letters.push_back(j);
            ext.letters.insert(ext.letters.end(), w.letters.begin(), w.letters.end());
            CHECK(apply_map(eng, word_to_preimage(eng, table, ext, base)) == q);
            CellRef te = word_to_tile(eng, table, ext);
            CHECK(eng.level(3).tiles[te.cell.id].image == t.cell.id);
        }
    }
}

TEST_CASE("cylinder pushforward: uniform at the word level, geometric below") {
    Engine e22{generate_checkerboard(2, 2)};
    for (int n = 1; n <= 3; ++n) {
        TileMeasure push = cylinder_pushforward(e22, n, n);
        const CellComplex& cx = e22.level(n);
        Rational dn(1, pow_ll(4, n));
        for (std::size_t t = 0; t < push.masses.size(); ++t)
            CHECK(push.masses[t] == (cx.tiles[t].color == Color::white ? dn : Rational(0)));
        CHECK(push.total() == 1);
    }
    Engine e33{generate_checkerboard(3, 3)};
    RuleStats st = rule_stats(e33.rule());
    const int m = 1;
    TileMeasure mu = mome(e33, m);
    for (int n = m + 1; n <= m + 3; ++n) {
        TileMeasure push = cylinder_pushforward(e33, n, m);
        CHECK(push.total() == 1);
        auto rep = compare(push, mu);
        Rational expected =
            st.b * ipow(Integer(st.w_w - st.b_w), (unsigned)(n - m)) / ipow(st.d, (unsigned)n);
        for (const auto& dev : rep.deviation) CHECK(rat_abs(dev) == rat_abs(expected));
    }
}
