#include "thurston/coding.hpp"
#include "thurston/complex.hpp"
#include "thurston/dynamics.hpp"
#include "thurston/measure.hpp"
#include "thurston/periodic.hpp"
#include "thurston/rule.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

using namespace thurston;

namespace {

enum ExitCode { EXIT_OK = 0, EXIT_DOMAIN = 1, EXIT_USAGE = 2, EXIT_IO = 3 };

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    void row(std::vector<std::string> r) { rows.push_back(std::move(r)); }

    static std::string csv_quote(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    }

    void print(const std::string& format) const {
        if (format == "json") {
            std::cout << "[";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                std::cout << (i ? ",\n " : "\n ") << "{";
                for (std::size_t c = 0; c < headers.size(); ++c)
                    std::cout << (c ? "," : "") << "\"" << headers[c] << "\":\"" << rows[i][c]
                              << "\"";
                std::cout << "}";
            }
            std::cout << "\n]\n";
            return;
        }
        bool csv = format == "csv";
        auto emit = [&](const std::vector<std::string>& cells) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c) std::cout << (csv ? "," : "\t");
                std::cout << (csv ? csv_quote(cells[c]) : cells[c]);
            }
            std::cout << "\n";
        };
        emit(headers);
        for (const auto& r : rows) emit(r);
    }
};

struct Options {
    std::string rule_path;
    std::string format = "tsv";
    bool with_float = false;
    bool stats = false;
    int max_level = -1;
    std::string cache_dir;
};

std::string num(const Rational& r, bool with_float) {
    std::string s = rat_str(r);
    if (with_float) s += "\t" + std::to_string(rat_double(r));
    return s;
}

Engine make_engine(const Options& opt, bool cache_write = false) {
    SubdivisionRule rule = load_rule_file(opt.rule_path);
    EngineOptions eo;
    eo.max_level = opt.max_level;
    eo.cache_dir = opt.cache_dir;
    if (eo.cache_dir.empty())
        if (const char* env = std::getenv("THURSTON_CACHE")) eo.cache_dir = env;
    eo.cache_write = cache_write;
    return Engine(std::move(rule), eo);
}

void print_stats(const Options& opt, const Engine& eng) {
    if (!opt.stats) return;
    const auto& s = eng.stats();
    std::cerr << "stats: levels_built=" << s.levels_built << " levels_loaded=" << s.levels_loaded
              << " cache_writes=" << s.cache_writes << " cache_rejects=" << s.cache_rejects
              << "\n";
}

PointAddress default_generic_start(Engine& eng, int level, std::int32_t tile) {
    return PointAddress::from_cell(eng, {level, tile_cell(tile)});
}

int run(int argc, char** argv) {
    CLI::App app{"exact combinatorics of two-tile subdivision rules"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool needs_rule = true) {
        if (needs_rule) cmd->add_option("file", opt.rule_path, "rule file")->required();
        cmd->add_option("--format", opt.format, "tsv|csv|json")->default_val("tsv");
        cmd->add_flag("--float", opt.with_float, "append decimal columns");
        cmd->add_flag("--stats", opt.stats, "print engine counters to stderr");
        cmd->add_option("--max-level", opt.max_level, "level cap override");
        cmd->add_option("--cache", opt.cache_dir, "cache directory (else THURSTON_CACHE)");
    };

    // --- validate ---
    auto* c_validate = app.add_subcommand("validate", "check every rule invariant");
    add_common(c_validate);
    c_validate->callback([&] {
        SubdivisionRule rule = load_rule_file(opt.rule_path);
        ValidationReport rep = validate_rule(rule);
        if (rep.ok()) {
            std::cout << "ok\n";
            return;
        }
        Table t;
        t.headers = {"invariant", "detail"};
        for (const auto& v : rep.violations) t.row({v.invariant, v.detail});
        t.print(opt.format);
        std::exit(EXIT_DOMAIN);
    });

    // --- info ---
    auto* c_info = app.add_subcommand("info", "rule statistics");
    add_common(c_info);
    c_info->callback([&] {
        SubdivisionRule rule = load_rule_file(opt.rule_path);
        RuleStats st = rule_stats(rule);
        Table t;
        t.headers = {"key", "value"};
        t.row({"m", std::to_string(st.m)});
        t.row({"d", std::to_string(st.d)});
        t.row({"w_w", std::to_string(st.w_w)});
        t.row({"w_b", std::to_string(st.w_b)});
        t.row({"b_w", std::to_string(st.b_w)});
        t.row({"b_b", std::to_string(st.b_b)});
        t.row({"w", rat_str(st.w)});
        t.row({"b", rat_str(st.b)});
        t.row({"deg_on_curve", std::to_string(st.deg_on_curve)});
        t.row({"entropy", st.entropy()});
        if (opt.with_float) t.row({"entropy_float", std::to_string(std::log((double)st.d))});
        t.print(opt.format);
    });

    // --- generate ---
    std::string gen_kind, gen_out;
    int gen_a = 2, gen_b = 2;
    auto* c_gen = app.add_subcommand("generate", "emit a built-in rule");
    c_gen->add_option("kind", gen_kind, "checkerboard|barycentric")->required();
    c_gen->add_option("--a", gen_a, "grid width (checkerboard)");
    c_gen->add_option("--b", gen_b, "grid height (checkerboard)");
    c_gen->add_option("--out", gen_out, "output path (default stdout)");
    c_gen->callback([&] {
        SubdivisionRule rule;
        if (gen_kind == "checkerboard") rule = generate_checkerboard(gen_a, gen_b);
        else if (gen_kind == "barycentric") rule = generate_barycentric();
        else throw CLI::ValidationError("kind must be checkerboard or barycentric");
        std::string text = save_rule(rule);
        if (gen_out.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(gen_out, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot write " + gen_out);
        out << text;
    });

    // --- subdivide ---
    int sub_level = 1;
    bool sub_counts = false, sub_dump = false;
    auto* c_sub = app.add_subcommand("subdivide", "build the induced decompositions");
    add_common(c_sub);
    c_sub->add_option("--level", sub_level, "deepest level to build")->required();
    c_sub->add_flag("--counts", sub_counts, "per-level cell counts");
    c_sub->add_flag("--dump", sub_dump, "canonical dump of the deepest level");
    c_sub->callback([&] {
        Engine eng = make_engine(opt);
        eng.level(sub_level);
        if (sub_counts || !sub_dump) {
            Table t;
            t.headers = {"level", "tiles", "edges", "vertices", "euler", "ww", "wb", "bw", "bb"};
            for (int n = 0; n <= sub_level; ++n) {
                const CellComplex& cx = eng.level(n);
                std::vector<std::string> row{
                    std::to_string(n), std::to_string(cx.tiles.size()),
                    std::to_string(cx.edges.size()), std::to_string(cx.vertices.size()),
                    std::to_string(cx.euler_characteristic())};
                if (n >= 1) {
                    auto cls = tile_class_counts(eng, n);
                    for (TileClass c :
                         {TileClass::ww, TileClass::wb, TileClass::bw, TileClass::bb})
                        row.push_back(std::to_string(cls[c]));
                } else {
                    row.insert(row.end(), {"-", "-", "-", "-"});
                }
                t.row(std::move(row));
            }
            t.print(opt.format);
        }
        if (sub_dump) std::cout << serialize_complex(eng.level(sub_level)) << "\n";
        print_stats(opt, eng);
    });

    // --- expansion ---
    int exp_max = 6;
    auto* c_exp = app.add_subcommand("expansion", "smallest level with no tile joining opposite sides");
    add_common(c_exp);
    c_exp->add_option("--max-n", exp_max, "search cap");
    c_exp->callback([&] {
        Engine eng = make_engine(opt);
        auto n0 = find_expansion_level(eng, exp_max);
        if (n0) std::cout << *n0 << "\n";
        else std::cout << "not-found\n";
        print_stats(opt, eng);
    });

    // --- cover-edge ---
    int ce_edge = 0, ce_k = 1;
    bool ce_series = false;
    auto* c_cover = app.add_subcommand("cover-edge", "tile covers of a 0-edge");
    add_common(c_cover);
    c_cover->add_option("--edge", ce_edge, "0-edge index")->required();
    c_cover->add_option("--k", ce_k, "levels below the edge");
    c_cover->add_flag("--series", ce_series, "emit card(M) d^-k for k = 0..K as CSV");
    c_cover->callback([&] {
        Engine eng = make_engine(opt);
        CellRef e{0, edge_cell(ce_edge)};
        if (ce_series) {
            std::cout << "k,cardM,scaled,scaled_float\n";
            for (int k = 0; k <= ce_k; ++k) {
                auto M = cover_edge(eng, e, k);
                Rational scaled = Rational((long long)M.size(), ipow(eng.rule().d, (unsigned)k));
                std::cout << k << "," << M.size() << "," << rat_str(scaled) << ","
                          << rat_double(scaled) << "\n";
            }
        } else {
            auto M = cover_edge(eng, e, ce_k);
            bool contained = cover_contains_edge(eng, e, ce_k, M);
            Table t;
            t.headers = {"key", "value"};
            t.row({"cardM", std::to_string(M.size())});
            t.row({"contained", contained ? "true" : "false"});
            t.print(opt.format);
        }
        print_stats(opt, eng);
    });

    // --- fixed-points ---
    int fp_iter = 1, fp_depth = 0;
    auto* c_fixed = app.add_subcommand("fixed-points", "weighted fixed points of an iterate");
    add_common(c_fixed);
    c_fixed->add_option("--iterate", fp_iter, "iterate n");
    c_fixed->add_option("--depth", fp_depth, "address depth (default 2n)");
    c_fixed->callback([&] {
        Engine eng = make_engine(opt);
        auto recs = enumerate_fixed_points(eng, fp_iter, fp_depth);
        Table t;
        t.headers = {"address", "weight", "locus", "witness"};
        Integer sum = 0;
        for (const auto& r : recs) {
            sum += r.weight;
            std::string locus = r.locus == FixedLocus::tile_interior ? "tile-interior"
                                : r.locus == FixedLocus::curve_edge_interior
                                    ? "curve-edge-interior"
                                    : "vertex";
            std::string wit;
            for (const auto& w : r.witness) {
                if (!wit.empty()) wit += " ";
                wit += cell_str(w);
            }
            t.row({r.address.to_string(eng), std::to_string(r.weight), locus, wit});
        }
        t.row({"TOTAL", sum.str(), "", ""});
        t.print(opt.format);
        print_stats(opt, eng);
    });

    // --- preperiodic ---
    int pp_m = 0, pp_n = 1, pp_depth = 0;
    auto* c_pp = app.add_subcommand("preperiodic", "points with f^m(x) = f^n(x)");
    add_common(c_pp);
    c_pp->add_option("--m", pp_m, "preperiod")->required();
    c_pp->add_option("--n", pp_n, "period level")->required();
    c_pp->add_option("--depth", pp_depth, "address depth");
    c_pp->callback([&] {
        Engine eng = make_engine(opt);
        auto census = preperiodic_census(eng, pp_m, pp_n, pp_depth);
        Table t;
        t.headers = {"address", "weight"};
        for (const auto& p : census.points)
            t.row({p.address.to_string(eng), std::to_string(p.weight)});
        t.row({"s", census.s.str()});
        t.row({"s_tilde", census.s_tilde.str()});
        t.print(opt.format);
        print_stats(opt, eng);
    });

    // --- moebius ---
    int mb_n = 1;
    auto* c_mb = app.add_subcommand("moebius", "period-n point count by Moebius inversion");
    add_common(c_mb);
    c_mb->add_option("--n", mb_n, "period")->required();
    c_mb->callback([&] {
        Engine eng = make_engine(opt);
        std::cout << moebius_period_count(eng, mb_n).str() << "\n";
    });

    // --- critical ---
    auto* c_crit = app.add_subcommand("critical", "critical points and postcritical orbits");
    add_common(c_crit);
    c_crit->callback([&] {
        Engine eng = make_engine(opt);
        CriticalReport rep = analyze_critical(eng);
        Table t;
        t.headers = {"key", "value"};
        t.row({"critical_count", std::to_string(rep.critical_vertices.size())});
        for (const auto& cv : rep.critical_vertices)
            t.row({"critical_vertex",
                   std::to_string(cv.vertex) + " deg=" + std::to_string(cv.degree) +
                       " label=" + std::to_string(cv.label)});
        for (const auto& cyc : rep.cycles) {
            std::string s;
            for (int k : cyc) s += (s.empty() ? "" : "->") + std::to_string(k);
            t.row({"label_cycle", s});
        }
        t.row({"has_periodic_critical", rep.has_periodic_critical ? "true" : "false"});
        t.row({"kappa", std::to_string(rep.kappa)});
        t.print(opt.format);
    });

    // --- circle ---
    int circ_n = 1;
    auto* c_circ = app.add_subcommand("circle", "fixed points of the curve restriction");
    add_common(c_circ);
    c_circ->add_option("--iterate", circ_n, "iterate n");
    c_circ->callback([&] {
        Engine eng = make_engine(opt);
        CircleAnalysis an = circle_analysis(eng, circ_n);
        Table t;
        t.headers = {"site", "orientation"};
        for (const auto& s : an.fixed_sites) {
            std::string o = s.orientation == SiteOrientation::preserve ? "preserve"
                            : s.orientation == SiteOrientation::reverse ? "reverse"
                                                                        : "fold";
            t.row({cell_str(s.site), o});
        }
        t.row({"degree_on_curve", std::to_string(an.degree_on_curve)});
        t.row({"preserve_minus_reverse",
               std::to_string(an.preserve_count() - an.reverse_count())});
        t.print(opt.format);
        print_stats(opt, eng);
    });

    // --- mome ---
    int mome_level = 1;
    auto* c_mome = app.add_subcommand("mome", "measure of maximal entropy on a tile algebra");
    add_common(c_mome);
    c_mome->add_option("--level", mome_level, "algebra level")->required();
    c_mome->callback([&] {
        Engine eng = make_engine(opt);
        TileMeasure mu = mome(eng, mome_level);
        Table t;
        t.headers = opt.with_float ? std::vector<std::string>{"tile", "color", "mass", "mass_float"}
                                   : std::vector<std::string>{"tile", "color", "mass"};
        const CellComplex& cx = eng.level(mome_level);
        for (std::size_t i = 0; i < mu.masses.size(); ++i) {
            std::vector<std::string> row{std::to_string(i), color_name(cx.tiles[i].color),
                                         rat_str(mu.masses[i])};
            if (opt.with_float) row.push_back(std::to_string(rat_double(mu.masses[i])));
            t.row(std::move(row));
        }
        t.row(opt.with_float
                  ? std::vector<std::string>{"TOTAL", "", rat_str(mu.total()),
                                             std::to_string(rat_double(mu.total()))}
                  : std::vector<std::string>{"TOTAL", "", rat_str(mu.total())});
        t.print(opt.format);
        print_stats(opt, eng);
    });

    // --- equidist ---
    std::string eq_kind = "preimage-weighted";
    int eq_i = 1, eq_level = 1, eq_m = 0, eq_n = 2, eq_imax = 0;
    int eq_start_tile = 0;
    auto* c_eq = app.add_subcommand("equidist", "equidistribution measures vs the maximal measure");
    add_common(c_eq);
    c_eq->add_option("--kind", eq_kind,
                     "preimage-weighted|preimage-plain|preperiodic-weighted|preperiodic-plain");
    c_eq->add_option("--i", eq_i, "pullback rounds (preimage kinds)");
    c_eq->add_option("--level", eq_level, "evaluation level")->required();
    c_eq->add_option("--m", eq_m, "preperiod (preperiodic kinds)");
    c_eq->add_option("--n", eq_n, "period level (preperiodic kinds)");
    c_eq->add_option("--imax", eq_imax, "emit a CSV series for i = level..imax");
    c_eq->add_option("--start-tile", eq_start_tile, "tile id at the evaluation level whose "
                                                    "interior holds the base point");
    c_eq->callback([&] {
        Engine eng = make_engine(opt);
        EquidistKind kind;
        if (eq_kind == "preimage-weighted") kind = EquidistKind::preimage_weighted;
        else if (eq_kind == "preimage-plain") kind = EquidistKind::preimage_plain;
        else if (eq_kind == "preperiodic-weighted") kind = EquidistKind::preperiodic_weighted;
        else if (eq_kind == "preperiodic-plain") kind = EquidistKind::preperiodic_plain;
        else throw CLI::ValidationError("unknown kind " + eq_kind);
        TileMeasure mu = mome(eng, eq_level);
        EquidistParams params;
        params.base = default_generic_start(eng, 0, eq_start_tile == 0 ? 0 : eq_start_tile);
        if (eq_imax > 0) {
            std::cout << "i,tv,tv_float\n";
            for (int i = eq_level; i <= eq_imax; ++i) {
                params.i = i;
                EmpiricalMeasure nu = equidist_measure(eng, kind, params);
                auto rep = compare(eng, nu, mu, eq_level);
                std::cout << i << "," << rat_str(rep.total_variation) << ","
                          << rat_double(rep.total_variation) << "\n";
            }
        } else {
            params.i = eq_i;
            params.m = eq_m;
            params.n = eq_n;
            params.depth = eq_level; // atoms must reach the evaluation level
            EmpiricalMeasure nu = equidist_measure(eng, kind, params);
            auto rep = compare(eng, nu, mu, eq_level);
            Table t;
            t.headers = {"tile", "deviation"};
            for (std::size_t i = 0; i < rep.deviation.size(); ++i)
                t.row({std::to_string(i), rat_str(rep.deviation[i])});
            t.row({"skeleton", rat_str(rep.skeleton_deviation)});
            t.row({"TV", rat_str(rep.total_variation)});
            t.print(opt.format);
        }
        print_stats(opt, eng);
    });

    // --- sample ---
    long long sm_steps = 100000;
    std::uint64_t sm_seed = 7;
    int sm_level = 1, sm_stride = 0, sm_start = 0;
    auto* c_sample = app.add_subcommand("sample", "random backward orbit Birkhoff averages");
    add_common(c_sample);
    c_sample->add_option("--steps", sm_steps, "orbit length")->required();
    c_sample->add_option("--seed", sm_seed, "rng seed");
    c_sample->add_option("--level", sm_level, "evaluation level");
    c_sample->add_option("--stride", sm_stride, "series stride (default steps/100)");
    c_sample->add_option("--start-tile", sm_start, "start tile id at the evaluation level");
    c_sample->callback([&] {
        Engine eng = make_engine(opt);
        TileMeasure mu = mome(eng, sm_level);
        PointAddress z = default_generic_start(eng, sm_level, sm_start);
        long long stride = sm_stride > 0 ? sm_stride : std::max<long long>(1, sm_steps / 100);
        std::vector<long long> counts(eng.level(sm_level).tiles.size(), 0);
        long long skel = 0;
        std::cout << "step,tv,tv_float\n";
        OrbitOptions oo;
        oo.eval_level = sm_level;
        oo.keep_atoms = false;
        oo.observer = [&](long long j, const CellRef& cell) {
            if (cell.cell.dim == 2) counts[cell.cell.id]++;
            else skel++;
            if ((j + 1) % stride == 0 || j + 1 == sm_steps) {
                Rational tv = 0;
                for (std::size_t t = 0; t < counts.size(); ++t)
                    tv += rat_abs(Rational(counts[t], j + 1) - mu.masses[t]);
                tv += rat_abs(Rational(skel, j + 1) - mu.skeleton_mass);
                tv /= 2;
                std::cout << (j + 1) << "," << rat_str(tv) << "," << rat_double(tv) << "\n";
            }
        };
        run_backward_orbit(eng, z, sm_steps, sm_seed, oo);
        print_stats(opt, eng);
    });

    // --- code ---
    std::string code_word;
    int code_level = -1;
    auto* c_code = app.add_subcommand("code", "white tile coded by a word");
    add_common(c_code);
    c_code->add_option("--word", code_word, "digits base d")->required();
    c_code->add_option("--level", code_level, "also report the ancestor at this level");
    c_code->callback([&] {
        Engine eng = make_engine(opt);
        CodingTable table = CodingTable::canonical(eng);
        Word w = Word::parse(code_word, eng.rule().d);
        Table t;
        t.headers = {"word", "tile"};
        Word cur = w;
        while (true) {
            CellRef ref = word_to_tile(eng, table, cur);
            t.row({cur.length() ? cur.to_string() : "-", cell_str(ref)});
            if (cur.length() == 0) break;
            cur = cur.shifted();
        }
        if (code_level >= 0) {
            CellRef ref = word_to_tile(eng, table, w);
            std::int32_t anc = ref.cell.id;
            for (int l = ref.level; l > code_level; --l) anc = eng.level(l).tiles[anc].parent;
            t.row({"ancestor@" + std::to_string(code_level),
                   cell_str({code_level, tile_cell(anc)})});
        }
        t.print(opt.format);
        print_stats(opt, eng);
    });

    // --- cylinder ---
    int cyl_n = 1, cyl_level = 1;
    auto* c_cyl = app.add_subcommand("cylinder", "pushforward of the uniform cylinder measure");
    add_common(c_cyl);
    c_cyl->add_option("--n", cyl_n, "word length")->required();
    c_cyl->add_option("--level", cyl_level, "target algebra level")->required();
    c_cyl->callback([&] {
        Engine eng = make_engine(opt);
        TileMeasure push = cylinder_pushforward(eng, cyl_n, cyl_level);
        TileMeasure mu = mome(eng, cyl_level);
        auto rep = compare(push, mu);
        Table t;
        t.headers = {"tile", "mass", "deviation"};
        for (std::size_t i = 0; i < push.masses.size(); ++i)
            t.row({std::to_string(i), rat_str(push.masses[i]), rat_str(rep.deviation[i])});
        t.row({"TV", rat_str(rep.total_variation), ""});
        t.print(opt.format);
        print_stats(opt, eng);
    });

    // --- bound ---
    int bd_n = 1;
    auto* c_bound = app.add_subcommand("bound", "degree-sum bound over all level-n vertices");
    add_common(c_bound);
    c_bound->add_option("--n", bd_n, "level")->required();
    c_bound->callback([&] {
        Engine eng = make_engine(opt);
        const CellComplex& cx = eng.level(bd_n);
        std::vector<CellRef> M;
        for (std::size_t v = 0; v < cx.vertices.size(); ++v)
            M.push_back({bd_n, vertex_cell((std::int32_t)v)});
        BoundReport rep = degree_sum_bound_check(eng, M, bd_n);
        Table t;
        t.headers = {"key", "value"};
        t.row({"case", std::to_string(rep.case_used)});
        t.row({"lhs", rat_str(rep.lhs)});
        t.row({"constant", rat_str(rep.constant)});
        t.row({"alpha", std::to_string(rep.alpha)});
        t.row({"branch", rep.linear_branch ? "linear" : "power"});
        t.row({"rhs", rep.linear_branch ? rat_str(rep.rhs_linear) : std::to_string(rep.rhs_float)});
        t.row({"holds", rep.holds ? "true" : "false"});
        t.print(opt.format);
        print_stats(opt, eng);
    });

    // --- cache ---
    int cache_level = 4;
    bool cache_clear = false;
    auto* c_cache = app.add_subcommand("cache", "precompute and store the decompositions");
    add_common(c_cache);
    c_cache->add_option("--level", cache_level, "deepest level to store");
    c_cache->add_flag("--clear", cache_clear, "remove stored levels for this rule");
    c_cache->callback([&] {
        Engine eng = make_engine(opt, true);
        if (cache_clear) {
            std::cout << "cleared " << eng.clear_cache() << " entries\n";
        } else {
            eng.write_cache(cache_level);
            std::cout << "cached levels 2.." << cache_level << " under key " << eng.cache_key()
                      << "\n";
        }
        print_stats(opt, eng);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? EXIT_OK : EXIT_USAGE;
    }
    return EXIT_OK;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CacheError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return EXIT_IO;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_DOMAIN;
    }
}
