#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thurston/rule.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct RunResult {
    std::string out;
    int code = -1;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(THURSTON_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
    int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string rules(const char* name) { return std::string(RULES_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("info matches the golden file and exits cleanly") {
    auto res = run("info " + rules("lattes2x2.rule"));
    CHECK(res.code == 0);
    CHECK(res.out == slurp(std::string(GOLDEN_DIR) + "/info_lattes2x2.tsv"));
}

TEST_CASE("validate: clean rules pass, broken rules list violations with exit 1") {
    CHECK(run("validate " + rules("lattes2x2.rule")).code == 0);
    CHECK(run("validate " + rules("barycentric.rule")).code == 0);

    namespace fs = std::filesystem;
    std::string broken = (fs::temp_directory_path() / "broken.rule").string();
    thurston::SubdivisionRule r =
        thurston::parse_rule(slurp(rules("lattes2x2.rule")));
    r.tiles.pop_back();
    {
        std::ofstream out(broken, std::ios::binary | std::ios::trunc);
        out << thurston::save_rule(r);
    }
    auto res = run("validate " + broken);
    CHECK(res.code == 1);
    CHECK(res.out.find("tile count") != std::string::npos);
}

TEST_CASE("fixed point weights total 1 + d^n through the pipeline") {
    auto res = run("fixed-points " + rules("lattes2x2.rule") + " --iterate 2");
    CHECK(res.code == 0);
    CHECK(res.out.find("TOTAL\t17") != std::string::npos);
}

TEST_CASE("moebius on a rule with a periodic critical point maps to exit 1") {
    auto res = run("moebius " + rules("barycentric.rule") + " --n 2");
    CHECK(res.code == 1);
}

TEST_CASE("usage errors map to exit 2") {
    CHECK(run("no-such-command").code == 2);
    CHECK(run("info").code == 2);
    CHECK(run("preperiodic " + rules("lattes2x2.rule") + " --m 3 --n 2").code == 2);
}

TEST_CASE("unreadable rule files map to exit 1 with a named error") {
    CHECK(run("info /nonexistent/nowhere.rule").code == 1);
}

TEST_CASE("sampler series is byte-reproducible under a fixed seed") {
    std::string cmd = "sample " + rules("lattes2x2.rule") + " --steps 5000 --seed 11 --level 1";
    auto a = run(cmd);
    auto b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto c = run("sample " + rules("lattes2x2.rule") + " --steps 5000 --seed 12 --level 1");
    CHECK(c.out != a.out);
}

TEST_CASE("equidistribution series matches the closed form exactly") {
    auto res = run("equidist " + rules("lattes3x3.rule") +
                   " --kind preimage-weighted --level 1 --imax 4");
    CHECK(res.code == 0);
    // i, tv where tv = d^m * b |delta|^(i-m) / d^i with d=9, b=1/2, delta=1, m=1
    CHECK(res.out.find("2,1/18,") != std::string::npos);
    CHECK(res.out.find("3,1/162,") != std::string::npos);
    CHECK(res.out.find("4,1/1458,") != std::string::npos);
}

TEST_CASE("cover-edge series scales down strictly") {
    auto res = run("cover-edge " + rules("lattes2x2.rule") + " --edge 0 --k 4 --series");
    CHECK(res.code == 0);
    std::istringstream in(res.out);
    std::string line;
    std::getline(in, line); // header
    double prev = 1e18;
    int rows = 0;
    while (std::getline(in, line)) {
        auto last = line.rfind(',');
        double scaled = std::stod(line.substr(last + 1));
        CHECK(scaled < prev);
        prev = scaled;
        ++rows;
    }
    CHECK(rows == 5);
}

TEST_CASE("cache is transparent and its reuse is observable") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "thurston_cli_cache";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string cache = " --cache " + dir.string();

    auto plain = run("subdivide " + rules("lattes2x2.rule") + " --level 4 --counts");
    auto warm = run("cache " + rules("lattes2x2.rule") + " --level 4" + cache);
    CHECK(warm.code == 0);
    auto cached = run("subdivide " + rules("lattes2x2.rule") + " --level 4 --counts" + cache);
    CHECK(cached.out == plain.out);

    // corrupt one entry: the run still succeeds with identical output
    bool corrupted = false;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::ofstream f(entry.path(), std::ios::binary | std::ios::app);
        f << "tail-garbage";
        corrupted = true;
        break;
    }
    REQUIRE(corrupted);
    auto recovered = run("subdivide " + rules("lattes2x2.rule") + " --level 4 --counts" + cache);
    CHECK(recovered.out == plain.out);

    auto cleared = run("cache " + rules("lattes2x2.rule") + " --clear" + cache);
    CHECK(cleared.code == 0);
    fs::remove_all(dir);
}

TEST_CASE("code walks the shift chain") {
    auto res = run("code " + rules("lattes2x2.rule") + " --word 0312 --level 1");
    CHECK(res.code == 0);
    CHECK(res.out.find("0312\t4:2:") != std::string::npos);
    CHECK(res.out.find("-\t0:2:0") != std::string::npos);
}

TEST_CASE("generate reproduces the bundled files byte for byte") {
    auto res = run("generate checkerboard --a 3 --b 3");
    CHECK(res.code == 0);
    CHECK(res.out == slurp(rules("lattes3x3.rule")));
}
