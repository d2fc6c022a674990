#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spreadnet/cli.hpp"

using namespace spreadnet;
using namespace spreadnet::cli;

namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("spreadnet_test_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("config parsing happy path") {
    const std::string text = "schema 1\nname demo\nmode compare\nmodel bass\nfamily er\nnodes 500\n"
                             "lambda 2.5\np 0.001\nq 0.05\ni0 0\nruns 7\nhorizon 120\ngrid 61\n"
                             "seed 99\nresample off\n# trailing comment\n";
    const auto cfg = parse_config_text(text, "demo.cfg");
    CHECK(cfg.name == "demo");
    CHECK(cfg.mode == Mode::compare);
    CHECK(cfg.model == Model::bass);
    CHECK(cfg.family.kind == gen::GraphFamily::Kind::er);
    CHECK(cfg.family.nodes == 500);
    CHECK(cfg.family.lambda == doctest::Approx(2.5));
    CHECK(cfg.runs == 7);
    CHECK(cfg.seed == 99);
    CHECK_FALSE(cfg.resample);
}

TEST_CASE("config diagnostics carry origin and line") {
    auto parse = [](const std::string& text) { return parse_config_text(text, "bad.cfg"); };
    CHECK_THROWS_WITH_AS(parse("name x\n"), doctest::Contains("schema"), config_error);
    CHECK_THROWS_WITH_AS(parse("schema 2\n"), doctest::Contains("bad.cfg:1"), config_error);
    CHECK_THROWS_WITH_AS(parse("schema 1\nfamily er\nnodes 10\nlambda 1\nbogus 3\n"),
                         doctest::Contains("bad.cfg:5"), config_error);
    CHECK_THROWS_WITH_AS(parse("schema 1\nfamily er\nnodes 10\nlambda 1\np notanumber\n"),
                         doctest::Contains("bad.cfg:5"), config_error);
    // Model constraints.
    CHECK_THROWS_WITH_AS(parse("schema 1\nmodel bass\nfamily er\nnodes 10\nlambda 1\np 0\nq 1\ni0 0\n"),
                         doctest::Contains("p > 0"), config_error);
    CHECK_THROWS_WITH_AS(parse("schema 1\nmodel si\nfamily er\nnodes 10\nlambda 1\np 0.1\nq 1\ni0 0.1\n"),
                         doctest::Contains("p = 0"), config_error);
    CHECK_THROWS_WITH_AS(parse("schema 1\nmodel si\nfamily er\nnodes 10\nlambda 1\np 0\nq 1\ni0 0\n"),
                         doctest::Contains("i0"), config_error);
}

TEST_CASE("figure presets all parse and validate") {
    for (const auto& [id, text] : figure_presets()) {
        const auto cfg = figure_config(id);
        CHECK(cfg.name == id);
    }
    CHECK_THROWS_AS(figure_config("fig99"), config_error);
}

TEST_CASE("shipped config files match the embedded presets") {
    const fs::path dir = fs::path(SPREADNET_SOURCE_DIR) / "configs";
    REQUIRE(fs::exists(dir));
    for (const auto& [id, text] : figure_presets()) {
        const auto path = dir / (id + ".cfg");
        REQUIRE_MESSAGE(fs::exists(path), path.string());
        CHECK(slurp(path.string()) == text);
    }
}

TEST_CASE("compare on isolated nodes and byte-identical reruns") {
    TempDir dir;
    const std::string text = "schema 1\nname iso\nmode compare\nmodel bass\nfamily isolated\n"
                             "nodes 1000\np 0.01\nq 0.001\ni0 0\nruns 20\nhorizon 200\ngrid 51\nseed 7\n";
    const auto cfg = parse_config_text(text, "iso.cfg");

    OutputOptions out;
    out.out_dir = (dir.path / "a").string();
    const auto first = run_compare(cfg, out);
    CHECK(first.pass);
    CHECK(first.sup_deviation <= std::max(0.015, 4.0 * first.max_stderr));

    OutputOptions out2;
    out2.out_dir = (dir.path / "b").string();
    const auto second = run_compare(cfg, out2);
    CHECK(slurp((dir.path / "a" / "iso.csv").string()) == slurp((dir.path / "b" / "iso.csv").string()));
    CHECK(second.sup_deviation == first.sup_deviation);
}

TEST_CASE("sweep half-life decreases in lambda") {
    TempDir dir;
    const std::string text = "schema 1\nname hl\nmode sweep\nmodel bass\nsweep_param lambda\n"
                             "sweep_values 0.25,0.5,1,2,4,8\nmetric half_life\np 0.001\nq 0.05\ni0 0\n"
                             "horizon 1\nseed 1\n";
    const auto cfg = parse_config_text(text, "hl.cfg");
    OutputOptions out;
    out.out_dir = dir.path.string();
    out.write_svg = false;
    run_sweep(cfg, out);

    std::ifstream csv(dir.path / "hl.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "lambda,value");
    double prev = 1e300;
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) {
        const auto comma = line.find(',');
        const double value = std::stod(line.substr(comma + 1));
        CHECK(value < prev);
        prev = value;
        ++rows;
    }
    CHECK(rows == 6);
}

TEST_CASE("cycles command compares empirical counts to the formula") {
    TempDir dir;
    const std::string text = "schema 1\nname cyc\nmode cycles\nfamily dreg\nnodes 200\ndegree 3\n"
                             "p 0.1\nq 0.1\ni0 0\nlen_min 3\nlen_max 4\nsamples 400\nseed 5\nhorizon 1\n";
    const auto cfg = parse_config_text(text, "cyc.cfg");
    OutputOptions out;
    out.out_dir = dir.path.string();
    out.write_svg = false;
    const auto result = run_cycles(cfg, out);
    CHECK(fs::exists(dir.path / "cyc.csv"));

    std::ifstream csv(dir.path / "cyc.csv");
    std::string line;
    std::getline(csv, line);
    CHECK(line == "L,empirical_mean,stderr,predicted");
    int rows = 0;
    while (std::getline(csv, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream is(line);
        int len;
        double mean, se, predicted;
        is >> len >> mean >> se >> predicted;
        CHECK(std::abs(mean - predicted) <= 3.0 * se);
        ++rows;
    }
    CHECK(rows == 2);
}

TEST_CASE("figure presets run end to end") {
    TempDir dir;
    OutputOptions out;
    out.out_dir = dir.path.string();
    // fig2 is the half-life sweep: cheap, exercises the preset dispatch.
    const auto result = run_figure("fig2", out);
    CHECK(fs::exists(dir.path / "fig2.csv"));
    CHECK(fs::exists(dir.path / "fig2.svg"));
    CHECK(fs::exists(dir.path / "fig2.summary.txt"));
    CHECK(result.runtime_seconds >= 0.0);

    // A small override run of a simulation preset.
    const auto fig1 = run_figure("fig1a", out, 3, 99);
    CHECK(fs::exists(dir.path / "fig1a.csv"));
    CHECK(fig1.tolerance_applies);
}

TEST_CASE("run_experiment dispatches analytic mode") {
    TempDir dir;
    const std::string text = "schema 1\nname ana\nmode analytic\nmodel si\nfamily dreg\nnodes 100\n"
                             "degree 3\np 0\nq 0.05\ni0 0.1\nhorizon 100\ngrid 21\nseed 2\n";
    OutputOptions out;
    out.out_dir = dir.path.string();
    out.write_svg = false;
    const auto result = run_experiment(parse_config_text(text, "ana.cfg"), out);
    CHECK(fs::exists(dir.path / "ana.csv"));
    const std::string contents = slurp((dir.path / "ana.csv").string());
    CHECK(contents.substr(0, 4) == "t,f\n");
}

TEST_SUITE_END();
