#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "khoverant/report.hpp"
#include "test_support.hpp"

using namespace khoverant;
using testing_support::fixture;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string(KHOVERANT_CLI) + " " + args + " 2>/dev/null";
    Run r;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    REQUIRE(pipe);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe.release());
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path scratch_dir(const std::string& leaf) {
    auto dir = std::filesystem::temp_directory_path() / ("khoverant_unit_" + leaf);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("table polynomial notation") {
    auto p = parse_table_polynomial("t^(-2)-t^(-1)+ 1-t+ t^2");
    CHECK(p.size() == 5);
    CHECK(p.at(-4) == 1);
    CHECK(p.at(-2) == -1);
    CHECK(p.at(0) == 1);
    CHECK(p.at(2) == -1);
    CHECK(p.at(4) == 1);
    auto h = parse_table_polynomial("-t^(1/2)-t^(5/2)");
    CHECK(h.at(1) == -1);
    CHECK(h.at(5) == -1);
    CHECK(parse_table_polynomial("2*t^3")[6] == 2);
    CHECK_THROWS_AS(parse_table_polynomial("t^"), DiagramError);
    CHECK_THROWS_AS(parse_table_polynomial(""), DiagramError);
}

TEST_CASE("cell text, CSV and JSON tables") {
    CHECK(cell_text({2, {}}) == "2");
    CHECK(cell_text({0, {2, 2}}) == "2_2");
    CHECK(cell_text({2, {2, 2}}) == "2,2_2");
    CHECK(cell_text({1, {2, 3}}) == "1,1_2,1_3");
    CHECK(cell_text({}).empty());

    KhTable t = kh(fixture("k3_1"));
    std::string csv = table_csv(t);
    CHECK(csv.rfind("j\\i,0,1,2,3\n", 0) == 0);
    CHECK(csv.find("7,,,,1_2\n") != std::string::npos);
    KhTable withcomma;
    withcomma.set(0, 1, {1, {2}});
    CHECK(table_csv(withcomma).find("\"1,1_2\"") != std::string::npos);

    Json j = table_json(t);
    REQUIRE(j.size() == 5);
    CHECK(j[3]["i"] == 3);
    CHECK(j[3]["j"] == 7);
    CHECK(j[3]["torsion"] == Json::array({2}));
    CHECK(table_grid(t).find("1_2") != std::string::npos);
}

TEST_CASE("fixture metadata") {
    Fixture f = parse_fixture("# name: sample\n# source: hand\n# jones: t+ t^3-t^4\n# a comment\nX[1,5,2,4] X[3,1,4,6]\nX[5,3,6,2]\n",
                              "fallback");
    CHECK(f.name == "sample");
    CHECK(f.source == "hand");
    REQUIRE(f.jones.has_value());
    CHECK(*f.jones == "t+ t^3-t^4");
    CHECK(f.diagram.crossing_count() == 3);
    CHECK(f.diagram.name() == "sample");

    Fixture g = parse_fixture("X[4,1,3,2] X[2,3,1,4]\n# reverse: 0\n", "hopf_reversed");
    CHECK(g.name == "hopf_reversed");
    CHECK(crossing_signs(g.diagram).writhe() == -crossing_signs(fixture("hopf")).writhe());

    CHECK_THROWS_AS(parse_fixture("# name: empty\n", "x"), DiagramError);
}

TEST_CASE("ingestion by path, name and inline code") {
    CHECK(ingest_fixture(std::string(KHOVERANT_FIXTURE_DIR) + "/k4_1.pd").name == "k4_1");
    CHECK(ingest_fixture("k4_1").diagram.crossing_count() == 4);
    CHECK(ingest_fixture("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").name == "inline");
    CHECK(ingest_fixture("O").diagram.free_loops() == 1);
    CHECK_THROWS_WITH_AS(ingest_fixture("no_such_fixture"), doctest::Contains("unreadable file"), DiagramError);
}

TEST_CASE("fixture sets reject duplicate names") {
    FixtureSet set;
    set.add(parse_fixture("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", "a"));
    CHECK_THROWS_AS(set.add(parse_fixture("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", "a")), DiagramError);
    CHECK(set.size() == 1);
    CHECK(set.find("a") != nullptr);
    CHECK(set.find("b") == nullptr);

    auto dir = scratch_dir("dupes");
    std::ofstream(dir / "one.pd") << "# name: same\nO\n";
    std::ofstream(dir / "two.pd") << "# name: same\nO O\n";
    CHECK_THROWS_AS(load_fixture_dir(dir), DiagramError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("the corpus loads with unique names") {
    const FixtureSet& all = testing_support::all_fixtures();
    CHECK(all.size() == 60);
    CHECK(all.find("l11n376") != nullptr);
    CHECK(all.find("l11n376")->diagram.component_count() == 3);
}

TEST_CASE("reports carry the envelope and no timing in stable mode") {
    RunOptions o;
    o.stable = true;
    Fixture f = ingest_fixture("k3_1");
    CommandResult r = run_kh(f, o);
    CHECK(r.exit_code == 0);
    CHECK(r.report["schema_version"] == kReportSchemaVersion);
    CHECK(r.report["command"] == "kh");
    CHECK(r.report["input"] == "k3_1");
    CHECK_FALSE(r.report.contains("timing_ms"));
    CHECK(render(r, o) == render(run_kh(f, o), o));

    o.stable = false;
    CHECK(run_kh(f, o).report.contains("timing_ms"));
}

TEST_CASE("command results") {
    RunOptions o;
    o.stable = true;
    CHECK(run_states(ingest_fixture("k3_1"), o).report["results"]["s_A"] == 2);
    CHECK(run_jones(ingest_fixture("k3_1"), o).report["results"]["matches_published"] == true);
    CommandResult cls = run_classify(ingest_fixture("t34_almost_alternating"), o);
    CHECK(cls.report["results"]["verdict"] == "A_almost_alternating");
    CHECK(cls.report["results"]["dealternators"][0]["adj_u"] == 0);
    CommandResult tb = run_tb(ingest_fixture("k3_1"), o);
    CHECK(tb.report["results"]["kh_bound"] == 1);
    CHECK(tb.report["results"]["front_tb"] == 1);
    o.theorem = "aakh";
    CHECK_THROWS_AS(run_verify(ingest_fixture("k3_1"), o), DiagramError);
    CHECK(run_verify(ingest_fixture("t34_almost_alternating"), o).exit_code == 0);
}

TEST_CASE("cli exit codes and output") {
    Run table = cli("kh k3_1 --stable");
    CHECK(table.code == 0);
    Json j = Json::parse(table.out);
    CHECK(j["results"]["table"].size() == 5);

    Run low = cli("kh k8_19 --jmin-only --jmax-only --stable");
    CHECK(low.code == 0);
    Json ends = Json::parse(low.out)["results"];
    CHECK(ends["complete"] == false);
    KhTable full = kh(fixture("k8_19"));
    std::size_t extremal = full.support(full.j_min()).size() + full.support(full.j_max()).size();
    CHECK(ends["table"].size() == extremal);
    Run window = cli("kh k8_19 --j 5..9 --stable");
    CHECK(window.code == 0);
    for (const auto& e : Json::parse(window.out)["results"]["table"]) {
        CHECK(e["j"].get<int>() >= 5);
        CHECK(e["j"].get<int>() <= 9);
    }

    Run csv = cli("kh k3_1 --csv");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("j\\i,", 0) == 0);

    CHECK(cli("kh no_such_fixture").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("verify k3_1 --theorem aakh").code == 2);
    CHECK(cli("verify k3_1 --theorem nonsense").code == 2);
    CHECK(cli("verify t34_almost_alternating --theorem aakh --stable").code == 0);
    CHECK(cli("verify k13n_588 --theorem diagonal --stable").code == 1);
    CHECK(cli("kh k3_1 --pretty").out.find("1_2") != std::string::npos);
    CHECK(cli("jones 'X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]' --stable").code == 0);

    auto dir = scratch_dir("svg");
    Run front = cli("front k3_1 --stable --svg " + (dir / "t.svg").string());
    CHECK(front.code == 0);
    CHECK(std::filesystem::file_size(dir / "t.svg") > 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("cli fixture root from the environment") {
    auto dir = scratch_dir("env");
    std::ofstream(dir / "only.pd") << "# name: only\nX[1,5,2,4] X[3,1,4,6] X[5,3,6,2]\n";
    Run r = cli("--stable kh only");  // fails: the source tree has no such fixture
    CHECK(r.code == 2);
    std::string env = "KHOVERANT_FIXTURES=" + dir.string() + " ";
    std::string cmd = env + KHOVERANT_CLI + " kh only --stable > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    std::string corpus = env + KHOVERANT_CLI + " corpus run --stable > /dev/null 2>&1";
    CHECK(std::system(corpus.c_str()) == 0);
    std::filesystem::remove_all(dir);
}
