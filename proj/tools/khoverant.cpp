#include <CLI11.hpp>

#include <iostream>
#include <regex>

#include "khoverant/report.hpp"

using namespace khoverant;

namespace {

std::pair<int, int> parse_range(const std::string& text) {
    static const std::regex pattern(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw DiagramError("bad --j range \"" + text + "\", expected a..b");
    int a = std::stoi(m[1]), b = std::stoi(m[2]);
    if (a > b) std::swap(a, b);
    return {a, b};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Khovanov homology, almost alternating diagrams and Legendrian bounds from PD codes"};
    app.require_subcommand(1);
    app.fallthrough();

    RunOptions options;
    bool json = false;
    std::string j_range;
    std::string input;
    std::optional<std::string> svg;
    std::string fixture_dir;
    int max_crossings = -1;

    app.add_flag("--pretty", options.pretty, "human-readable output");
    app.add_flag("--json", json, "JSON output (default)");
    app.add_flag("--stable", options.stable, "omit timings so reports are byte-identical");
    app.add_flag("--full", options.full, "compute full tables even for large diagrams");
    app.add_option("--threads", options.threads, "worker threads for state enumeration")->check(CLI::PositiveNumber);

    auto with_input = [&](CLI::App* sub) {
        sub->add_option("input", input, "PD file, fixture name or inline PD code")->required();
        return sub;
    };
    auto* states = with_input(app.add_subcommand("states", "Kauffman state data"));
    states->add_flag("--summary", "print c, s_A, s_B, g_T and adequacy (default)");
    auto* jones_cmd = with_input(app.add_subcommand("jones", "Jones polynomial in both normalizations"));
    auto* kh_cmd = with_input(app.add_subcommand("kh", "Khovanov homology table"));
    kh_cmd->add_flag("--jmin-only", options.jmin_only, "lowest nonzero quantum grading only");
    kh_cmd->add_flag("--jmax-only", options.jmax_only, "highest nonzero quantum grading only");
    kh_cmd->add_option("--j", j_range, "quantum grading window a..b");
    kh_cmd->add_flag("--csv", options.csv, "CSV grid, rows j descending");
    auto* classify_cmd = with_input(app.add_subcommand("classify", "almost alternating structure as drawn"));
    auto* verify = with_input(app.add_subcommand("verify", "check theorems on the computed homology"));
    verify->add_option("--theorem", options.theorem, "diagonal|signature|aakh|bounds|les|knightmove|mirror|all")
        ->check(CLI::IsMember({"diagonal", "signature", "aakh", "bounds", "les", "knightmove", "mirror", "all"}));
    auto* tb = with_input(app.add_subcommand("tb", "Thurston-Bennequin bounds"));
    auto* front = with_input(app.add_subcommand("front", "Legendrian front of an alternating or A-almost alternating diagram"));
    front->add_option("--svg", svg, "write the front as SVG");
    auto* corpus = app.add_subcommand("corpus", "fixture corpus");
    auto* corpus_run = corpus->add_subcommand("run", "run every check over the fixture directory");
    corpus->require_subcommand(1);
    corpus->fallthrough();
    corpus_run->add_option("--dir", fixture_dir, "fixture directory (default KHOVERANT_FIXTURES or the source tree)");
    corpus_run->add_option("--max-crossings", max_crossings, "skip fixtures with more crossings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (json) options.pretty = false;

    try {
        if (!j_range.empty()) options.j_range = parse_range(j_range);
        CommandResult result;
        if (corpus_run->parsed()) {
            FixtureSet all = load_fixture_dir(fixture_dir.empty() ? fixture_root() : std::filesystem::path(fixture_dir));
            FixtureSet chosen;
            for (const auto& [name, f] : all.all())
                if (max_crossings < 0 || f.diagram.crossing_count() <= max_crossings) chosen.add(f);
            result = run_corpus(chosen, options);
        } else {
            Fixture f = ingest_fixture(input);
            if (states->parsed()) result = run_states(f, options);
            else if (jones_cmd->parsed()) result = run_jones(f, options);
            else if (kh_cmd->parsed()) result = run_kh(f, options);
            else if (classify_cmd->parsed()) result = run_classify(f, options);
            else if (verify->parsed()) result = run_verify(f, options);
            else if (tb->parsed()) result = run_tb(f, options);
            else if (front->parsed()) result = run_front(f, options, svg);
        }
        std::cout << render(result, options);
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
