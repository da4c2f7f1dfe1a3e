#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "khoverant/diagnostics.hpp"
#include "khoverant/diagram.hpp"
#include "khoverant/homology.hpp"
#include "khoverant/legendrian.hpp"
#include "khoverant/polynomial.hpp"

namespace khoverant {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

struct Fixture {
    std::string name;
    std::string source;
    std::string path;  // empty for inline PD
    // Published Ṽ(t) in knot-table notation, e.g. "t+ t^3-t^4".
    std::optional<std::string> jones;
    LinkDiagram diagram;
};

// Fixture files hold PD text plus "# key: value" metadata lines (name,
// source, jones, reverse); other '#' lines are comments. "reverse: k"
// flips component k before anything is computed.
Fixture parse_fixture(const std::string& text, const std::string& fallback_name, const std::string& path = {});
Fixture load_fixture(const std::filesystem::path& path);
// A readable file, a fixture name under the fixture root, or inline PD.
Fixture ingest_fixture(const std::string& path_or_pd);

// KHOVERANT_FIXTURES if set, else the fixtures directory of the source tree.
std::filesystem::path fixture_root();

class FixtureSet {
public:
    // Throws DiagramError on a duplicate name.
    void add(Fixture f);
    const Fixture* find(const std::string& name) const;
    // Sorted by name.
    const std::map<std::string, Fixture>& all() const { return fixtures_; }
    std::size_t size() const { return fixtures_.size(); }

private:
    std::map<std::string, Fixture> fixtures_;
};
FixtureSet load_fixture_dir(const std::filesystem::path& dir);

// Parses knot-table polynomial notation ("t^(-2)-t^(-1)+ 1", "2*t^(3/2)")
// into exponents counted in half units of t.
std::map<int, BigInt> parse_table_polynomial(const std::string& text);
// Ṽ(t) of the diagram in the same half-unit exponents.
std::map<int, BigInt> normalized_jones_half_units(const LinkDiagram& d);

// "r" for ℤ^r and "k_p" for (ℤ/p)^k, joined by commas; empty for zero.
std::string cell_text(const KhGroup& g);
Json table_json(const KhTable& t);
// Rows are j descending, columns i ascending.
std::string table_csv(const KhTable& t);
std::string table_grid(const KhTable& t);
Json polynomial_json(const LaurentPoly& p);
Json diagram_json(const LinkDiagram& d);

struct RunOptions {
    bool pretty = false;
    bool stable = false;
    bool full = false;
    int threads = 1;
    std::optional<std::pair<int, int>> j_range;
    bool jmin_only = false;
    bool jmax_only = false;
    bool csv = false;
    std::string theorem = "all";
    // Above this many crossings only extremal slices are computed unless full.
    int full_table_limit = 16;
};

struct CommandResult {
    Json report;
    std::string text;  // human rendering for --pretty
    int exit_code = 0;
};

CommandResult run_states(const Fixture& f, const RunOptions& o);
CommandResult run_jones(const Fixture& f, const RunOptions& o);
CommandResult run_kh(const Fixture& f, const RunOptions& o);
CommandResult run_classify(const Fixture& f, const RunOptions& o);
CommandResult run_verify(const Fixture& f, const RunOptions& o);
CommandResult run_tb(const Fixture& f, const RunOptions& o);
CommandResult run_front(const Fixture& f, const RunOptions& o, const std::optional<std::string>& svg_path);
// Every invariant check applicable to each fixture; exit 1 on any violation.
CommandResult run_corpus(const FixtureSet& fixtures, const RunOptions& o);

// JSON (two-space indent) or the pretty text, newline-terminated.
std::string render(const CommandResult& r, const RunOptions& o);

}  // namespace khoverant
