#include "khoverant/report.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "khoverant/classify.hpp"
#include "khoverant/les.hpp"
#include "khoverant/states.hpp"

#ifndef KHOVERANT_SOURCE_FIXTURES
#define KHOVERANT_SOURCE_FIXTURES "fixtures"
#endif

namespace khoverant {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool looks_like_pd(const std::string& s) {
    std::string t = trim(s);
    if (t.empty()) return false;
    if (t.find_first_not_of("Oo !\t") == std::string::npos) return true;
    return (t.find('X') != std::string::npos || t.find('x') != std::string::npos) &&
           (t.find('[') != std::string::npos || t.find('(') != std::string::npos);
}

}  // namespace

Fixture parse_fixture(const std::string& text, const std::string& fallback_name, const std::string& path) {
    Fixture f;
    f.name = fallback_name;
    f.path = path;
    std::optional<int> reverse;
    std::string body;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] != '#') {
            body += t + " ";
            continue;
        }
        auto colon = t.find(':');
        if (colon == std::string::npos) continue;
        std::string key = trim(t.substr(1, colon - 1)), value = trim(t.substr(colon + 1));
        if (key == "name") f.name = value;
        else if (key == "source") f.source = value;
        else if (key == "jones") f.jones = value;
        else if (key == "reverse") reverse = std::stoi(value);
    }
    if (trim(body).empty()) throw DiagramError("fixture " + f.name + " has no PD code");
    f.diagram = parse_pd(body).with_name(f.name);
    if (reverse) f.diagram = f.diagram.with_component_reversed(*reverse);
    return f;
}

Fixture load_fixture(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DiagramError("unreadable file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_fixture(buffer.str(), path.stem().string(), path.string());
}

fs::path fixture_root() {
    if (const char* env = std::getenv("KHOVERANT_FIXTURES"); env && *env) return env;
    return KHOVERANT_SOURCE_FIXTURES;
}

Fixture ingest_fixture(const std::string& path_or_pd) {
    std::error_code ec;
    if (fs::is_regular_file(path_or_pd, ec)) return load_fixture(path_or_pd);
    if (!looks_like_pd(path_or_pd)) {
        for (const fs::path& p : {fixture_root() / path_or_pd, fixture_root() / (path_or_pd + ".pd")})
            if (fs::is_regular_file(p, ec)) return load_fixture(p);
        throw DiagramError("unreadable file: " + path_or_pd);
    }
    return parse_fixture(path_or_pd, "inline");
}

void FixtureSet::add(Fixture f) {
    if (fixtures_.count(f.name)) throw DiagramError("duplicate fixture name: " + f.name);
    std::string name = f.name;
    fixtures_.emplace(std::move(name), std::move(f));
}

const Fixture* FixtureSet::find(const std::string& name) const {
    auto it = fixtures_.find(name);
    return it == fixtures_.end() ? nullptr : &it->second;
}

FixtureSet load_fixture_dir(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw DiagramError("fixture directory not found: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".pd") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    FixtureSet set;
    for (const auto& p : files) set.add(load_fixture(p));
    return set;
}

std::map<int, BigInt> parse_table_polynomial(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    std::map<int, BigInt> out;
    std::size_t i = 0;
    auto fail = [&] { throw DiagramError("cannot parse polynomial \"" + text + "\" at offset " + std::to_string(i)); };
    auto read_int = [&]() {
        std::size_t b = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == b || !std::isdigit(static_cast<unsigned char>(s[i - 1]))) fail();
        return std::stoi(s.substr(b, i - b));
    };
    if (s.empty()) fail();
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
        BigInt coefficient = 1;
        bool has_number = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::size_t b = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            coefficient = BigInt(s.substr(b, i - b));
            has_number = true;
            if (i < s.size() && s[i] == '*') ++i;
        }
        int half_units = 0;
        if (s.compare(i, 7, "sqrt(t)") == 0) {
            i += 7;
            half_units = 1;
        } else if (i < s.size() && s[i] == 't') {
            ++i;
            half_units = 2;
            if (i < s.size() && s[i] == '^') {
                ++i;
                if (i < s.size() && s[i] == '(') {
                    ++i;
                    int num = read_int(), den = 1;
                    if (i < s.size() && s[i] == '/') {
                        ++i;
                        den = read_int();
                    }
                    if (i >= s.size() || s[i] != ')' || (den != 1 && den != 2)) fail();
                    ++i;
                    half_units = num * 2 / den;
                } else {
                    half_units = 2 * read_int();
                }
            }
        } else if (!has_number) {
            fail();
        }
        out[half_units] += sign * coefficient;
        if (out[half_units] == 0) out.erase(half_units);
    }
    return out;
}

std::map<int, BigInt> normalized_jones_half_units(const LinkDiagram& d) {
    LaurentPoly v = convert_normalization(jones(d));
    std::map<int, BigInt> out;
    for (const auto& [e, c] : v.terms()) out[e * 2 / v.denominator()] = c;
    return out;
}

std::string cell_text(const KhGroup& g) {
    std::vector<std::string> parts;
    if (g.rank > 0) parts.push_back(std::to_string(g.rank));
    std::map<std::int64_t, int> orders;
    for (auto p : g.torsion) ++orders[p];
    for (auto [p, k] : orders) parts.push_back(std::to_string(k) + "_" + std::to_string(p));
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
    return out;
}

Json table_json(const KhTable& t) {
    Json rows = Json::array();
    for (const auto& [key, g] : t.entries())
        rows.push_back({{"i", key.first}, {"j", key.second}, {"rank", g.rank}, {"torsion", g.torsion}});
    return rows;
}

namespace {

struct Grid {
    std::vector<int> is, js;
    std::vector<std::vector<std::string>> cells;  // [row][col]
};

Grid make_grid(const KhTable& t) {
    Grid g;
    if (t.empty()) return g;
    int i_lo = t.entries().begin()->first.first, i_hi = t.entries().rbegin()->first.first;
    for (int i = i_lo; i <= i_hi; ++i) g.is.push_back(i);
    for (int j = t.j_max(); j >= t.j_min(); j -= 2) g.js.push_back(j);
    for (int j : g.js) {
        g.cells.emplace_back();
        for (int i : g.is) g.cells.back().push_back(cell_text(t.at(i, j)));
    }
    return g;
}

std::string csv_field(const std::string& s) {
    return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

}  // namespace

std::string table_csv(const KhTable& t) {
    Grid g = make_grid(t);
    std::ostringstream out;
    out << "j\\i";
    for (int i : g.is) out << "," << i;
    out << "\n";
    for (std::size_t r = 0; r < g.js.size(); ++r) {
        out << g.js[r];
        for (const auto& c : g.cells[r]) out << "," << csv_field(c);
        out << "\n";
    }
    return out.str();
}

std::string table_grid(const KhTable& t) {
    Grid g = make_grid(t);
    if (g.js.empty()) return "(zero)\n";
    std::size_t width = 3;
    for (int i : g.is) width = std::max(width, std::to_string(i).size());
    for (const auto& row : g.cells)
        for (const auto& c : row) width = std::max(width, c.size());
    std::size_t label = 4;
    for (int j : g.js) label = std::max(label, std::to_string(j).size() + 1);
    std::ostringstream out;
    out << std::setw(static_cast<int>(label)) << "j\\i";
    for (int i : g.is) out << " " << std::setw(static_cast<int>(width)) << i;
    out << "\n";
    for (std::size_t r = 0; r < g.js.size(); ++r) {
        out << std::setw(static_cast<int>(label)) << g.js[r];
        for (const auto& c : g.cells[r]) out << " " << std::setw(static_cast<int>(width)) << (c.empty() ? "." : c);
        out << "\n";
    }
    return out.str();
}

Json polynomial_json(const LaurentPoly& p) {
    Json out = Json::object();
    for (const auto& [e, c] : p.terms()) {
        std::string key = p.denominator() == 1 || e % p.denominator() == 0
                              ? std::to_string(e / p.denominator())
                              : std::to_string(e) + "/" + std::to_string(p.denominator());
        if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
            out[key] = static_cast<std::int64_t>(c);
        else
            out[key] = c.str();
    }
    return out;
}

Json diagram_json(const LinkDiagram& d) {
    Json crossings = Json::array();
    for (const auto& q : d.crossings()) crossings.push_back({q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1});
    Json components = Json::array();
    for (const auto& cycle : d.components()) {
        Json arcs = Json::array();
        for (int a : cycle) arcs.push_back(a + 1);
        components.push_back(arcs);
    }
    Json out;
    out["name"] = d.name();
    out["pd"] = to_pd_string(d);
    out["crossings"] = crossings;
    out["components"] = components;
    out["free_loops"] = d.free_loops();
    out["dealternator"] = d.dealternator() ? Json(*d.dealternator()) : Json();
    out["signs"] = crossing_signs(d).signs;
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

Json envelope(const std::string& command, const std::string& input) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["command"] = command;
    j["input"] = input;
    return j;
}

void finish(CommandResult& r, bool pass, Clock::time_point start, const RunOptions& o) {
    r.report["pass"] = pass;
    if (!o.stable)
        r.report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    if (!pass && r.exit_code == 0) r.exit_code = 1;
}

struct Tables {
    KhTable unshifted;
    KhTable shifted;
    bool complete = true;
};

Tables compute_tables(const LinkDiagram& d, const RunOptions& o) {
    Tables t;
    KhOptions opt;
    opt.threads = o.threads;
    if (o.full || d.crossing_count() <= o.full_table_limit) {
        t.unshifted = unshifted_kh(d, opt);
    } else {
        t.complete = false;
        for (Extreme side : {Extreme::Low, Extreme::High}) {
            KhTable part = unshifted_kh_extremal(d, side, o.threads);
            for (const auto& [key, g] : part.entries()) t.unshifted.set(key.first, key.second, g);
        }
    }
    SignCount sc = crossing_signs(d);
    t.shifted = shift_table(t.unshifted, sc.positive, sc.negative);
    return t;
}

Json side_json(const SideCheck& s) {
    Json j;
    j["side"] = s.side == Side::A ? "A" : "B";
    j["cyclic"] = s.cyclic;
    j["i0"] = s.i0 ? Json(*s.i0) : Json();
    j["j_extreme"] = s.j_extreme;
    j["lhs"] = s.lhs ? Json(*s.lhs) : Json();
    j["rhs"] = s.rhs;
    j["pass"] = s.pass;
    j["reason"] = s.reason;
    return j;
}

Json property_json(const PropertyCheck& p) {
    Json j;
    j["name"] = p.name;
    j["checked"] = p.checked;
    j["violation_count"] = p.violations.size();
    Json first = Json::array();
    for (std::size_t k = 0; k < p.violations.size() && k < 20; ++k) first.push_back(p.violations[k]);
    j["violations"] = first;
    j["pass"] = p.pass();
    return j;
}

Json skipped(const std::string& name, const std::string& why) {
    return Json{{"name", name}, {"skipped", why}, {"pass", true}};
}

bool a_side_structure(Verdict v) { return v == Verdict::alternating || v == Verdict::A_almost_alternating || v == Verdict::both; }
bool b_side_structure(Verdict v) { return v == Verdict::alternating || v == Verdict::B_almost_alternating || v == Verdict::both; }

std::string rank_message(const ExtremeRow& low, const ExtremeRow& high) {
    if (low.rank == high.rank) return "both extremal ranks = " + std::to_string(low.rank);
    return "extremal ranks = " + std::to_string(low.rank) + " and " + std::to_string(high.rank);
}

// Theorem Diagonal on both sides; sides where the diagram is adequate or
// almost alternating must hold, and at least one side must hold.
Json diagonal_json(const LinkDiagram& d, const Tables& t, const Classification& cls, bool& pass) {
    Json j;
    j["name"] = "diagonal";
    j["complete"] = t.complete;
    if (t.shifted.empty()) {
        pass = true;
        j["skipped"] = "zero homology";
        j["pass"] = true;
        return j;
    }
    ObstructionReport r = obstruction_report(t.shifted);
    ExtremalProfile p = extremal_profile(t.shifted);
    if (!t.complete) {
        for (SideCheck* s : {&r.a, &r.b})
            if (s->cyclic) {
                s->pass = false;
                s->reason = "delta needs the full table; rerun with --full";
            }
        r.fires = false;
    }
    bool need_a = a_side_structure(cls.verdict) || is_adequate(d, Smoothing::A);
    bool need_b = b_side_structure(cls.verdict) || is_adequate(d, Smoothing::B);
    pass = (r.a.pass || r.b.pass) && (!need_a || r.a.pass) && (!need_b || r.b.pass);
    j["A"] = side_json(r.a);
    j["B"] = side_json(r.b);
    Json required = Json::array();
    if (need_a) required.push_back("A");
    if (need_b) required.push_back("B");
    j["required_sides"] = required;
    j["obstruction"] = Json{{"fires", r.fires}, {"conclusion", r.conclusion}};
    if (!r.a.cyclic && !r.b.cyclic) j["message"] = rank_message(p.low, p.high);
    else if (r.fires) j["message"] = "identity fails on both sides: " + r.conclusion;
    else j["message"] = pass ? "identity holds" : "identity fails on a required side";
    j["pass"] = pass;
    return j;
}

Json signature_json(const SignatureCheck& s) {
    Json j;
    j["name"] = "signature";
    j["sigma"] = s.sigma;
    j["hypothesis"] = s.hypothesis;
    j["low"] = side_json(s.low);
    j["high"] = side_json(s.high);
    j["pass"] = s.pass;
    return j;
}

Json aakh_json(const std::vector<AakhReport>& reports, bool& pass) {
    Json j;
    j["name"] = "aakh";
    Json sides = Json::array();
    pass = true;
    for (const auto& r : reports) {
        Json s;
        s["side"] = r.side == Side::A ? "A" : "B";
        s["expected_i"] = r.expected_i;
        s["expected_j"] = r.expected_j;
        s["found_j"] = r.found_j ? Json(*r.found_j) : Json();
        s["gradings"] = r.gradings;
        s["group"] = cell_text(r.group);
        s["pass"] = r.pass;
        s["detail"] = r.detail;
        sides.push_back(s);
        pass = pass && r.pass;
    }
    j["sides"] = sides;
    j["pass"] = pass;
    return j;
}

// Alternating diagrams satisfy σ = s_A − c₊ − 1; Turaev genus one allows ±1.
PropertyCheck signature_formula(const LinkDiagram& d, int sigma) {
    PropertyCheck pc{"signature_formula"};
    if (is_split(d) || d.crossing_count() == 0) return pc;
    SignCount sc = crossing_signs(d);
    int base = sA(d) - sc.positive;
    pc.checked = 1;
    if (is_alternating(d)) {
        if (sigma != base - 1) pc.violations.push_back("sigma " + std::to_string(sigma) + " != s_A - c+ - 1");
        if (sigma != sc.negative - sB(d) + 1) pc.violations.push_back("sigma " + std::to_string(sigma) + " != c- - s_B + 1");
    } else if (turaev_genus_diagram(d) == 1 && sigma != base - 1 && sigma != base + 1) {
        pc.violations.push_back("sigma " + std::to_string(sigma) + " not within one of s_A - c+");
    }
    return pc;
}

struct TbFacts {
    Json json;
    PropertyCheck check{"tb_bounds"};
};

TbFacts tb_facts(const LinkDiagram& d, const Tables& t, const RunOptions& o) {
    TbFacts out;
    Json& j = out.json;
    PropertyCheck& pc = out.check;
    SignCount sc = crossing_signs(d);
    int w = sc.writhe();
    j["writhe"] = w;
    std::optional<int> bound;
    if (t.complete && !t.shifted.empty()) bound = kh_tb_bound(t.shifted);
    j["kh_bound"] = bound ? Json(*bound) : Json();
    TuraevOneFlags flags = turaev1_flags(d);
    j["interval"] = Json();
    if (flags.A_tg1) {
        TbInterval iv = tb_interval(d, Side::A);
        j["interval"] = {iv.lower, iv.upper};
        if (bound) {
            ++pc.checked;
            if (*bound < iv.lower || *bound > iv.upper)
                pc.violations.push_back("kh bound " + std::to_string(*bound) + " outside [" + std::to_string(iv.lower) +
                                        "," + std::to_string(iv.upper) + "]");
        }
    }
    if (bound && d.crossing_count() > 0 && is_adequate(d, Smoothing::A)) {
        ++pc.checked;
        if (*bound != w - sA(d))
            pc.violations.push_back("adequate diagram with kh bound " + std::to_string(*bound) + " != w - s_A");
    }
    j["mirror_interval"] = Json();
    j["mirror_kh_bound"] = Json();
    if (flags.B_tg1) {
        TbInterval iv = tb_interval(d, Side::B);
        j["mirror_interval"] = {iv.lower, iv.upper};
        if (t.complete && d.crossing_count() <= o.full_table_limit) {
            KhOptions opt;
            opt.threads = o.threads;
            KhTable mirrored = kh(mirror(d), opt);
            if (!mirrored.empty()) {
                int mb = kh_tb_bound(mirrored);
                j["mirror_kh_bound"] = mb;
                ++pc.checked;
                if (mb < iv.lower || mb > iv.upper)
                    pc.violations.push_back("mirror kh bound " + std::to_string(mb) + " outside [" +
                                            std::to_string(iv.lower) + "," + std::to_string(iv.upper) + "]");
            }
        }
    }
    j["front_tb"] = Json();
    j["cusps"] = Json();
    Verdict v = classify(d).verdict;
    bool drawable = d.crossing_count() > 0 && d.free_loops() == 0 && !is_split(d) &&
                    (v == Verdict::alternating || v == Verdict::A_almost_alternating || v == Verdict::both);
    if (drawable) {
        try {
            LegendrianFront f = front_for_diagram(d);
            int tb = tb_of_front(f);
            j["front_tb"] = tb;
            j["cusps"] = f.cusp_count();
            ++pc.checked;
            if (tb != w - sA(d)) pc.violations.push_back("front tb " + std::to_string(tb) + " != w - s_A");
            if (bound && tb > *bound) pc.violations.push_back("front tb exceeds the kh bound");
        } catch (const DiagramError& e) {
            j["front_note"] = e.what();
        }
    } else if (d.crossing_count() == 0) {
        LegendrianFront f = front_for_diagram(d);
        j["front_tb"] = tb_of_front(f);
        j["cusps"] = f.cusp_count();
    } else {
        j["front_note"] = "front construction needs an alternating or A-almost alternating diagram";
    }
    return out;
}

// Mondrian layouts of both checkerboard graphs, where they have one.
PropertyCheck mondrian_check(const LinkDiagram& d) {
    PropertyCheck pc{"mondrian"};
    if (d.crossing_count() == 0 || d.free_loops() > 0 || is_split(d)) return pc;
    CheckerboardGraph cb = checkerboard(d);
    for (const PlaneGraph* g : {&cb.unshaded, &cb.shaded}) {
        bool loop = std::any_of(g->edges.begin(), g->edges.end(), [](auto& e) { return e[0] == e[1]; });
        if (loop) continue;
        ++pc.checked;
        try {
            MondrianDiagram m = mondrian_from_graph(*g);
            if (!same_rotation(contraction(m), *g)) pc.violations.push_back("contraction differs from the graph");
        } catch (const std::exception& e) {
            pc.violations.push_back(e.what());
        }
    }
    for (const auto& s : classify(d).dealternators) {
        if (s.verdict != Verdict::A_almost_alternating && s.verdict != Verdict::both) continue;
        PlaneGraph g = checkerboard(d.with_dealternator(s.dealternator)).unshaded;
        ++pc.checked;
        try {
            MondrianDiagram m = mondrian_from_graph(g, s.dealternator);
            if (!placement_holds(m, s.dealternator))
                pc.violations.push_back("dealternator " + std::to_string(s.dealternator) + " misplaced");
        } catch (const std::exception& e) {
            pc.violations.push_back(e.what());
        }
    }
    return pc;
}

}  // namespace

CommandResult run_states(const Fixture& f, const RunOptions& o) {
    auto start = Clock::now();
    const LinkDiagram& d = f.diagram;
    CommandResult r;
    r.report = envelope("states", f.name);
    SignCount sc = crossing_signs(d);
    Json s;
    s["crossings"] = d.crossing_count();
    s["components"] = d.component_count();
    s["writhe"] = sc.writhe();
    s["c_plus"] = sc.positive;
    s["c_minus"] = sc.negative;
    s["s_A"] = sA(d);
    s["s_B"] = sB(d);
    s["turaev_genus"] = turaev_genus_diagram(d);
    s["adequate_A"] = is_adequate(d, Smoothing::A);
    s["adequate_B"] = is_adequate(d, Smoothing::B);
    s["alternating"] = is_alternating(d);
    r.report["results"] = s;
    std::ostringstream text;
    text << f.name << "\n"
         << "c = " << d.crossing_count() << ", components = " << d.component_count() << ", writhe = " << sc.writhe()
         << "\n"
         << "s_A = " << s["s_A"] << ", s_B = " << s["s_B"] << ", g_T = " << s["turaev_genus"] << "\n"
         << "A-adequate: " << (s["adequate_A"].get<bool>() ? "yes" : "no")
         << ", B-adequate: " << (s["adequate_B"].get<bool>() ? "yes" : "no") << "\n";
    r.text = text.str();
    finish(r, true, start, o);
    return r;
}

CommandResult run_jones(const Fixture& f, const RunOptions& o) {
    auto start = Clock::now();
    CommandResult r;
    r.report = envelope("jones", f.name);
    LaurentPoly v = jones(f.diagram, o.threads);
    LaurentPoly vt = convert_normalization(v);
    Json s;
    s["q"] = polynomial_json(v);
    s["t"] = polynomial_json(vt);
    s["q_text"] = v.to_string();
    s["t_text"] = vt.to_string();
    bool pass = true;
    if (f.jones) {
        bool match = parse_table_polynomial(*f.jones) == normalized_jones_half_units(f.diagram);
        s["published"] = *f.jones;
        s["matches_published"] = match;
        pass = match;
    }
    r.report["results"] = s;
    r.text = "V(q) = " + v.to_string() + "\nV(t) = " + vt.to_string() + "\n";
    if (f.jones) r.text += std::string("published: ") + (pass ? "match" : "MISMATCH") + "\n";
    finish(r, pass, start, o);
    return r;
}

CommandResult run_kh(const Fixture& f, const RunOptions& o) {
    auto start = Clock::now();
    const LinkDiagram& d = f.diagram;
    CommandResult r;
    r.report = envelope("kh", f.name);
    KhTable t;
    bool complete = true;
    if (o.jmin_only || o.jmax_only) {
        complete = false;
        for (Extreme side : {Extreme::Low, Extreme::High}) {
            if (!(side == Extreme::Low ? o.jmin_only : o.jmax_only)) continue;
            KhTable part = kh_extremal(d, side, o.threads);
            for (const auto& [key, g] : part.entries()) t.set(key.first, key.second, g);
        }
    } else if (o.j_range) {
        complete = false;
        KhOptions opt;
        opt.threads = o.threads;
        opt.j_range = o.j_range;
        t = kh(d, opt);
    } else {
        Tables tables = compute_tables(d, o);
        t = tables.shifted;
        complete = tables.complete;
    }
    Json s;
    s["complete"] = complete;
    s["j_range"] = o.j_range ? Json{o.j_range->first, o.j_range->second} : Json();
    s["table"] = table_json(t);
    r.report["results"] = s;
    if (o.csv) {
        r.text = table_csv(t);
    } else {
        r.text = f.name + ": Kh^{i,j}, c = " + std::to_string(d.crossing_count()) +
                 (complete ? "" : " (extremal or windowed slices only)") + "\n" + table_grid(t);
    }
    finish(r, true, start, o);
    return r;
}

CommandResult run_classify(const Fixture& f, const RunOptions& o) {
    auto start = Clock::now();
    const LinkDiagram& d = f.diagram;
    CommandResult r;
    r.report = envelope("classify", f.name);
    Classification cls = classify(d);
    TuraevOneFlags flags = turaev1_flags(d);
    Json s;
    s["alternating"] = is_alternating(d);
    s["verdict"] = to_string(cls.verdict);
    s["reason"] = cls.reason;
    Json list = Json::array();
    for (const auto& a : cls.dealternators)
        list.push_back({{"index", a.dealternator}, {"adj_u", a.adj_u}, {"adj_v", a.adj_v},
                        {"verdict", to_string(a.verdict)}, {"reason", a.reason}});
    s["dealternators"] = list;
    s["A_tg1"] = flags.A_tg1;
    s["B_tg1"] = flags.B_tg1;
    s["note"] = flags.note;
    s["signature"] = is_split(d) ? Json() : Json(signature(d));
    r.report["results"] = s;
    std::ostringstream text;
    text << f.name << ": " << to_string(cls.verdict) << " (as drawn)";
    if (!cls.reason.empty()) text << ", " << cls.reason;
    text << "\n";
    for (const auto& a : cls.dealternators)
        text << "  dealternator " << a.dealternator << ": adj_u = " << a.adj_u << ", adj_v = " << a.adj_v << ", "
             << to_string(a.verdict) << "\n";
    text << "A-Turaev genus one: " << (flags.A_tg1 ? "yes" : "no") << ", B-Turaev genus one: " << (flags.B_tg1 ? "yes" : "no")
         << "\nsignature = " << (s["signature"].is_null() ? "n/a (split)" : s["signature"].dump()) << "\n";
    r.text = text.str();
    finish(r, true, start, o);
    return r;
}

CommandResult run_verify(const Fixture& f, const RunOptions& o) {
    auto start = Clock::now();
    const LinkDiagram& d = f.diagram;
    static const std::set<std::string> known{"diagonal", "signature", "aakh", "bounds", "les", "knightmove", "mirror", "all"};
    if (!known.count(o.theorem)) throw DiagramError("unknown theorem: " + o.theorem);
    bool all = o.theorem == "all";
    auto want = [&](const char* name) { return all || o.theorem == name; };

    CommandResult r;
    r.report = envelope("verify", f.name);
    r.report["theorem"] = o.theorem;
    Tables t = compute_tables(d, o);
    Classification cls = classify(d);
    Json checks = Json::array();
    bool pass = true;
    std::vector<std::string> lines;
    auto add = [&](Json j) {
        bool ok = j.value("pass", true);
        pass = pass && ok;
        std::string line = j["name"].get<std::string>() + ": ";
        if (j.contains("skipped")) line += "skipped (" + j["skipped"].get<std::string>() + ")";
        else line += ok ? "pass" : "FAIL";
        if (j.contains("message")) line += ", " + j["message"].get<std::string>();
        lines.push_back(line);
        checks.push_back(std::move(j));
    };
    auto need_complete = [&](const char* name) {
        if (t.complete) return true;
        add(skipped(name, "needs the full table; rerun with --full"));
        return false;
    };

    if (all) {
        if (d.crossing_count() <= 11 || o.full) add(property_json(check_d_squared(d)));
        else add(skipped("d_squared", "more than 11 crossings; rerun with --full"));
        if (t.complete) add(property_json(check_euler_jones(d, t.shifted)));
    }
    if (want("diagonal")) {
        bool ok = true;
        add(diagonal_json(d, t, cls, ok));
    }
    if (want("signature") && !t.shifted.empty() && !is_split(d)) {
        add(signature_json(check_signature_relation(d, t.shifted)));
        add(property_json(signature_formula(d, signature(d))));
    }
    if (want("aakh")) {
        bool aa = cls.verdict == Verdict::A_almost_alternating || cls.verdict == Verdict::B_almost_alternating ||
                  cls.verdict == Verdict::both;
        if (aa) {
            bool ok = true;
            add(aakh_json(check_aakh(d, o.threads), ok));
        } else if (all) {
            add(skipped("aakh", "diagram is " + to_string(cls.verdict)));
        } else {
            throw DiagramError("misclassified input: diagram is " + to_string(cls.verdict));
        }
    }
    if (want("bounds")) {
        if (need_complete("diagonal_window")) add(property_json(check_diagonal_window(d, t.shifted)));
        add(property_json(check_span_bound(d)));
        TbFacts tb = tb_facts(d, t, o);
        Json j = property_json(tb.check);
        j["tb"] = tb.json;
        add(j);
    }
    if (want("les")) {
        if (d.crossing_count() <= 10 || o.full) add(property_json(check_les_all(d)));
        else add(skipped("les_exactness", "more than 10 crossings; rerun with --full"));
    }
    if (want("knightmove") && need_complete("knight_move")) add(property_json(check_knight_move(t.shifted)));
    if (want("mirror") && need_complete("mirror_duality"))
        add(property_json(check_mirror_duality(d, t.unshifted, o.threads)));

    r.report["results"] = Json{{"complete", t.complete}, {"checks", checks}};
    for (const auto& l : lines) r.text += l + "\n";
    finish(r, pass, start, o);
    return r;
}

CommandResult run_tb(const Fixture& f, const RunOptions& o) {
    auto start = Clock::now();
    CommandResult r;
    r.report = envelope("tb", f.name);
    Tables t = compute_tables(f.diagram, o);
    TbFacts tb = tb_facts(f.diagram, t, o);
    tb.json["checks"] = property_json(tb.check);
    r.report["results"] = tb.json;
    std::ostringstream text;
    auto show = [](const Json& j) { return j.is_null() ? std::string("n/a") : j.dump(); };
    text << f.name << ": writhe = " << tb.json["writhe"] << ", kh bound = " << show(tb.json["kh_bound"])
         << ", interval = " << show(tb.json["interval"]) << ", front tb = " << show(tb.json["front_tb"])
         << ", cusps = " << show(tb.json["cusps"]) << "\n";
    if (tb.json.contains("front_note")) text << "front: " << tb.json["front_note"].get<std::string>() << "\n";
    r.text = text.str();
    finish(r, tb.check.pass(), start, o);
    return r;
}

CommandResult run_front(const Fixture& f, const RunOptions& o, const std::optional<std::string>& svg_path) {
    auto start = Clock::now();
    CommandResult r;
    r.report = envelope("front", f.name);
    LegendrianFront front = front_for_diagram(f.diagram);
    Json s;
    s["crossings"] = front.crossings.size();
    s["cusps"] = front.cusp_count();
    s["writhe"] = front_writhe(front);
    s["tb"] = tb_of_front(front);
    Json quads = Json::array();
    for (const auto& q : front_quads(front)) quads.push_back({q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1});
    s["pd"] = quads;
    if (svg_path) {
        std::ofstream out(*svg_path);
        if (!out) throw DiagramError("cannot write " + *svg_path);
        out << front_svg(front);
        s["svg"] = *svg_path;
    }
    r.report["results"] = s;
    r.text = f.name + ": front with " + std::to_string(front.crossings.size()) + " crossings, " +
             std::to_string(front.cusp_count()) + " cusps, tb = " + std::to_string(tb_of_front(front)) + "\n";
    finish(r, true, start, o);
    return r;
}

CommandResult run_corpus(const FixtureSet& fixtures, const RunOptions& o) {
    auto start = Clock::now();
    CommandResult r;
    r.report = envelope("corpus", "run");
    Json rows = Json::array();
    int violations = 0, checks = 0;
    bool pass = true;
    std::ostringstream text;
    for (const auto& [name, f] : fixtures.all()) {
        auto fixture_start = Clock::now();
        const LinkDiagram& d = f.diagram;
        int c = d.crossing_count();
        std::vector<PropertyCheck> props;
        Json row;
        row["name"] = name;
        row["source"] = f.source;
        row["crossings"] = c;
        row["components"] = d.component_count();

        if (f.jones) {
            PropertyCheck pc{"published_jones"};
            pc.checked = 1;
            if (parse_table_polynomial(*f.jones) != normalized_jones_half_units(d))
                pc.violations.push_back("Jones polynomial differs from " + *f.jones);
            props.push_back(pc);
        }
        Tables t = compute_tables(d, o);
        row["complete"] = t.complete;
        row["table"] = table_json(t.shifted);
        Classification cls = classify(d);
        row["verdict"] = to_string(cls.verdict);
        std::optional<int> sigma;
        if (!is_split(d)) sigma = signature(d);
        row["signature"] = sigma ? Json(*sigma) : Json();

        if (c <= 11) props.push_back(check_d_squared(d));
        if (t.complete) {
            props.push_back(check_euler_jones(d, t.shifted));
            props.push_back(check_knight_move(t.shifted));
            props.push_back(check_diagonal_window(d, t.shifted));
        }
        if (t.complete && c <= 11) props.push_back(check_mirror_duality(d, t.unshifted, o.threads));
        props.push_back(check_span_bound(d));
        if (c <= 8) {
            props.push_back(check_les_all(d));
            props.push_back(check_les_jmin(d, t.unshifted));
        }
        if (sigma) props.push_back(signature_formula(d, *sigma));
        if (cls.verdict == Verdict::A_almost_alternating || cls.verdict == Verdict::B_almost_alternating ||
            cls.verdict == Verdict::both) {
            PropertyCheck pc{"aakh"};
            for (const auto& a : check_aakh(d, o.threads)) {
                ++pc.checked;
                if (!a.pass) pc.violations.push_back(std::string(a.side == Side::A ? "A: " : "B: ") + a.detail);
            }
            props.push_back(pc);
        }
        if (t.complete && !t.shifted.empty() && sigma) {
            bool ok = true;
            Json diag = diagonal_json(d, t, cls, ok);
            PropertyCheck pc{"diagonal_required_sides"};
            pc.checked = static_cast<int>(diag["required_sides"].size());
            bool required_ok = true;
            for (const auto& side : diag["required_sides"]) required_ok = required_ok && diag[side.get<std::string>()]["pass"].get<bool>();
            if (!required_ok) pc.violations.push_back(diag["message"].get<std::string>());
            props.push_back(pc);
            row["diagonal"] = diag;
            row["signature_relation"] = signature_json(check_signature_relation(d, t.shifted));
            row["signature_relation"].erase("name");
        }
        props.push_back(mondrian_check(d));
        TbFacts tb = tb_facts(d, t, o);
        row["tb"] = tb.json;
        props.push_back(tb.check);

        Json list = Json::array();
        bool fixture_pass = true;
        for (const auto& p : props) {
            list.push_back(property_json(p));
            checks += p.checked;
            violations += static_cast<int>(p.violations.size());
            fixture_pass = fixture_pass && p.pass();
        }
        row["checks"] = list;
        row["pass"] = fixture_pass;
        if (!o.stable)
            row["timing_ms"] =
                std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - fixture_start).count();
        pass = pass && fixture_pass;
        text << std::left << std::setw(24) << name << std::right << " c=" << std::setw(2) << c << "  "
             << (fixture_pass ? "ok" : "FAIL") << "\n";
        for (const auto& p : props)
            for (const auto& v : p.violations) text << "    " << p.name << ": " << v << "\n";
        rows.push_back(std::move(row));
    }
    r.report["results"] = Json{{"fixtures", rows},
                               {"summary", {{"fixtures", fixtures.size()}, {"checks", checks}, {"violations", violations}}}};
    text << fixtures.size() << " fixtures, " << checks << " checks, " << violations << " violations\n";
    r.text = text.str();
    finish(r, pass, start, o);
    return r;
}

std::string render(const CommandResult& r, const RunOptions& o) {
    if (o.pretty || o.csv) return r.text;
    return r.report.dump(2) + "\n";
}

}  // namespace khoverant
