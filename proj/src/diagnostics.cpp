#include "khoverant/diagnostics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "khoverant/classify.hpp"
#include "khoverant/les.hpp"
#include "khoverant/polynomial.hpp"
#include "khoverant/smith.hpp"
#include "khoverant/states.hpp"

namespace khoverant {

namespace {

ExtremeRow extreme_row(const KhTable& t, int j) {
    ExtremeRow row;
    row.j = j;
    for (const auto& [key, g] : t.entries()) {
        if (key.second != j) continue;
        row.rank += g.rank;
        row.torsion.insert(row.torsion.end(), g.torsion.begin(), g.torsion.end());
        row.gradings.push_back(key.first);
    }
    std::sort(row.torsion.begin(), row.torsion.end());
    if (row.gradings.size() == 1 && row.rank == 1 && row.torsion.empty()) row.i0 = row.gradings.front();
    return row;
}

std::string describe_row(const ExtremeRow& row) {
    std::ostringstream out;
    out << "rank " << row.rank;
    if (!row.torsion.empty()) out << " with torsion";
    out << " in " << row.gradings.size() << " homological grading" << (row.gradings.size() == 1 ? "" : "s");
    return out.str();
}

SideCheck side_identity(const ExtremeRow& row, Side side, int rhs) {
    SideCheck c;
    c.side = side;
    c.j_extreme = row.j;
    c.rhs = rhs;
    c.i0 = row.i0;
    c.cyclic = row.i0.has_value();
    if (!c.cyclic) {
        c.reason = "not cyclic: " + describe_row(row);
        return c;
    }
    c.lhs = 2 * *row.i0 - row.j;
    c.pass = *c.lhs == rhs;
    if (!c.pass) c.reason = "identity fails: " + std::to_string(*c.lhs) + " != " + std::to_string(rhs);
    return c;
}

std::string key_name(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

ExtremalProfile extremal_profile(const KhTable& t) {
    ExtremalProfile p;
    p.j_min = t.j_min();
    p.j_max = t.j_max();
    p.delta_min = t.delta_min();
    p.delta_max = t.delta_max();
    p.low = extreme_row(t, p.j_min);
    p.high = extreme_row(t, p.j_max);
    return p;
}

SideCheck check_theorem_diagonal(const KhTable& t, Side side) {
    ExtremalProfile p = extremal_profile(t);
    return side == Side::A ? side_identity(p.low, Side::A, p.delta_min + 2)
                           : side_identity(p.high, Side::B, p.delta_max - 2);
}

ObstructionReport obstruction_report(const KhTable& t) {
    ObstructionReport r;
    r.a = check_theorem_diagonal(t, Side::A);
    r.b = check_theorem_diagonal(t, Side::B);
    r.fires = !r.a.pass && !r.b.pass;
    if (r.fires)
        r.conclusion = "inadequate, not almost alternating, Turaev genus >= 2, dealternating number >= 2";
    return r;
}

SignatureCheck check_signature_relation(const KhTable& t, int sigma) {
    ExtremalProfile p = extremal_profile(t);
    SignatureCheck s;
    s.sigma = sigma;
    s.low = side_identity(p.low, Side::A, sigma + 1);
    s.high = side_identity(p.high, Side::B, sigma - 1);
    s.pass = s.low.pass || s.high.pass;
    return s;
}

SignatureCheck check_signature_relation(const LinkDiagram& d, const KhTable& t) {
    SignatureCheck s = check_signature_relation(t, signature(d));
    TuraevOneFlags f = turaev1_flags(d);
    if (f.A_tg1 && f.B_tg1) s.hypothesis = "diagram-certified";
    return s;
}

std::vector<AakhReport> check_aakh(const LinkDiagram& d, int threads) {
    Verdict v = classify(d).verdict;
    bool a = v == Verdict::A_almost_alternating || v == Verdict::both;
    bool b = v == Verdict::B_almost_alternating || v == Verdict::both;
    if (!a && !b) throw DiagramError("misclassified input: diagram is " + to_string(v));
    std::vector<AakhReport> out;
    auto run = [&](Side side) {
        AakhReport r;
        r.side = side;
        bool low = side == Side::A;
        r.expected_j = low ? 2 - sA(d) : d.crossing_count() + sB(d) - 2;
        r.expected_i = low ? 1 : d.crossing_count() - 1;
        KhTable t = unshifted_kh_extremal(d, low ? Extreme::Low : Extreme::High, threads);
        if (!t.empty()) {
            r.found_j = low ? t.j_min() : t.j_max();
            r.gradings = t.support(*r.found_j);
            r.group = t.at(r.expected_i, *r.found_j);
        }
        r.pass = r.found_j == r.expected_j && r.gradings == std::vector<int>{r.expected_i} && r.group.is_integers();
        if (!r.pass) {
            std::ostringstream msg;
            msg << "expected Z at " << key_name(r.expected_i, r.expected_j) << " as the extremal row";
            if (r.found_j) msg << "; extremal row at j=" << *r.found_j;
            r.detail = msg.str();
        }
        out.push_back(std::move(r));
    };
    if (a) run(Side::A);
    if (b) run(Side::B);
    return out;
}

PropertyCheck check_d_squared(const LinkDiagram& d) {
    PropertyCheck pc{"d_squared"};
    StateCatalog catalog(d);
    for (int j = catalog.j_lowest(); j <= catalog.j_highest(); j += 2) {
        QuantumSlice slice(catalog, j);
        for (int i = 0; i + 1 < slice.max_degree(); ++i) {
            SparseMatrix first = slice.differential(i), second = slice.differential(i + 1);
            ++pc.checked;
            if (first.rows == 0 || second.rows == 0 || first.cols == 0) continue;
            if (multiply(second, first).nonzeros() != 0)
                pc.violations.push_back("d∘d ≠ 0 at " + key_name(i, j));
        }
    }
    return pc;
}

PropertyCheck check_euler_jones(const LinkDiagram& d, const KhTable& shifted) {
    PropertyCheck pc{"euler_equals_jones"};
    pc.checked = 1;
    if (!(euler_characteristic(shifted) == jones(d)))
        pc.violations.push_back("graded Euler characteristic " + euler_characteristic(shifted).to_string() +
                                " differs from Jones " + jones(d).to_string());
    return pc;
}

PropertyCheck check_mirror_duality(const LinkDiagram& d, const KhTable& unshifted, int threads) {
    PropertyCheck pc{"mirror_duality"};
    KhOptions opt;
    opt.threads = threads;
    KhTable mirrored = unshifted_kh(mirror(d), opt);
    int c = d.crossing_count();
    std::set<std::pair<int, int>> keys;
    for (const auto& [key, g] : mirrored.entries()) keys.insert(key);
    for (const auto& [key, g] : unshifted.entries()) {
        keys.insert({c - key.first, c - key.second});
        keys.insert({c - key.first + 1, c - key.second});
    }
    for (auto [i, j] : keys) {
        ++pc.checked;
        const KhGroup& m = mirrored.at(i, j);
        if (m.rank != unshifted.at(c - i, c - j).rank)
            pc.violations.push_back("rank mismatch at mirror " + key_name(i, j));
        if (m.torsion != unshifted.at(c - i + 1, c - j).torsion)
            pc.violations.push_back("torsion mismatch at mirror " + key_name(i, j));
    }
    return pc;
}

PropertyCheck check_knight_move(const KhTable& t) {
    PropertyCheck pc{"knight_move"};
    auto positive = [&](int i, int j) { return t.at(i, j).rank > 0; };
    int j_lo = t.empty() ? 0 : t.j_min(), j_hi = t.empty() ? 0 : t.j_max();
    for (const auto& [key, g] : t.entries()) {
        if (g.rank == 0) continue;
        ++pc.checked;
        auto [i, j] = key;
        bool ok = positive(i, j + 2) || positive(i, j - 2);
        for (int q = j + 4; !ok && q <= j_hi; q += 4) ok = positive(i + 1, q);
        for (int q = j - 4; !ok && q >= j_lo; q -= 4) ok = positive(i - 1, q);
        if (!ok) pc.violations.push_back("no companion for " + key_name(i, j));
    }
    return pc;
}

PropertyCheck check_diagonal_window(const LinkDiagram& d, const KhTable& shifted) {
    PropertyCheck pc{"diagonal_window"};
    if (is_split(d)) return pc;
    SignCount sc = crossing_signs(d);
    int base = sA(d) - sc.positive;
    int lo = base - 2;
    int hi = turaev_genus_diagram(d) == 1 ? base + 2 : sc.negative - sB(d) + 2;
    for (const auto& [key, g] : shifted.entries()) {
        ++pc.checked;
        int delta = 2 * key.first - key.second;
        if (((delta - base) % 2 + 2) % 2 != 0) pc.violations.push_back("parity of 2i-j at " + key_name(key.first, key.second));
        if (delta < lo || delta > hi)
            pc.violations.push_back("2i-j=" + std::to_string(delta) + " outside [" + std::to_string(lo) + "," +
                                    std::to_string(hi) + "] at " + key_name(key.first, key.second));
    }
    return pc;
}

PropertyCheck check_span_bound(const LinkDiagram& d) {
    PropertyCheck pc{"span_bound"};
    if (is_split(d)) return pc;
    pc.checked = 1;
    int span = convert_normalization(jones(d)).span();
    int bound = d.crossing_count() - turaev_genus_diagram(d);
    if (span > bound)
        pc.violations.push_back("span " + std::to_string(span) + " exceeds c - g_T = " + std::to_string(bound));
    return pc;
}

PropertyCheck check_les_all(const LinkDiagram& d) {
    PropertyCheck pc{"les_exactness"};
    for (int k = 0; k < d.crossing_count(); ++k) {
        LesReport r = check_les(d, k);
        pc.checked += r.windows_checked;
        for (auto& v : r.violations) pc.violations.push_back("crossing " + std::to_string(k) + ": " + v);
    }
    return pc;
}

PropertyCheck check_les_jmin(const LinkDiagram& d, const KhTable& unshifted) {
    PropertyCheck pc{"les_jmin"};
    for (int k = 0; k < d.crossing_count(); ++k) {
        KhTable ta = unshifted_kh(resolve(d, k, Smoothing::A));
        KhTable tb = unshifted_kh(resolve(d, k, Smoothing::B));
        if (ta.j_min() - 1 >= tb.j_min()) continue;
        ++pc.checked;
        int j = ta.j_min();
        std::string at = "crossing " + std::to_string(k);
        if (unshifted.j_min() != j) {
            pc.violations.push_back(at + ": j_min " + std::to_string(unshifted.j_min()) + " != " + std::to_string(j));
            continue;
        }
        std::set<int> gradings;
        for (int i : ta.support(j)) gradings.insert(i);
        for (int i : unshifted.support(j)) gradings.insert(i);
        for (int i : gradings)
            if (!(ta.at(i, j) == unshifted.at(i, j))) pc.violations.push_back(at + ": bottom row differs at i=" + std::to_string(i));
    }
    return pc;
}

}  // namespace khoverant
