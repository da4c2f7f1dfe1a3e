#include "khoverant/polynomial.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "khoverant/states.hpp"

namespace khoverant {

LaurentPoly LaurentPoly::monomial(BigInt coefficient, int exponent, std::string variable) {
    LaurentPoly p(std::move(variable));
    p.add_term(exponent, coefficient);
    return p;
}

int LaurentPoly::min_exponent() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no degree");
    return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no degree");
    return terms_.rbegin()->first;
}

int LaurentPoly::span() const { return (max_exponent() - min_exponent()) / denominator_; }

BigInt LaurentPoly::coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? BigInt(0) : it->second;
}

void LaurentPoly::add_term(int exponent, const BigInt& coefficient) {
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out(a.variable_, a.denominator_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
}

LaurentPoly operator*(LaurentPoly a, const BigInt& s) {
    if (s == 0) return LaurentPoly(a.variable_, a.denominator_);
    for (auto& [e, c] : a.terms_) c *= s;
    return a;
}

LaurentPoly LaurentPoly::shifted(int by) const {
    LaurentPoly out(variable_, denominator_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e + by, c);
    return out;
}

LaurentPoly LaurentPoly::inverted() const {
    LaurentPoly out(variable_, denominator_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
    return out;
}

LaurentPoly LaurentPoly::pow(int n) const {
    if (n < 0) throw std::domain_error("negative power");
    LaurentPoly out = monomial(1, 0, variable_);
    for (int k = 0; k < n; ++k) out = out * *this;
    return out;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        BigInt c = it->second;
        int e = it->first;
        bool negative = c < 0;
        if (negative) c = -c;
        if (first) out << (negative ? "-" : "");
        else out << (negative ? " - " : " + ");
        first = false;
        if (e == 0) {
            out << c;
            continue;
        }
        if (c != 1) out << c << '*';
        out << variable_;
        if (denominator_ == 1) {
            if (e != 1) out << '^' << e;
        } else if (e % denominator_ == 0) {
            if (e / denominator_ != 1) out << '^' << e / denominator_;
        } else {
            out << "^(" << e << '/' << denominator_ << ')';
        }
    }
    return out.str();
}

LaurentPoly unknot_value() {
    LaurentPoly p;
    p.add_term(1, 1);
    p.add_term(-1, 1);
    return p;
}

LaurentPoly bracket(const LinkDiagram& d, int threads) {
    // Tally states by (b, |s|), then expand each group once.
    int c = d.crossing_count();
    if (c > 30) throw DiagramError("too many crossings for the bracket state sum");
    CircleCounter counter(d);
    int max_circles = c + 1 + d.free_loops();
    std::vector<std::vector<std::uint64_t>> tally(c + 1, std::vector<std::uint64_t>(max_circles + 1, 0));
    std::uint64_t total = std::uint64_t{1} << c;
    threads = std::max(1, threads);
    if (total < 4096) threads = 1;
    std::mutex merge;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            std::vector<std::vector<std::uint64_t>> local(c + 1, std::vector<std::uint64_t>(max_circles + 1, 0));
            for (std::uint64_t s = t; s < total; s += threads)
                ++local[__builtin_popcountll(s)][counter.count(s)];
            std::lock_guard lock(merge);
            for (int b = 0; b <= c; ++b)
                for (int n = 0; n <= max_circles; ++n) tally[b][n] += local[b][n];
        });
    for (auto& th : pool) th.join();

    LaurentPoly loop = unknot_value();
    std::vector<LaurentPoly> loop_powers{LaurentPoly::monomial(1, 0)};
    for (int n = 1; n <= max_circles; ++n) loop_powers.push_back(loop_powers.back() * loop);
    LaurentPoly out;
    for (int b = 0; b <= c; ++b)
        for (int n = 0; n <= max_circles; ++n) {
            if (!tally[b][n]) continue;
            BigInt coeff = tally[b][n];
            if (b % 2) coeff = -coeff;
            out += loop_powers[n].shifted(b) * coeff;
        }
    return out;
}

LaurentPoly bracket_by_skein(const LinkDiagram& d) {
    if (d.crossing_count() == 0) return unknot_value().pow(d.free_loops());
    int last = d.crossing_count() - 1;
    LaurentPoly a = bracket_by_skein(resolve(d, last, Smoothing::A));
    LaurentPoly b = bracket_by_skein(resolve(d, last, Smoothing::B));
    return a - b.shifted(1);
}

LaurentPoly jones(const LinkDiagram& d, int threads) {
    SignCount sc = crossing_signs(d);
    BigInt sign = sc.negative % 2 ? -1 : 1;
    return bracket(d, threads).shifted(sc.positive - 2 * sc.negative) * sign;
}

LaurentPoly convert_normalization(const LaurentPoly& v) {
    if (v.is_zero()) throw std::domain_error("zero polynomial is not a Jones polynomial");
    // Synthetic division by q + q^{-1}, from the top degree down.
    std::map<int, BigInt> rest = v.terms();
    std::map<int, BigInt> quotient;
    while (!rest.empty()) {
        auto top = std::prev(rest.end());
        int e = top->first;
        BigInt c = top->second;
        quotient[e - 1] = c;
        rest.erase(top);
        BigInt& low = rest[e - 2];
        low -= c;
        if (low == 0) rest.erase(e - 2);
        if (!rest.empty() && rest.begin()->first < v.min_exponent())
            throw std::domain_error("polynomial is not divisible by q + q^{-1}");
    }
    int parity = (quotient.begin()->first % 2 + 2) % 2;
    for (const auto& [e, c] : quotient)
        if ((e % 2 + 2) % 2 != parity) throw std::domain_error("quotient mixes exponent parities");
    // Ṽ(q^2): q-exponent e is t-exponent e/2.
    LaurentPoly out(std::string("t"), parity ? 2 : 1);
    for (const auto& [e, c] : quotient) out.add_term(parity ? e : e / 2, c);
    return out;
}

}  // namespace khoverant
