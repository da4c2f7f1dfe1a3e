#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>

#include "khoverant/diagram.hpp"

namespace khoverant {

using BigInt = boost::multiprecision::cpp_int;

// Integer Laurent polynomial. Exponents are stored as integers in units of
// 1/denominator so that half-integral powers of t can be represented.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::string variable, int denominator = 1)
        : variable_(std::move(variable)), denominator_(denominator) {}

    static LaurentPoly monomial(BigInt coefficient, int exponent, std::string variable = "q");

    const std::map<int, BigInt>& terms() const { return terms_; }
    const std::string& variable() const { return variable_; }
    int denominator() const { return denominator_; }
    bool is_zero() const { return terms_.empty(); }
    int min_exponent() const;
    int max_exponent() const;
    // max − min exponent in whole units of the variable.
    int span() const;
    BigInt coefficient(int exponent) const;

    void add_term(int exponent, const BigInt& coefficient);
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, const BigInt& s);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    LaurentPoly shifted(int by) const;
    // q -> q^{-1}
    LaurentPoly inverted() const;
    LaurentPoly pow(int n) const;

    std::string to_string() const;

private:
    std::map<int, BigInt> terms_;
    std::string variable_ = "q";
    int denominator_ = 1;
};

// q + q^{-1}
LaurentPoly unknot_value();

LaurentPoly bracket(const LinkDiagram& d, int threads = 1);
// Independent evaluator: recursion on the skein rule through resolve().
LaurentPoly bracket_by_skein(const LinkDiagram& d);
LaurentPoly jones(const LinkDiagram& d, int threads = 1);
// V(q) = (q + q^{-1}) Ṽ(q^2); returns Ṽ in the variable t.
LaurentPoly convert_normalization(const LaurentPoly& v);

}  // namespace khoverant
