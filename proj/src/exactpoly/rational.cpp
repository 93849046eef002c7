#include "hyperseq/rational.hpp"

#include <cctype>

#include "hyperseq/errors.hpp"

namespace hyperseq {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return BigInt(std::string(s), 10);
}

}  // namespace

Rat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rat(std::string_view text) {
    const auto s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_literal(s, true)) {
            throw ParseError("malformed rational '" + std::string(s) + "' (expected integer or p/q)");
        }
        return Rat(parse_integer(s));
    }
    const auto num = trim(s.substr(0, slash));
    const auto den = trim(s.substr(slash + 1));
    if (!is_integer_literal(num, true) || !is_integer_literal(den, false)) {
        throw ParseError("malformed rational '" + std::string(s) + "' (expected integer or p/q)");
    }
    const BigInt d = parse_integer(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    return make_rat(parse_integer(num), d);
}

std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rat& r) { return r.get_d(); }

Rat rat_from_double(double x) {
    // mpq_set_d is exact for finite doubles.
    return Rat(x);
}

bool is_canonical(const Rat& r) {
    if (r.get_den() <= 0) return false;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return g == 1;
}

}  // namespace hyperseq
