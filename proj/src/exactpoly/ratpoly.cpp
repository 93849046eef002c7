#include "hyperseq/ratpoly.hpp"

#include <algorithm>
#include <sstream>

#include "hyperseq/errors.hpp"

namespace hyperseq {

RatPoly::RatPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

RatPoly::RatPoly(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

RatPoly RatPoly::constant(const Rat& c) { return RatPoly(std::vector<Rat>{c}); }

RatPoly RatPoly::monomial(const Rat& c, std::size_t degree) {
    std::vector<Rat> v(degree + 1);
    v[degree] = c;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::identity() { return monomial(Rat(1), 1); }

Rat RatPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }

Rat RatPoly::leading() const { return coeffs_.empty() ? Rat(0) : coeffs_.back(); }

void RatPoly::trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

RatPoly& RatPoly::operator+=(const RatPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
}

RatPoly operator*(const RatPoly& lhs, const RatPoly& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    std::vector<Rat> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
    Rat term;
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        if (sgn(lhs.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            term = lhs.coeffs_[i] * rhs.coeffs_[j];
            out[i + j] += term;
        }
    }
    RatPoly r;
    r.coeffs_ = std::move(out);
    r.trim();
    return r;
}

RatPoly& RatPoly::operator*=(const RatPoly& rhs) {
    *this = *this * rhs;
    return *this;
}

RatPoly& RatPoly::operator*=(const Rat& s) {
    if (sgn(s) == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
}

RatPoly RatPoly::operator-() const {
    RatPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

RatPoly pow(const RatPoly& p, unsigned e) {
    if (e == 0) {
        if (p.is_zero()) throw DomainError("pow: 0^0 is undefined for the zero polynomial");
        return RatPoly::constant(Rat(1));
    }
    RatPoly result = RatPoly::constant(Rat(1));
    RatPoly base = p;
    while (true) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e == 0) break;
        base *= base;
    }
    return result;
}

RatPoly derivative(const RatPoly& p) {
    const auto c = p.coeffs();
    if (c.size() <= 1) return {};
    std::vector<Rat> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<long>(i);
    return RatPoly(std::move(d));
}

Rat eval(const RatPoly& p, const Rat& x) {
    Rat acc(0);
    const auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

std::complex<double> eval(const RatPoly& p, std::complex<double> z) {
    std::complex<double> acc(0.0);
    const auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + to_double(*it);
    return acc;
}

DivRem divrem(const RatPoly& p, const RatPoly& q) {
    if (q.is_zero()) throw DivisionByZero("divrem: division by the zero polynomial");
    if (p.degree() < q.degree()) return {RatPoly{}, p};
    const auto qc = q.coeffs();
    const std::size_t dq = qc.size() - 1;
    std::vector<Rat> rem(p.coeffs().begin(), p.coeffs().end());
    std::vector<Rat> quot(rem.size() - dq);
    const Rat inv_lead = 1 / qc.back();
    Rat t;
    for (std::size_t i = rem.size(); i-- > dq;) {
        if (sgn(rem[i]) == 0) continue;
        const Rat factor = rem[i] * inv_lead;
        quot[i - dq] = factor;
        for (std::size_t j = 0; j <= dq; ++j) {
            t = factor * qc[j];
            rem[i - dq + j] -= t;
        }
    }
    rem.resize(dq);
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

RatPoly monic(const RatPoly& p) {
    if (p.is_zero()) return p;
    return p * (1 / p.leading());
}

RatPoly primitive_part(const RatPoly& p) {
    if (p.is_zero()) return p;
    BigInt den_lcm(1);
    for (const auto& c : p.coeffs()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    std::vector<BigInt> ints;
    ints.reserve(p.coeffs().size());
    BigInt content(0);
    for (const auto& c : p.coeffs()) {
        BigInt v = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        ints.push_back(std::move(v));
    }
    if (sgn(ints.back()) < 0) content = -content;
    std::vector<Rat> out;
    out.reserve(ints.size());
    for (auto& v : ints) out.emplace_back(BigInt(v / content));
    return RatPoly(std::move(out));
}

namespace {

std::string replace_unicode_minus(std::string_view text) {
    // U+2212 MINUS SIGN is accepted as '-'.
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 &&
            static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

}  // namespace

RatPoly parse_poly(std::string_view text) {
    std::string s = replace_unicode_minus(text);
    auto first = s.find_first_not_of(" \t\r\n");
    auto last = s.find_last_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty polynomial literal");
    s = s.substr(first, last - first + 1);
    if (s.front() == '[') {
        if (s.back() != ']') throw ParseError("unterminated polynomial list '" + s + "'");
        s = s.substr(1, s.size() - 2);
    } else if (s.back() == ']') {
        throw ParseError("unbalanced ']' in polynomial list");
    }
    std::vector<Rat> coeffs;
    if (s.find_first_not_of(" \t") == std::string::npos) return {};
    std::size_t pos = 0;
    while (true) {
        const auto comma = s.find(',', pos);
        const auto item = std::string_view(s).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        coeffs.push_back(parse_rat(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return RatPoly(std::move(coeffs));
}

std::string to_list_string(const RatPoly& p) {
    std::string out = "[";
    bool first = true;
    for (const auto& c : p.coeffs()) {
        if (!first) out += ", ";
        out += to_string(c);
        first = false;
    }
    out += "]";
    return out;
}

std::string to_pretty_string(const RatPoly& p, char var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    const auto c = p.coeffs();
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (sgn(c[i]) == 0) continue;
        Rat mag = abs(c[i]);
        if (first) {
            if (sgn(c[i]) < 0) os << "-";
        } else {
            os << (sgn(c[i]) < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || mag != 1) os << to_string(mag);
        if (i >= 1) os << var;
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

}  // namespace hyperseq
