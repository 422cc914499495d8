#include "holoprec/gaussian.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <utility>

namespace holoprec {

namespace {

constexpr std::int64_t kMaxExponent = std::int64_t{1} << 62;

void check_exponent(std::int64_t e) {
    if (e < 0 || e >= kMaxExponent) {
        throw ConfigError("dyadic exponent out of range: " + std::to_string(e));
    }
}

}  // namespace

std::int64_t bit_length(const Int& n) {
    if (n == 0) return 0;
    return static_cast<std::int64_t>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

std::int64_t ceil_lg(const Int& n) {
    if (n <= 1) return 0;
    Int m = n - 1;
    return static_cast<std::int64_t>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

std::int64_t ceil_lg_ui(std::uint64_t n) {
    if (n <= 1) return 0;
    std::int64_t bits = 0;
    std::uint64_t m = n - 1;
    while (m != 0) {
        m >>= 1;
        ++bits;
    }
    return bits;
}

std::int64_t ceil_lg_fraction(const Int& num, const Int& den) {
    // smallest e with num * 2^e >= den (e may be negative).
    std::int64_t e = bit_length(den) - bit_length(num);
    auto holds = [&](std::int64_t cand) {
        Int lhs = num;
        if (cand >= 0) {
            mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(cand));
            return lhs >= den;
        }
        Int rhs = den;
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(-cand));
        return lhs >= rhs;
    };
    while (!holds(e)) ++e;
    while (e > bit_length(den) - bit_length(num) - 2 && holds(e - 1)) --e;
    return e;
}

GaussianInt GaussianInt::divexact(const GaussianInt& o) const {
    if (o.is_zero()) throw ConfigError("Gaussian division by zero");
    GaussianInt prod = *this * o.conj();
    Int n = o.norm();
    GaussianInt out;
    if (mpz_divisible_p(prod.re.get_mpz_t(), n.get_mpz_t()) == 0 ||
        mpz_divisible_p(prod.im.get_mpz_t(), n.get_mpz_t()) == 0) {
        throw ConfigError("inexact Gaussian division");
    }
    mpz_divexact(out.re.get_mpz_t(), prod.re.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(out.im.get_mpz_t(), prod.im.get_mpz_t(), n.get_mpz_t());
    return out;
}

GaussianInt operator*(const Int& a, const GaussianInt& b) { return {a * b.re, a * b.im}; }

Int modulus_ub(const GaussianInt& g) {
    Int n = g.norm();
    if (n == 0) return 0;
    Int root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    if (root * root != n) root += 1;
    return root;
}

Rat modulus_lb(const GaussianInt& g) {
    if (g.is_zero()) return Rat(0);
    Int l1 = abs(g.re) + abs(g.im);
    Rat out(g.norm(), l1);
    out.canonicalize();
    return out;
}

GaussianRational::GaussianRational(GaussianInt n, Int d) : num(std::move(n)), den(std::move(d)) {
    if (den <= 0) throw ConfigError("GaussianRational denominator must be positive");
}

GaussianRational::GaussianRational(const Rat& re, const Rat& im) {
    Int d = re.get_den() * im.get_den();
    num = GaussianInt(re.get_num() * im.get_den(), im.get_num() * re.get_den());
    den = std::move(d);
}

GaussianRational GaussianRational::operator+(const GaussianRational& o) const {
    return {GaussianInt(num.re * o.den + o.num.re * den, num.im * o.den + o.num.im * den),
            den * o.den};
}

GaussianRational GaussianRational::operator-(const GaussianRational& o) const {
    return *this + (-o);
}

GaussianRational GaussianRational::operator*(const GaussianRational& o) const {
    return {num * o.num, den * o.den};
}

GaussianRational GaussianRational::operator/(const GaussianRational& o) const {
    if (o.is_zero()) throw ConfigError("division by zero in Q(i)");
    // (n1/d1) / (n2/d2) = n1 * conj(n2) * d2 / (d1 * |n2|^2)
    GaussianInt n = num * o.num.conj();
    return {o.den * n, den * o.num.norm()};
}

bool GaussianRational::operator==(const GaussianRational& o) const {
    return num.re * o.den == o.num.re * den && num.im * o.den == o.num.im * den;
}

GaussianRational GaussianRational::normalized() const {
    if (num.is_zero()) return GaussianRational(GaussianInt(0), Int(1));
    Int g;
    mpz_gcd(g.get_mpz_t(), num.re.get_mpz_t(), num.im.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
    GaussianRational out;
    mpz_divexact(out.num.re.get_mpz_t(), num.re.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(out.num.im.get_mpz_t(), num.im.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(out.den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    return out;
}

Rat GaussianRational::norm() const {
    Rat out(num.norm(), den * den);
    out.canonicalize();
    return out;
}

Rat GaussianRational::modulus_upper() const {
    Rat out(modulus_ub(num), den);
    out.canonicalize();
    return out;
}

Rat GaussianRational::modulus_lower() const {
    Rat out = modulus_lb(num) / Rat(den);
    out.canonicalize();
    return out;
}

GaussianRational operator*(const Int& a, const GaussianRational& b) {
    return {a * b.num, b.den};
}

std::int64_t bit_size(const GaussianRational& x) {
    return ceil_lg(x.den) + ceil_lg(abs(x.num.re)) + ceil_lg(abs(x.num.im)) + 1;
}

std::int64_t bit_size(const GaussianInt& x) {
    return ceil_lg(abs(x.re)) + ceil_lg(abs(x.im)) + 1;
}

Dyadic::Dyadic(Int m, std::int64_t e) : mantissa(std::move(m)), exponent(e) {
    check_exponent(e);
}

Rat Dyadic::to_rational() const {
    Int d(1);
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
    Rat out(mantissa, d);
    out.canonicalize();
    return out;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    std::int64_t e = std::max(exponent, o.exponent);
    Int a = mantissa, b = o.mantissa;
    mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(e - exponent));
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(e - o.exponent));
    return {a + b, e};
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::operator*(const Dyadic& o) const {
    check_exponent(exponent + o.exponent);
    return {mantissa * o.mantissa, exponent + o.exponent};
}

bool Dyadic::operator==(const Dyadic& o) const {
    Dyadic a = normalized(), b = o.normalized();
    return a.mantissa == b.mantissa && a.exponent == b.exponent;
}

Dyadic Dyadic::normalized() const {
    if (mantissa == 0) return {Int(0), 0};
    auto tz = static_cast<std::int64_t>(mpz_scan1(mantissa.get_mpz_t(), 0));
    std::int64_t shift = std::min(tz, exponent);
    Int m = mantissa;
    mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    return {m, exponent - shift};
}

std::string Dyadic::to_string() const {
    return mantissa.get_str() + "*2^-" + std::to_string(exponent);
}

std::string Dyadic::to_decimal(std::size_t digits) const {
    bool neg = mantissa < 0;
    Int m = abs(mantissa);
    Int ipart = m;
    mpz_tdiv_q_2exp(ipart.get_mpz_t(), ipart.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
    Int frac = m;
    Int shifted;
    mpz_mul_2exp(shifted.get_mpz_t(), ipart.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
    frac -= shifted;
    Int pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    frac *= pow10;
    mpz_tdiv_q_2exp(frac.get_mpz_t(), frac.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
    std::string fs = frac.get_str();
    if (fs.size() < digits) fs.insert(fs.begin(), digits - fs.size(), '0');
    std::string out = neg ? "-" : "";
    out += ipart.get_str();
    if (digits > 0) out += "." + fs;
    return out;
}

GaussianRational DyadicComplex::to_gaussian_rational() const {
    std::int64_t e = std::max(re.exponent, im.exponent);
    Int r = re.mantissa, i = im.mantissa;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(e - re.exponent));
    mpz_mul_2exp(i.get_mpz_t(), i.get_mpz_t(), static_cast<mp_bitcnt_t>(e - im.exponent));
    Int d(1);
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return {GaussianInt(r, i), d};
}

std::string DyadicComplex::to_string() const {
    if (im.is_zero()) return re.to_string();
    return re.to_string() + (im.mantissa < 0 ? " - " : " + ") +
           Dyadic(abs(im.mantissa), im.exponent).to_string() + "*i";
}

std::int64_t trunc_exponent(const Rat& eps) {
    if (eps <= 0 || eps >= 1) {
        throw InvalidToleranceError("tolerance must satisfy 0 < eps < 1");
    }
    return ceil_lg_fraction(eps.get_num(), eps.get_den());
}

Dyadic trunc_quotient_at(const Int& num, const Int& den, std::int64_t e) {
    check_exponent(e);
    Int scaled = abs(num);
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    Int m;
    mpz_tdiv_q(m.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    if (num < 0) m = -m;
    return {m, e};
}

Dyadic trunc_scalar_at(const Rat& a, std::int64_t e) {
    return trunc_quotient_at(a.get_num(), a.get_den(), e);
}

Dyadic trunc_scalar(const Rat& a, const Rat& eps) {
    return trunc_scalar_at(a, trunc_exponent(eps));
}

DyadicComplex trunc_gaussian(const GaussianRational& a, const Rat& eps) {
    std::int64_t e = trunc_exponent(eps);
    return {trunc_quotient_at(a.num.re, a.den, e), trunc_quotient_at(a.num.im, a.den, e)};
}

namespace {

// One signed rational term "a" or "a/b", consuming from pos.
Rat parse_rat_term(const std::string& s, std::size_t& pos, bool& saw_digits) {
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    std::size_t digits_begin = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    saw_digits = pos > digits_begin;
    std::string numtext = s.substr(start, pos - start);
    if (!saw_digits) numtext += "1";  // bare "i" / "-i"
    Int num(numtext);
    Int den(1);
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        std::size_t dstart = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == dstart) throw ParseError("missing denominator in \"" + s + "\"");
        den = Int(s.substr(dstart, pos - dstart));
        if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
    }
    Rat out(num, den);
    out.canonicalize();
    return out;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

GaussianRational parse_gaussian_rational(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw ParseError("empty number");
    Rat re(0), im(0);
    std::size_t pos = 0;
    while (pos < s.size()) {
        bool saw_digits = false;
        Rat term = parse_rat_term(s, pos, saw_digits);
        bool imaginary = false;
        if (pos < s.size() && (s[pos] == '*' || s[pos] == 'i')) {
            if (s[pos] == '*') {
                ++pos;
                if (pos >= s.size() || s[pos] != 'i') {
                    throw ParseError("expected 'i' after '*' in \"" + text + "\"");
                }
            }
            ++pos;  // consume 'i'
            imaginary = true;
        } else if (!saw_digits) {
            throw ParseError("cannot parse \"" + text + "\" as a Gaussian rational");
        }
        if (imaginary) {
            im += term;
        } else {
            re += term;
        }
        if (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
            throw ParseError("trailing characters in \"" + text + "\"");
        }
    }
    return {re, im};
}

std::string to_string(const GaussianRational& x) {
    GaussianRational n = x.normalized();
    Rat re = n.real(), im = n.imag();
    if (im == 0) return rat_to_string(re);
    std::string istr = rat_to_string(abs(im)) + "*i";
    if (abs(im) == 1) istr = "i";
    if (re == 0) return (im < 0 ? "-" : "") + istr;
    return rat_to_string(re) + (im < 0 ? "-" : "+") + istr;
}

std::string to_string(const GaussianInt& x) {
    return to_string(GaussianRational(x, Int(1)));
}

}  // namespace holoprec
