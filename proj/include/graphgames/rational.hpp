#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace graphgames {

// Exact rational number. Values whose numerator and denominator fit in 64 bits
// are kept inline; anything larger is carried by a shared immutable mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(int n) : num_(n) {}
    Rational(long n) : num_(n) {}
    Rational(long long n) : num_(n) {}
    Rational(long long n, long long d) { *this = from_wide(n, d); }
    explicit Rational(const mpq_class& q) { *this = from_mpq(q); }

    static Rational parse(std::string_view text);

    bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
    int sign() const { return big_ ? sgn(*big_) : (num_ > 0) - (num_ < 0); }

    mpq_class to_mpq() const
    {
        if (big_) return *big_;
        return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    }
    double to_double() const { return big_ ? big_->get_d() : double(num_) / double(den_); }

    std::string str() const
    {
        if (big_) return big_->get_str();
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational operator-() const
    {
        if (!big_ && num_ != INT64_MIN) return raw(-num_, den_);
        return from_mpq(-to_mpq());
    }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                std::int64_t r;
                if (!__builtin_add_overflow(a.num_, b.num_, &r)) return raw(r, 1);
            } else {
                return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
            }
        }
        return from_mpq(a.to_mpq() + b.to_mpq());
    }
    friend Rational operator-(const Rational& a, const Rational& b)
    {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                std::int64_t r;
                if (!__builtin_sub_overflow(a.num_, b.num_, &r)) return raw(r, 1);
            } else {
                return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
            }
        }
        return from_mpq(a.to_mpq() - b.to_mpq());
    }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        if (!a.big_ && !b.big_) return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
        return from_mpq(a.to_mpq() * b.to_mpq());
    }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.sign() == 0) throw std::domain_error("division by zero");
        if (!a.big_ && !b.big_) return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
        return from_mpq(a.to_mpq() / b.to_mpq());
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b)
    {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        if (!a.big_ && !b.big_) {
            if (a.den_ == b.den_) return a.num_ <=> b.num_;
            wide l = wide(a.num_) * b.den_, r = wide(b.num_) * a.den_;
            return l < r ? std::strong_ordering::less : l > r ? std::strong_ordering::greater : std::strong_ordering::equal;
        }
        int c = cmp(a.to_mpq(), b.to_mpq());
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    std::size_t hash() const
    {
        if (big_) return std::hash<std::string>{}(big_->get_str());
        return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
    }

private:
    using wide = __int128;

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;

    static Rational raw(std::int64_t n, std::int64_t d)
    {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    static bool fits(wide v) { return v >= INT64_MIN && v <= INT64_MAX; }

    static unsigned __int128 gcd(unsigned __int128 a, unsigned __int128 b)
    {
        while (b) {
            unsigned __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static mpz_class to_mpz(wide v)
    {
        bool neg = v < 0;
        unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
        mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~std::uint64_t(0)));
        mpz_class z = (hi << 64) + lo;
        return neg ? mpz_class(-z) : z;
    }

    static Rational from_wide(wide n, wide d)
    {
        if (d == 0) throw std::domain_error("zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) return raw(0, 1);
        unsigned __int128 un = n < 0 ? -static_cast<unsigned __int128>(n) : static_cast<unsigned __int128>(n);
        unsigned __int128 g = gcd(un, static_cast<unsigned __int128>(d));
        if (g > 1) {
            n /= static_cast<wide>(g);
            d /= static_cast<wide>(g);
        }
        if (fits(n) && fits(d)) return raw(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
        return from_mpq(mpq_class(to_mpz(n), to_mpz(d)));
    }

    static Rational from_mpq(mpq_class q)
    {
        q.canonicalize();
        if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p())
            return raw(q.get_num().get_si(), q.get_den().get_si());
        Rational r;
        r.big_ = std::make_shared<const mpq_class>(std::move(q));
        return r;
    }
};

inline Rational Rational::parse(std::string_view text)
{
    auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'"); };
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    std::string_view s = text.substr(b, e - b);
    if (s.empty()) return fail();

    auto digits = [](std::string_view d) {
        if (d.empty()) return false;
        for (char c : d)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto integer = [&](std::string_view d, mpz_class& out) {
        bool neg = false;
        if (!d.empty() && (d[0] == '-' || d[0] == '+')) {
            neg = d[0] == '-';
            d.remove_prefix(1);
        }
        if (!digits(d)) return false;
        out = mpz_class(std::string(d), 10);
        if (neg) out = -out;
        return true;
    };

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class p, q;
        if (!integer(s.substr(0, slash), p)) return fail();
        std::string_view den = s.substr(slash + 1);
        if (!digits(den)) return fail();
        q = mpz_class(std::string(den), 10);
        if (q == 0) return fail();
        return Rational(mpq_class(p, q));
    }
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    std::string_view ip = s, fp;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        ip = s.substr(0, dot);
        fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) return fail();
        if (!ip.empty() && !digits(ip)) return fail();
        if (!fp.empty() && !digits(fp)) return fail();
    } else if (!digits(ip)) {
        return fail();
    }
    std::string all = std::string(ip) + std::string(fp);
    if (all.empty()) all = "0";
    mpz_class num(all, 10), den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    if (neg) num = -num;
    return Rational(mpq_class(num, den));
}

using Weight = Rational;

} // namespace graphgames

template <>
struct std::hash<graphgames::Rational> {
    std::size_t operator()(const graphgames::Rational& r) const { return r.hash(); }
};
