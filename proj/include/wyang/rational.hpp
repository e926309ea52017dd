#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace wyang {

// Exact rational number. Values whose numerator and denominator fit in
// int64 stay inline; anything larger is promoted to a GMP rational.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long long n, long long d) { assign_small(n, d); }
    explicit Rational(const mpq_class& q) { assign_big(q); }

    Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    static Rational parse(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
        q.canonicalize();
        return Rational(q);
    }

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
    int sign() const { return big_ ? sgn(*big_) : (num_ > 0) - (num_ < 0); }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
        return q;
    }

    // "p/q" in lowest terms, positive denominator, always with a slash.
    std::string to_fraction() const {
        if (big_) return big_->get_num().get_str() + "/" + big_->get_den().get_str();
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    std::string str() const {
        if (is_integer()) return big_ ? big_->get_num().get_str() : std::to_string(num_);
        return to_fraction();
    }

    Rational operator-() const {
        if (big_) return Rational(mpq_class(-*big_));
        if (num_ == INT64_MIN) return Rational(mpq_class(-to_mpq()));
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        if (!big_ && !o.big_) {
            if (den_ == 1 && o.den_ == 1) {
                long long s;
                if (!__builtin_add_overflow(num_, o.num_, &s)) {
                    num_ = s;
                    return *this;
                }
            } else {
                __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
                __int128 d = static_cast<__int128>(den_) * o.den_;
                if (assign_i128(n, d)) return *this;
            }
        }
        assign_big(to_mpq() + o.to_mpq());
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        if (!big_ && !o.big_) {
            if (den_ == 1 && o.den_ == 1) {
                long long p;
                if (!__builtin_mul_overflow(num_, o.num_, &p)) {
                    num_ = p;
                    return *this;
                }
            } else {
                __int128 n = static_cast<__int128>(num_) * o.num_;
                __int128 d = static_cast<__int128>(den_) * o.den_;
                if (assign_i128(n, d)) return *this;
            }
        }
        assign_big(to_mpq() * o.to_mpq());
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        assign_big(to_mpq() / o.to_mpq());
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical: big values never fit in int64
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_)
            return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
        return a.to_mpq() < b.to_mpq();
    }

    std::size_t hash() const {
        if (big_) return std::hash<std::string>{}(to_fraction());
        return std::hash<long long>{}(num_) * 31u + std::hash<long long>{}(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void assign_small(long long n, long long d) {
        if (d == 0) throw std::domain_error("zero denominator");
        if (!assign_i128(n, d)) assign_big(mpq_class(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d))));
    }

    bool assign_i128(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        if (n < INT64_MIN || n > INT64_MAX || d > INT64_MAX || n == INT64_MIN) return false;
        num_ = static_cast<long long>(n);
        den_ = static_cast<long long>(d);
        big_.reset();
        return true;
    }

    void assign_big(mpq_class q) {
        q.canonicalize();
        if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() && q.get_num() != LONG_MIN) {
            num_ = q.get_num().get_si();
            den_ = q.get_den().get_si();
            big_.reset();
        } else {
            big_ = std::make_unique<mpq_class>(std::move(q));
            num_ = 0;
            den_ = 1;
        }
    }

    long long num_ = 0;
    long long den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

}  // namespace wyang
