#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "jlf/error.hpp"

namespace jlf {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer floor(const Rational& q)
{
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

inline Integer ceil(const Rational& q)
{
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

/// Representative of q mod Z in [0, 1).
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

/// q^e for any integer exponent; q must be nonzero when e < 0.
inline Rational pow(const Rational& q, long e)
{
    Integer num, den;
    const unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), a);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), a);
    if (e < 0) {
        if (num == 0)
            throw Error(ErrorKind::InvalidArgument, "negative power of zero");
        std::swap(num, den);
    }
    Rational out(num, den);
    out.canonicalize();
    return out;
}

inline Integer ipow(const Integer& base, unsigned long e)
{
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline std::int64_t to_int64(const Integer& z)
{
    if (!mpz_fits_slong_p(z.get_mpz_t()))
        throw Error(ErrorKind::OutOfRange, "integer does not fit in 64 bits: " + z.get_str());
    return mpz_get_si(z.get_mpz_t());
}

/// Canonical "p/q" form with q > 0; integers are written with "/1".
inline std::string to_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "p/q", "p" and an optional leading sign.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw Error(ErrorKind::InvalidArgument, "empty rational");
    auto valid_int = [](std::string_view t) {
        if (!t.empty() && (t.front() == '-' || t.front() == '+'))
            t.remove_prefix(1);
        if (t.empty())
            return false;
        for (char c : t)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    const auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
        throw Error(ErrorKind::InvalidArgument, "malformed rational '" + s + "'");
    if (num.front() == '+')
        num.erase(0, 1);
    Integer n(num), d(den);
    if (d == 0)
        throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

} // namespace jlf
