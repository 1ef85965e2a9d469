#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace chromcert {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Base error type for every failure the library reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an operation would exceed a configured size cap.
class SizeCapError : public Error {
public:
    using Error::Error;
};

inline BigRational make_rational(long num, long den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error("rational with zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

inline std::string to_string(const BigRational& q) { return q.get_str(10); }

inline nlohmann::json rational_to_json(const BigRational& q) {
    return {{"num", q.get_num().get_str(10)}, {"den", q.get_den().get_str(10)}};
}

inline BigRational rational_from_json(const nlohmann::json& j) {
    BigInt num(j.at("num").get<std::string>(), 10);
    BigInt den(j.at("den").get<std::string>(), 10);
    return make_rational(num, den);
}

/// Parses "p/q", "p", or a finite decimal like "8.01" into an exact rational.
inline BigRational parse_rational(const std::string& text) {
    if (text.empty()) throw Error("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        return make_rational(BigInt(text.substr(0, slash), 10), BigInt(text.substr(slash + 1), 10));
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return BigRational(BigInt(text, 10));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
    return make_rational(BigInt(digits, 10), den);
}

inline BigInt pow(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

inline BigRational pow(const BigRational& base, unsigned long exponent) {
    BigRational r(pow(base.get_num(), exponent), pow(base.get_den(), exponent));
    r.canonicalize();
    return r;
}

inline BigInt floor_of(const BigRational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline BigInt ceil_of(const BigRational& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline long to_long(const BigInt& x) {
    if (!x.fits_slong_p()) throw Error("integer does not fit in a machine word: " + x.get_str());
    return x.get_si();
}

inline unsigned long to_ulong(const BigInt& x) {
    if (!x.fits_ulong_p()) throw Error("integer does not fit in an unsigned machine word: " + x.get_str());
    return x.get_ui();
}

/// Upper estimate of the decimal digit count of |x|^e.
inline double digits_of_power(const BigInt& x, unsigned long e) {
    if (x == 0) return 1.0;
    double d = static_cast<double>(mpz_sizeinbase(x.get_mpz_t(), 10));
    return d * static_cast<double>(e) + 1.0;
}

/// Both sides of a raised comparison, kept for transcripts.
struct PowerComparison {
    std::strong_ordering order = std::strong_ordering::equal;
    BigInt lhs;  // integer proxy of coeff * base^exponent after clearing denominators
    BigInt rhs;  // integer proxy of the threshold
    unsigned long root = 1;  // both sides were raised to this power
};

/// Default guard against runaway big-integer sizes (decimal digits).
inline constexpr double kDefaultDigitLimit = 1e7;

class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// Decides the sign of coeff * base^exponent - threshold exactly.
///
/// coeff, base and threshold must be positive; exponent is any rational p/q
/// (q > 0 after canonicalization). The comparison is lifted to
/// coeff^q * base^p  vs  threshold^q, then denominators are cleared so both
/// sides are integers. Raising to the q-th power preserves order on positives.
inline PowerComparison compare_power(const BigRational& coeff, const BigRational& base,
                                     const BigRational& exponent, const BigRational& threshold,
                                     double digit_limit = kDefaultDigitLimit) {
    if (coeff <= 0 || base <= 0 || threshold <= 0) {
        throw Error("compare_power requires positive coefficient, base and threshold");
    }
    BigInt p = exponent.get_num();
    BigInt q = exponent.get_den();
    BigRational b = base;
    if (p < 0) {
        b = 1 / b;
        p = -p;
    }
    const unsigned long qe = to_ulong(q);
    const unsigned long pe = to_ulong(p);

    double est = std::max(digits_of_power(coeff.get_num(), qe) + digits_of_power(b.get_num(), pe) +
                              digits_of_power(threshold.get_den(), qe),
                          digits_of_power(threshold.get_num(), qe) + digits_of_power(coeff.get_den(), qe) +
                              digits_of_power(b.get_den(), pe));
    if (est > digit_limit) {
        throw ResourceLimitError("power comparison exceeds digit limit (~" + std::to_string(est) + " digits)");
    }

    // coeff^q b^p >= thr^q  <=>  cn^q bn^p td^q >= tn^q cd^q bd^p
    BigInt lhs = pow(coeff.get_num(), qe) * pow(b.get_num(), pe) * pow(threshold.get_den(), qe);
    BigInt rhs = pow(threshold.get_num(), qe) * pow(coeff.get_den(), qe) * pow(b.get_den(), pe);
    PowerComparison out;
    int c = cmp(lhs, rhs);
    out.order = c < 0 ? std::strong_ordering::less
              : c > 0 ? std::strong_ordering::greater
                      : std::strong_ordering::equal;
    out.lhs = std::move(lhs);
    out.rhs = std::move(rhs);
    out.root = qe;
    return out;
}

}  // namespace chromcert
