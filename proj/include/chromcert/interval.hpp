#pragma once

#include <mpfr.h>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "chromcert/exact.hpp"

namespace chromcert {

/// Outward-rounded real interval [lower, upper] with MPFR endpoints.
///
/// Every operation rounds the lower endpoint toward -inf and the upper
/// endpoint toward +inf, so the true value of the expression that built the
/// interval is always enclosed. Elementary functions use MPFR's correctly
/// rounded directed modes.
class CertifiedInterval {
public:
    explicit CertifiedInterval(mpfr_prec_t precision = 64) : prec_(precision) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }

    CertifiedInterval(const CertifiedInterval& other) : prec_(other.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }

    CertifiedInterval(CertifiedInterval&& other) noexcept : CertifiedInterval(other.prec_) { swap(other); }

    CertifiedInterval& operator=(CertifiedInterval other) noexcept {
        swap(other);
        return *this;
    }

    ~CertifiedInterval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    void swap(CertifiedInterval& other) noexcept {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
        std::swap(prec_, other.prec_);
    }

    static CertifiedInterval from_rational(const BigRational& q, mpfr_prec_t precision) {
        CertifiedInterval r(precision);
        mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    static CertifiedInterval from_int(long v, mpfr_prec_t precision) {
        return from_rational(BigRational(v), precision);
    }

    /// Euler's number from the series sum_{j<=N} 1/j!, whose tail is below
    /// 1/(N! * N). The enclosure is exact rational before rounding outward.
    static CertifiedInterval euler(mpfr_prec_t precision) {
        BigRational partial = 0;
        BigInt factorial = 1;
        unsigned long n = 0;
        const std::size_t target_bits = static_cast<std::size_t>(precision) + 16;
        for (;; ++n) {
            if (n > 0) factorial *= n;
            partial += BigRational(1, factorial);
            if (n >= 2 && mpz_sizeinbase(factorial.get_mpz_t(), 2) > target_bits) break;
        }
        BigRational tail(1, factorial * n);
        tail.canonicalize();
        CertifiedInterval r(precision);
        mpfr_set_q(r.lo_, partial.get_mpq_t(), MPFR_RNDD);
        BigRational upper = partial + tail;
        mpfr_set_q(r.hi_, upper.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    mpfr_prec_t precision() const { return prec_; }

    double lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

    /// Exact rational value of the lower / upper endpoint.
    BigRational lower() const { return endpoint_rational(lo_); }
    BigRational upper() const { return endpoint_rational(hi_); }

    std::string lower_string(int digits = 20) const { return format(lo_, digits, MPFR_RNDD); }
    std::string upper_string(int digits = 20) const { return format(hi_, digits, MPFR_RNDU); }

    bool is_positive() const { return mpfr_sgn(lo_) > 0; }

    /// True iff every point of the interval is >= q.
    bool certainly_ge(const BigRational& q) const { return mpfr_cmp_q(lo_, q.get_mpq_t()) >= 0; }
    bool certainly_le(const BigRational& q) const { return mpfr_cmp_q(hi_, q.get_mpq_t()) <= 0; }
    bool certainly_gt(const BigRational& q) const { return mpfr_cmp_q(lo_, q.get_mpq_t()) > 0; }
    bool certainly_lt(const BigRational& q) const { return mpfr_cmp_q(hi_, q.get_mpq_t()) < 0; }

    /// Every point of this interval is below every point of `o`.
    bool certainly_lt(const CertifiedInterval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
    bool certainly_le(const CertifiedInterval& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }

    /// The common ceiling of every point, if the interval does not straddle an integer boundary.
    std::optional<BigInt> common_ceiling() const {
        BigInt a = ceil_of(lower());
        BigInt b = ceil_of(upper());
        if (a != b) return std::nullopt;
        // an integer lower endpoint could be the true value or sit just below it
        if (mpfr_integer_p(lo_)) return std::nullopt;
        return a;
    }

    friend CertifiedInterval operator+(const CertifiedInterval& a, const CertifiedInterval& b) {
        CertifiedInterval r(std::max(a.prec_, b.prec_));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    friend CertifiedInterval operator-(const CertifiedInterval& a, const CertifiedInterval& b) {
        CertifiedInterval r(std::max(a.prec_, b.prec_));
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }

    friend CertifiedInterval operator*(const CertifiedInterval& a, const CertifiedInterval& b) {
        CertifiedInterval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        bool first = true;
        for (auto x : {a.lo_, a.hi_}) {
            for (auto y : {b.lo_, b.hi_}) {
                mpfr_mul(t, x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_mul(t, x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        }
        mpfr_clear(t);
        return r;
    }

    friend CertifiedInterval operator/(const CertifiedInterval& a, const CertifiedInterval& b) {
        if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw Error("interval division by an interval containing 0");
        CertifiedInterval inv(b.prec_);
        mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
        mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
        return a * inv;
    }

    /// x^n for a non-negative interval and integer n >= 0.
    CertifiedInterval pow_uint(unsigned long n) const {
        require_nonnegative("pow_uint");
        CertifiedInterval r(prec_);
        mpfr_pow_ui(r.lo_, lo_, n, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, hi_, n, MPFR_RNDU);
        return r;
    }

    /// x^(1/n) for a non-negative interval.
    CertifiedInterval root(unsigned long n) const {
        require_nonnegative("root");
        CertifiedInterval r(prec_);
        mpfr_rootn_ui(r.lo_, lo_, n, MPFR_RNDD);
        mpfr_rootn_ui(r.hi_, hi_, n, MPFR_RNDU);
        return r;
    }

    CertifiedInterval exp() const {
        CertifiedInterval r(prec_);
        mpfr_exp(r.lo_, lo_, MPFR_RNDD);
        mpfr_exp(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    CertifiedInterval log() const {
        if (!is_positive()) throw Error("interval log of a non-positive interval");
        CertifiedInterval r(prec_);
        mpfr_log(r.lo_, lo_, MPFR_RNDD);
        mpfr_log(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    /// base^exponent for a positive rational base and rational exponent.
    static CertifiedInterval pow_rational(const BigRational& base, const BigRational& exponent,
                                          mpfr_prec_t precision) {
        if (base <= 0) throw Error("pow_rational requires a positive base");
        if (exponent.get_den() == 1 && exponent >= 0) {
            return from_rational(pow(base, to_ulong(exponent.get_num())), precision);
        }
        auto lb = from_rational(base, precision).log();
        return (lb * from_rational(exponent, precision)).exp();
    }

    /// Width upper - lower, rounded up.
    double width() const {
        mpfr_t w;
        mpfr_init2(w, prec_);
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        double d = mpfr_get_d(w, MPFR_RNDU);
        mpfr_clear(w);
        return d;
    }

    nlohmann::json to_json(int digits = 20) const {
        return {{"lower", lower_string(digits)}, {"upper", upper_string(digits)}, {"precision", prec_}};
    }

private:
    void require_nonnegative(const char* what) const {
        if (mpfr_sgn(lo_) < 0) throw Error(std::string("interval ") + what + " requires a non-negative interval");
    }

    static BigRational endpoint_rational(const mpfr_t x) {
        if (!mpfr_number_p(x)) throw Error("non-finite interval endpoint");
        BigInt mant;
        mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
        BigRational q(mant);
        if (e >= 0) {
            q *= BigRational(pow(BigInt(2), static_cast<unsigned long>(e)));
        } else {
            q /= BigRational(pow(BigInt(2), static_cast<unsigned long>(-e)));
        }
        return q;
    }

    static std::string format(const mpfr_t x, int digits, mpfr_rnd_t rnd) {
        char* buf = nullptr;
        std::string fmt = "%." + std::to_string(digits) + "R*g";
        mpfr_asprintf(&buf, fmt.c_str(), rnd, x);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

/// Precision ladder used by adaptive certificates.
inline constexpr mpfr_prec_t kPrecisionLadder[] = {64, 128, 256, 512};

}  // namespace chromcert
