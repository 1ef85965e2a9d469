#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "chromcert/certificate.hpp"
#include "chromcert/exact.hpp"
#include "chromcert/interval.hpp"
#include "chromcert/kspec.hpp"

namespace chromcert {

class NoTailAvailableError : public Error {
public:
    using Error::Error;
};

struct PropertyPParams {
    long delta0 = 524;
    long ell = 8;
    long t = 1;
    KSpec k = KSpec::half();
};

namespace detail {

inline nlohmann::json single_params(long delta, long ell, long t, const KSpec& k) {
    return {{"delta", delta}, {"ell", ell}, {"t", t}, {"k", k.name()}};
}

}  // namespace detail

/// Property (P) at a single delta:
///   item 1:  0 < t < ell < k(delta) < delta
///   item 2:  A r^E >= ell, with A = k(delta) - t delta/ell, r = t/(t+1),
///            E = (t+1)(delta - t delta/ell)/A = p/q in lowest terms,
/// decided exactly as A^q r^p >= ell^q over big integers.
inline Certificate property_p_single(long delta, long ell, long t, const KSpec& k,
                                     double digit_limit = kDefaultDigitLimit) {
    Certificate c;
    c.claim = "property-p-single";
    c.params = detail::single_params(delta, ell, t, k);
    c.method = "exact-rational";
    if (delta < 1) throw Error("property_p_single: delta must be positive");
    const long kd = k(delta);
    const bool t_pos = 0 < t, t_lt_ell = t < ell, ell_lt_k = ell < kd, k_lt_delta = kd < delta;
    c.add_step("item1: 0 < t", "0", "<", std::to_string(t), t_pos);
    c.add_step("item1: t < ell", std::to_string(t), "<", std::to_string(ell), t_lt_ell);
    c.add_step("item1: ell < k(delta)", std::to_string(ell), "<", std::to_string(kd), ell_lt_k);
    c.add_step("item1: k(delta) < delta", std::to_string(kd), "<", std::to_string(delta), k_lt_delta);
    if (!(t_pos && t_lt_ell && ell_lt_k && k_lt_delta)) {
        c.verdict = Verdict::certified_false;
        std::string failed = !t_pos ? "0 < t" : !t_lt_ell ? "t < ell" : !ell_lt_k ? "ell < k(delta)" : "k(delta) < delta";
        c.witness = {{"delta", delta}, {"failed", "item1"}, {"bound", failed}, {"k_delta", kd}};
        return c;
    }
    const BigRational tdl = make_rational(t * delta, ell);
    const BigRational A = BigRational(kd) - tdl;
    const BigRational r = make_rational(t, t + 1);
    c.witness = {{"delta", delta}, {"k_delta", kd}, {"A", rational_to_json(A)}, {"r", rational_to_json(r)}};
    if (A <= 0) {
        c.add_step("item2: A > 0", to_string(A), "<=", "0", false);
        c.verdict = Verdict::certified_false;
        c.witness["failed"] = "item2";
        return c;
    }
    const BigRational E = BigRational(t + 1) * (BigRational(delta) - tdl) / A;
    c.witness["exponent"] = rational_to_json(E);
    try {
        auto pc = compare_power(A, r, E, BigRational(ell), digit_limit);
        const bool holds = pc.order != std::strong_ordering::less;
        c.add_step("item2: A^q r^p >= ell^q (q=" + E.get_den().get_str() + ", p=" + E.get_num().get_str() + ")",
                   to_decimal(pc.lhs), relation_of(pc.order), to_decimal(pc.rhs), holds);
        c.verdict = holds ? Verdict::certified_true : Verdict::certified_false;
        if (!holds) c.witness["failed"] = "item2";
    } catch (const ResourceLimitError& e) {
        c.verdict = Verdict::undecided;
        c.witness["failed"] = "undecided-resource";
        c.witness["reason"] = e.what();
    }
    return c;
}

/// Property (P) for every delta in [delta0, delta_max]; the witness of a
/// failure is the least failing delta. Scans split over `threads` workers;
/// the result does not depend on the thread count.
inline Certificate property_p_range(long delta0, long delta_max, long ell, long t, const KSpec& k, int threads = 1) {
    if (delta0 > delta_max) throw Error("property_p_range: empty range");
    const std::size_t n = static_cast<std::size_t>(delta_max - delta0 + 1);
    std::vector<Certificate> singles(n);
    auto work = [&](std::size_t start, std::size_t stride) {
        for (std::size_t i = start; i < n; i += stride)
            singles[i] = property_p_single(delta0 + static_cast<long>(i), ell, t, k);
    };
    threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(work, static_cast<std::size_t>(w), static_cast<std::size_t>(threads));
        for (auto& th : pool) th.join();
    }
    Certificate c;
    c.claim = "property-p-range";
    c.params = {{"delta0", delta0}, {"delta_max", delta_max}, {"ell", ell}, {"t", t}, {"k", k.name()}};
    c.method = "exact-rational";
    c.verdict = Verdict::certified_true;
    for (std::size_t i = 0; i < n; ++i) {
        if (singles[i].verdict != Verdict::certified_true) {
            c.verdict = singles[i].verdict;
            c.witness = {{"delta", delta0 + static_cast<long>(i)}, {"detail", singles[i].witness}};
            break;
        }
    }
    c.add_step("all delta in range satisfy (P)", std::to_string(delta0), "..", std::to_string(delta_max),
               c.verdict == Verdict::certified_true);
    c.parts = std::move(singles);
    return c;
}

/// Linear data for a tail argument valid for all delta >= threshold:
///   A(delta) >= alpha delta + beta,  E(delta) <= upper_exponent,
///   (alpha T + beta) r^upper_exponent >= margin >= ell.
struct TailSchema {
    BigRational alpha;
    BigRational beta;
    BigRational upper_exponent;
    BigRational margin;
    long threshold = 540;

    nlohmann::json to_json() const {
        return {{"alpha", rational_to_json(alpha)},
                {"beta", rational_to_json(beta)},
                {"upper_exponent", rational_to_json(upper_exponent)},
                {"margin", rational_to_json(margin)},
                {"threshold", threshold}};
    }
};

/// Schema for k = half from k(delta) >= (delta+1)/2 + 1 >= delta/2 + 1:
/// alpha = 1/2 - t/ell, beta = 1, U = (t+1)(1 - t/ell)/alpha. The margin is
/// 8.01 for (ell, t) = (8, 1) and ell otherwise. For (8, 1) this gives
/// A >= 3 delta/8 + 1 and E <= 14/3.
inline TailSchema half_tail_schema(long ell, long t, long threshold = 540) {
    TailSchema s;
    s.alpha = make_rational(1, 2) - make_rational(t, ell);
    if (s.alpha <= 0) throw NoTailAvailableError("half tail needs t/ell < 1/2");
    s.beta = 1;
    s.upper_exponent = BigRational(t + 1) * (1 - make_rational(t, ell)) / s.alpha;
    s.margin = (ell == 8 && t == 1) ? make_rational(801, 100) : BigRational(ell);
    s.threshold = threshold;
    return s;
}

namespace detail {

/// Checks slope * x + intercept >= 0 (or > 0 when strict) for all integers
/// x >= from with x = r (mod period).
inline bool linear_nonneg_on_class(const BigRational& slope, const BigRational& intercept, long from, long r,
                                   long period, bool strict) {
    long first = from + (((r - from) % period) + period) % period;
    BigRational at = slope * BigRational(first) + intercept;
    if (slope < 0) return false;
    return strict ? at > 0 : at >= 0;
}

}  // namespace detail

/// Certifies Property (P) item 2 (and item 1) for all delta >= schema.threshold.
///
/// Exact checks, per residue class of delta modulo the KSpec divisor c (on
/// which k is affine):
///  (i)   A(delta) >= alpha delta + beta
///  (ii)  (t+1)(1 - t/ell) delta <= U (alpha delta + beta), so E(delta) <= U
///  (iii) (alpha T + beta) r^U >= margin, as a power comparison, and margin >= ell
///  (iv)  alpha >= 0 and alpha T + beta > 0, so A r^E >= (alpha delta + beta) r^U
///        >= (alpha T + beta) r^U for delta >= T (r < 1)
///  (v)   item 1: t < ell, ell < k(T) (k non-decreasing), k(delta) < delta
inline Certificate tail_certificate(long ell, long t, const KSpec& k, const TailSchema& s) {
    Certificate c;
    c.claim = "property-p-tail";
    c.params = {{"ell", ell}, {"t", t}, {"k", k.name()}, {"schema", s.to_json()}};
    c.method = "exact-rational";
    const long T = s.threshold;
    const BigRational tl = make_rational(t, ell);
    const BigRational r = make_rational(t, t + 1);
    bool ok = true;
    std::string first_failure;
    auto note = [&](const std::string& label, const std::string& lhs, const std::string& rel, const std::string& rhs,
                    bool holds) {
        c.add_step(label, lhs, rel, rhs, holds);
        if (!holds && ok) {
            ok = false;
            first_failure = label;
        }
    };

    for (long cls = 0; cls < k.c; ++cls) {
        auto [slope, icpt] = k.affine_on_class(cls);
        // A(delta) - (alpha delta + beta)
        const BigRational a_slope = slope - tl - s.alpha, a_icpt = icpt - s.beta;
        note("(i) A(delta) >= alpha*delta + beta on delta = " + std::to_string(cls) + " mod " + std::to_string(k.c),
             "(" + to_string(a_slope) + ")*delta + " + to_string(a_icpt), ">=", "0",
             detail::linear_nonneg_on_class(a_slope, a_icpt, T, cls, k.c, false));
        // item 1: delta - k(delta) > 0
        note("(v) k(delta) < delta on delta = " + std::to_string(cls) + " mod " + std::to_string(k.c),
             "(" + to_string(1 - slope) + ")*delta - " + to_string(icpt), ">", "0",
             detail::linear_nonneg_on_class(1 - slope, -icpt, T, cls, k.c, true));
    }
    const BigRational num_slope = BigRational(t + 1) * (1 - tl);
    const BigRational e_slope = s.upper_exponent * s.alpha - num_slope, e_icpt = s.upper_exponent * s.beta;
    note("(ii) (t+1)(1-t/ell)*delta <= U*(alpha*delta + beta)", "(" + to_string(e_slope) + ")*delta + " + to_string(e_icpt),
         ">=", "0", num_slope >= 0 && detail::linear_nonneg_on_class(e_slope, e_icpt, T, 0, 1, false));
    const BigRational lin_at_T = s.alpha * BigRational(T) + s.beta;
    note("(iv) alpha >= 0", to_string(s.alpha), ">=", "0", s.alpha >= 0);
    note("(iv) alpha*T + beta > 0", to_string(lin_at_T), ">", "0", lin_at_T > 0);
    note("(v) t < ell", std::to_string(t), "<", std::to_string(ell), 0 < t && t < ell);
    note("(v) ell < k(T)", std::to_string(ell), "<", std::to_string(k(T)), ell < k(T));
    note("(iii) margin >= ell", to_string(s.margin), ">=", std::to_string(ell), s.margin >= ell);

    if (lin_at_T > 0 && s.margin > 0) {
        auto pc = compare_power(lin_at_T, r, s.upper_exponent, s.margin);
        const bool holds = pc.order != std::strong_ordering::less;
        note("(iii) (alpha*T+beta)^q r^p >= margin^q (q=" + s.upper_exponent.get_den().get_str() +
                 ", p=" + s.upper_exponent.get_num().get_str() + ")",
             to_decimal(pc.lhs), relation_of(pc.order), to_decimal(pc.rhs), holds);
        auto value = CertifiedInterval::from_rational(lin_at_T, 256) *
                     CertifiedInterval::pow_rational(r, s.upper_exponent, 256);
        c.witness["value_at_threshold"] = value.to_json(12);
    }
    c.verdict = ok ? Verdict::certified_true : Verdict::certified_false;
    if (!ok) c.witness["failed"] = first_failure;
    c.witness["threshold"] = T;
    return c;
}

/// Tail for k = half with the derived schema (threshold 540 by default).
inline Certificate tail_certificate_half(long ell = 8, long t = 1, long threshold = 540) {
    auto c = tail_certificate(ell, t, KSpec::half(), half_tail_schema(ell, t, threshold));
    c.claim = "property-p-tail-half";
    return c;
}

struct Lemma23Overrides {
    long delta0 = 524;
    long ell = 8;
    long t = 1;
    KSpec k = KSpec::half();
    long threshold = 540;
    std::optional<TailSchema> schema;  // required for a tail with k other than half
    int threads = 1;
};

/// Range [delta0, threshold - 1] plus the tail from threshold on. Without a
/// tail (k other than half and no schema supplied) the certificate covers the
/// range only and says so in its claim.
inline Certificate certify_lemma23(const Lemma23Overrides& o = {}) {
    Certificate c;
    c.params = {{"delta0", o.delta0}, {"ell", o.ell}, {"t", o.t}, {"k", o.k.name()}, {"threshold", o.threshold}};
    c.method = "exact-rational";
    if (o.delta0 <= o.threshold - 1) {
        c.parts.push_back(property_p_range(o.delta0, o.threshold - 1, o.ell, o.t, o.k, o.threads));
    }
    std::optional<Certificate> tail;
    try {
        if (o.schema) {
            TailSchema s = *o.schema;
            s.threshold = std::max(o.threshold, o.delta0);
            tail = tail_certificate(o.ell, o.t, o.k, s);
        } else if (o.k == KSpec::half()) {
            tail = tail_certificate_half(o.ell, o.t, std::max(o.threshold, o.delta0));
        }
    } catch (const NoTailAvailableError&) {
        tail.reset();
    }
    if (tail) {
        c.claim = "property-p";
        c.parts.push_back(*tail);
    } else {
        c.claim = "property-p-range-only";
        c.witness["mode"] = "range-only";
    }
    c.verdict = conjunction(c.parts);
    for (const auto& p : c.parts) {
        if (p.verdict != Verdict::certified_true) {
            c.witness["failed_part"] = p.claim;
            c.witness["detail"] = p.witness;
            break;
        }
    }
    return c;
}

struct MinimalDelta0 {
    std::optional<long> delta0;
    bool range_only = false;
    Certificate certificate;
};

/// Least delta0 <= scan_limit such that (P) holds on [delta0, T - 1] and the
/// tail certifies delta >= T. Without a tail the answer is relative to the
/// scanned range [1, scan_limit] and labeled range-only.
inline MinimalDelta0 minimal_delta0(long ell, long t, const KSpec& k, long scan_limit, long threshold = 540,
                                    const std::optional<TailSchema>& schema = std::nullopt) {
    MinimalDelta0 out;
    std::optional<Certificate> tail;
    try {
        if (schema) tail = tail_certificate(ell, t, k, *schema);
        else if (k == KSpec::half()) tail = tail_certificate_half(ell, t, threshold);
    } catch (const NoTailAvailableError&) {
        tail.reset();
    }
    if (tail && !tail->is_true()) tail.reset();
    const long T = tail ? (schema ? schema->threshold : threshold) : scan_limit + 1;
    out.range_only = !tail;
    long last_fail = 0;
    for (long d = T - 1; d >= 1; --d) {
        if (!property_p_single(d, ell, t, k).is_true()) {
            last_fail = d;
            break;
        }
    }
    const long candidate = last_fail + 1;
    Certificate& c = out.certificate;
    c.claim = out.range_only ? "minimal-delta0-range-only" : "minimal-delta0";
    c.params = {{"ell", ell}, {"t", t}, {"k", k.name()}, {"scan_limit", scan_limit}, {"threshold", T}};
    c.method = "exact-rational";
    if (candidate <= scan_limit && candidate <= T) {
        out.delta0 = candidate;
        c.verdict = Verdict::certified_true;
        c.witness = {{"delta0", candidate}, {"last_failure", last_fail}};
        if (candidate <= T - 1) c.parts.push_back(property_p_range(candidate, T - 1, ell, t, k));
        if (last_fail > 0) c.parts.push_back(property_p_single(last_fail, ell, t, k));
        if (tail) c.parts.push_back(*tail);
    } else {
        c.verdict = Verdict::certified_false;
        c.witness = {{"delta0", nullptr}, {"last_failure", last_fail}};
        if (last_fail > 0) c.parts.push_back(property_p_single(last_fail, ell, t, k));
    }
    return out;
}

struct ConvexityPoint {
    BigRational z;
    CertifiedInterval second_derivative{200};  // closed form
    bool closed_form_positive = false;
};

struct ConvexityReport {
    std::vector<ConvexityPoint> points;
    double min_second_difference = 0;  // over interior grid points
    bool closed_form_all_positive = true;
    bool differences_ok = true;
    double tolerance = 1e-9;

    bool pass() const { return closed_form_all_positive && differences_ok; }
};

/// Convexity of h(z) = max{0, c z (1 - 1/b)^(ab/z)} on a grid, at 200-bit
/// working precision. The primary assertion is positivity of the closed-form
/// second derivative c (1-1/b)^(ab/z) (ab ln(1-1/b))^2 / z^3 (certified by
/// interval evaluation); corroborated by second divided differences
/// 2 h[z0, z1, z2] >= -tolerance.
inline ConvexityReport convexity_probe(const BigRational& c, const BigRational& a, const BigRational& b,
                                       const std::vector<BigRational>& grid, double tolerance = 1e-9) {
    if (c <= 0 || a <= 0 || b <= 1) throw Error("convexity_probe: need c > 0, a > 0, b > 1");
    if (grid.size() < 3) throw Error("convexity_probe: grid needs at least 3 points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] <= 0) throw Error("convexity_probe: grid points must be positive");
        if (i > 0 && grid[i] <= grid[i - 1]) throw Error("convexity_probe: grid must be strictly increasing");
    }
    constexpr mpfr_prec_t prec = 200;
    const BigRational base = 1 - 1 / b;
    const BigRational ab = a * b;
    ConvexityReport rep;
    rep.tolerance = tolerance;
    const auto log_base = CertifiedInterval::from_rational(base, prec).log();
    const auto kl = CertifiedInterval::from_rational(ab, prec) * log_base;
    const auto k2 = kl * kl;  // kl < 0 entirely, so the product is its square
    std::vector<CertifiedInterval> values;
    for (const auto& z : grid) {
        auto power = CertifiedInterval::pow_rational(base, ab / z, prec);
        ConvexityPoint p;
        p.z = z;
        p.second_derivative = CertifiedInterval::from_rational(c, prec) * power * k2 /
                              CertifiedInterval::from_rational(z * z * z, prec);
        p.closed_form_positive = p.second_derivative.is_positive();
        rep.closed_form_all_positive = rep.closed_form_all_positive && p.closed_form_positive;
        rep.points.push_back(std::move(p));
        // h(z) > 0 for z > 0, so the clamp is inactive on the grid
        values.push_back(CertifiedInterval::from_rational(c * z, prec) * power);
    }
    double min_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const auto h0 = CertifiedInterval::from_rational(grid[i] - grid[i - 1], prec);
        const auto h1 = CertifiedInterval::from_rational(grid[i + 1] - grid[i], prec);
        const auto span = CertifiedInterval::from_rational(grid[i + 1] - grid[i - 1], prec);
        auto d = CertifiedInterval::from_int(2, prec) * ((values[i + 1] - values[i]) / h1 - (values[i] - values[i - 1]) / h0) / span;
        min_d = std::min(min_d, d.lower_double());
    }
    rep.min_second_difference = min_d;
    rep.differences_ok = min_d >= -tolerance;
    return rep;
}

}  // namespace chromcert
