#pragma once

#include <string>
#include <string_view>

#include "chromcert/exact.hpp"

namespace chromcert {

/// List-size function x -> mult * ceil((a*x + b) / c) + offset.
///
/// Named members:
///   half            ceil((x+1)/2) + 1
///   bipartite_half  ceil(x/2) + 1
///   three_quarter   ceil(3(x+1)/4)
///   two_thirds      2 * ceil((x+2)/3)
///   constant(k)     k
struct KSpec {
    enum class Tag { half, bipartite_half, three_quarter, two_thirds_doubled, constant, affine };

    Tag tag = Tag::half;
    long mult = 1;
    long a = 1;
    long b = 1;
    long c = 2;
    long offset = 1;

    static KSpec half() { return {Tag::half, 1, 1, 1, 2, 1}; }
    static KSpec bipartite_half() { return {Tag::bipartite_half, 1, 1, 0, 2, 1}; }
    static KSpec three_quarter() { return {Tag::three_quarter, 1, 3, 3, 4, 0}; }
    static KSpec two_thirds_doubled() { return {Tag::two_thirds_doubled, 2, 1, 2, 3, 0}; }
    static KSpec constant(long k) { return validated({Tag::constant, 1, 0, 0, 1, k}); }
    static KSpec affine(long mult, long a, long b, long c, long offset) {
        return validated({Tag::affine, mult, a, b, c, offset});
    }

    long operator()(long x) const {
        if (x < 0) throw Error("KSpec evaluated at a negative argument");
        long num = a * x + b;
        long q = num >= 0 ? (num + c - 1) / c : -((-num) / c);
        return mult * q + offset;
    }

    /// Exact affine form of k on the residue class x = r (mod c):
    /// k(x) = slope * x + intercept for every such x >= 0.
    std::pair<BigRational, BigRational> affine_on_class(long r) const {
        long rr = ((r % c) + c) % c;
        long s = ((-(a * rr + b)) % c + c) % c;  // ceil((a x + b)/c) = (a x + b + s)/c
        BigRational slope = make_rational(mult * a, c);
        BigRational intercept = make_rational(mult * (b + s), c) + offset;
        return {slope, intercept};
    }

    std::string name() const {
        switch (tag) {
            case Tag::half: return "half";
            case Tag::bipartite_half: return "bipartite-half";
            case Tag::three_quarter: return "three-quarter";
            case Tag::two_thirds_doubled: return "two-thirds";
            case Tag::constant: return "const:" + std::to_string(offset);
            case Tag::affine:
                return "affine:" + std::to_string(mult) + "," + std::to_string(a) + "," + std::to_string(b) + "," +
                       std::to_string(c) + "," + std::to_string(offset);
        }
        return "?";
    }

    /// Parses half | bipartite-half | three-quarter | two-thirds | const:N | affine:m,a,b,c,off.
    static KSpec parse(std::string_view s) {
        if (s == "half") return half();
        if (s == "bipartite-half") return bipartite_half();
        if (s == "three-quarter" || s == "three_quarter") return three_quarter();
        if (s == "two-thirds" || s == "two_thirds" || s == "two_thirds_doubled") return two_thirds_doubled();
        if (s.starts_with("const:")) return constant(std::stol(std::string(s.substr(6))));
        if (s.starts_with("affine:")) {
            long v[5];
            std::string rest(s.substr(7));
            std::size_t pos = 0;
            for (int i = 0; i < 5; ++i) {
                std::size_t used = 0;
                v[i] = std::stol(rest.substr(pos), &used);
                pos += used;
                if (i < 4) {
                    if (pos >= rest.size() || rest[pos] != ',') throw Error("affine KSpec needs 5 comma-separated integers");
                    ++pos;
                }
            }
            if (pos != rest.size()) throw Error("trailing characters in affine KSpec");
            return affine(v[0], v[1], v[2], v[3], v[4]);
        }
        throw Error("unknown KSpec: " + std::string(s));
    }

    friend bool operator==(const KSpec& x, const KSpec& y) {
        return x.mult == y.mult && x.a == y.a && x.b == y.b && x.c == y.c && x.offset == y.offset;
    }

private:
    static KSpec validated(KSpec k) {
        if (k.c <= 0) throw Error("KSpec divisor must be positive");
        if (k.mult < 0 || k.a < 0) throw Error("KSpec must be non-decreasing (mult, a >= 0)");
        if (k(0) <= 0) throw Error("KSpec must be positive at 0");
        return k;
    }
};

}  // namespace chromcert
