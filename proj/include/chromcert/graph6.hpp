#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chromcert/graph.hpp"

namespace chromcert {

/// Malformed graph6 record; offset is the byte position of the problem.
class Graph6Error : public Error {
public:
    Graph6Error(const std::string& what, std::size_t offset)
        : Error("malformed graph6 record at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

inline int graph6_byte(std::string_view text, std::size_t i) {
    if (i >= text.size()) throw Graph6Error("record truncated", i);
    int b = static_cast<unsigned char>(text[i]);
    if (b < 63 || b > 126) throw Graph6Error("byte out of range 63..126", i);
    return b - 63;
}

}  // namespace detail

/// Encodes g in graph6 (McKay): N(n) followed by the upper triangle packed
/// column-wise (x(0,1), x(0,2), x(1,2), x(0,3), ...) six bits per byte.
inline std::string encode_graph6(const Graph& g) {
    const std::uint64_t n = static_cast<std::uint64_t>(g.order());
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
    } else {
        out.push_back(126);
        out.push_back(126);
        for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
    }
    int acc = 0;
    int bits = 0;
    for (Vertex j = 1; j < g.order(); ++j) {
        for (Vertex i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++bits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                bits = 0;
            }
        }
    }
    if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
    return out;
}

/// Parses one graph6 record. A trailing newline and an optional ">>graph6<<" header are accepted.
inline Graph parse_graph6(std::string_view text) {
    constexpr std::string_view header = ">>graph6<<";
    std::size_t base = 0;
    if (text.starts_with(header)) base = header.size();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    std::string_view body = text;

    std::size_t pos = base;
    std::uint64_t n = 0;
    int first = detail::graph6_byte(body, pos);
    if (first < 63) {
        n = static_cast<std::uint64_t>(first);
        pos += 1;
    } else {
        int second = detail::graph6_byte(body, pos + 1);
        if (second < 63) {
            for (std::size_t k = 1; k <= 3; ++k) n = (n << 6) | static_cast<std::uint64_t>(detail::graph6_byte(body, pos + k));
            if (n <= 62) throw Graph6Error("non-canonical extended order", pos);
            pos += 4;
        } else {
            for (std::size_t k = 2; k <= 7; ++k) n = (n << 6) | static_cast<std::uint64_t>(detail::graph6_byte(body, pos + k));
            if (n <= 258047) throw Graph6Error("non-canonical extended order", pos);
            pos += 8;
        }
    }
    if (n > 1'000'000) throw Graph6Error("order too large", base);

    const std::uint64_t nbits = n * (n - (n > 0 ? 1 : 0)) / 2;
    const std::size_t nbytes = static_cast<std::size_t>((nbits + 5) / 6);
    if (body.size() != pos + nbytes) {
        throw Graph6Error("expected " + std::to_string(nbytes) + " adjacency bytes, found " +
                              std::to_string(body.size() > pos ? body.size() - pos : 0),
                          body.size() < pos + nbytes ? body.size() : pos + nbytes);
    }
    std::vector<Edge> es;
    std::uint64_t k = 0;
    for (Vertex j = 1; j < static_cast<Vertex>(n); ++j) {
        for (Vertex i = 0; i < j; ++i, ++k) {
            int byte = detail::graph6_byte(body, pos + static_cast<std::size_t>(k / 6));
            if ((byte >> (5 - k % 6)) & 1) es.emplace_back(i, j);
        }
    }
    // padding bits must be zero for the record to round-trip
    if (nbits % 6 != 0) {
        int last = detail::graph6_byte(body, pos + nbytes - 1);
        int pad = static_cast<int>(6 - nbits % 6);
        if (last & ((1 << pad) - 1)) throw Graph6Error("non-zero padding bits", pos + nbytes - 1);
    }
    for (std::size_t i = pos; i < body.size(); ++i) detail::graph6_byte(body, i);
    return Graph(static_cast<int>(n), es);
}

}  // namespace chromcert
