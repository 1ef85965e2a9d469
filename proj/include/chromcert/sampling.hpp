#pragma once

#include <cstdint>
#include <vector>

#include "chromcert/coloring.hpp"
#include "chromcert/rng.hpp"

namespace chromcert {

class NoColoringError : public Error {
public:
    using Error::Error;
};

/// Draws `count` exactly uniform proper L-colorings by self-reducibility.
///
/// Vertices are colored in the order 0..n-1; vertex v takes color c with
/// probability (#extensions with v = c) / (#extensions), both counted exactly.
/// The draws consume a single Rng(seed) stream, so the batch is a pure
/// function of (g, lists, seed, count).
inline std::vector<PartialColoring> sample_colorings(const Graph& g, const ListAssignment& lists, std::uint64_t seed,
                                                     std::size_t count) {
    return detail::with_engine(g, lists, [&](auto& e, const detail::ColorIndex& idx) {
        if (e.count() == 0) throw NoColoringError("no proper L-coloring exists");
        Rng rng(seed);
        std::vector<PartialColoring> out;
        out.reserve(count);
        std::vector<int> options;
        std::vector<BigInt> weights;
        for (std::size_t s = 0; s < count; ++s) {
            e.reset();
            for (Vertex v = 0; v < g.order(); ++v) {
                options.clear();
                weights.clear();
                BigInt total = 0;
                e.available(v).for_each([&](int c) {
                    e.precolor(v, c);
                    BigInt w = e.count();
                    if (w > 0) {
                        options.push_back(c);
                        total += w;
                        weights.push_back(std::move(w));
                    }
                });
                BigInt r = rng.below(total);
                std::size_t pick = 0;
                while (r >= weights[pick]) {
                    r -= weights[pick];
                    ++pick;
                }
                e.precolor(v, options[pick]);
            }
            PartialColoring c(g.order());
            for (Vertex v = 0; v < g.order(); ++v) c.assign(v, idx.colors[e.color_of(v)]);
            out.push_back(std::move(c));
        }
        return out;
    });
}

/// One uniform proper L-coloring; deterministic given the seed.
inline PartialColoring uniform_sample_coloring(const Graph& g, const ListAssignment& lists, std::uint64_t seed) {
    return sample_colorings(g, lists, seed, 1).front();
}

}  // namespace chromcert
