#pragma once

#include <cstddef>
#include <vector>

namespace hfl {

/// Real-valued samples of a function on the uniform grid
/// t_k = a + k*(b-a)/N, k = 0..N.
///
/// Invariants: b > a, N >= 2, values.size() == N+1, every entry finite.
/// Two GridFunctions are combinable only when (a, b, N) match exactly.
struct GridFunction {
    double a = 0.0;
    double b = 1.0;
    std::vector<double> values;

    /// Number of cells N (one less than the number of samples).
    std::size_t cells() const { return values.size() - 1; }

    /// Grid spacing h = (b-a)/N.
    double step() const { return (b - a) / static_cast<double>(cells()); }

    /// Node t_k. This expression is the definition of the grid; every
    /// operator in the library computes nodes exactly this way so that
    /// node comparisons are bitwise-stable.
    double node(std::size_t k) const {
        return a + static_cast<double>(k) * (b - a) / static_cast<double>(cells());
    }

    /// max_k |values[k]|
    double supNorm() const;

    /// All-zero samples on the given grid.
    static GridFunction zeros(double a, double b, std::size_t n);
};

/// Throws hfl::domain_error unless the invariants above hold.
void requireValid(const GridFunction& f);

/// True when (a, b, N) match exactly.
bool sameGrid(const GridFunction& f, const GridFunction& g);

}  // namespace hfl
