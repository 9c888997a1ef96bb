#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hfl {

/// Base class for every error thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An operator was called outside its mathematical domain
/// (order out of range, evaluation point outside [a,b], gamma at z <= 0).
struct domain_error : error {
    using error::error;
};

/// A problem instance violates one or more structural constraints.
/// Carries the complete list, not just the first violation.
struct validation_error : error {
    std::vector<std::string> issues;

    explicit validation_error(std::vector<std::string> list)
        : error(join(list)), issues(std::move(list)) {}

private:
    static std::string join(const std::vector<std::string>& list) {
        std::string out;
        for (const auto& item : list) {
            if (!out.empty()) out += "; ";
            out += item;
        }
        return out;
    }
};

/// Expression source could not be parsed. `position` is a byte offset.
struct parse_error : error {
    std::size_t position;

    parse_error(const std::string& what, std::size_t pos)
        : error(what), position(pos) {}
};

/// Expression evaluation failed (division by zero, sqrt of a negative,
/// non-finite result). `position` is the byte offset of the failing node.
struct eval_error : error {
    std::size_t position;

    eval_error(const std::string& what, std::size_t pos)
        : error(what), position(pos) {}
};

/// Picard iteration diverged. Carries the sup-norm delta trace.
struct divergence_error : error {
    std::vector<double> trace;

    divergence_error(const std::string& what, std::vector<double> deltas)
        : error(what), trace(std::move(deltas)) {}
};

/// The assembled linear system is numerically singular.
struct conditioning_error : error {
    double conditionEstimate;

    conditioning_error(const std::string& what, double cond)
        : error(what), conditionEstimate(cond) {}
};

/// A file could not be read or written.
struct io_error : error {
    using error::error;
};

}  // namespace hfl
