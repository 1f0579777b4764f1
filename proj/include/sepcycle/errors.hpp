#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sepcycle {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hull/primitive input that cannot produce a valid result (e.g. all points collinear).
struct DegenerateInput : Error {
    using Error::Error;
};

// A geometric construction step underflowed its tolerance (offset/displacement too small,
// miter join collapsed after all retries, ...).
struct DegenerateGeometry : Error {
    using Error::Error;
};

// A hypergraph operation that requires ordinary graphs (all edges of size 2).
struct NotAGraph : Error {
    using Error::Error;
};

// Brute-force size guard tripped.
struct TooLarge : Error {
    using Error::Error;
};

// Malformed instance document.
struct ParseError : Error {
    using Error::Error;
};

// Structurally valid document with invalid content (duplicate points, singleton edge, ...).
struct ValidationError : Error {
    using Error::Error;
};

// A supplied coloring has a monochromatic edge (or no red vertex at all).
struct InfeasibleColoring : Error {
    using Error::Error;
};

// The instance admits no separating cycle/polyhedron. Carries an odd-cycle witness
// when one is known.
struct Infeasible : Error {
    explicit Infeasible(const std::string& msg, std::vector<int> witness = {})
        : Error(msg), odd_cycle(std::move(witness)) {}
    std::vector<int> odd_cycle;
};

}  // namespace sepcycle
