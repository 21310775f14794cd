#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace parclust {

// Exact nonnegative rationals are used for all facility-location arithmetic.
// Doubles coming from JSON are converted exactly (a finite double is a rational).
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat &x) { return x.convert_to<double>(); }

Rat rat_from_double(double x);

// Thrown when an instance admits no feasible solution.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string &msg) : std::runtime_error(msg) {}
};

// Thrown when an oracle is asked to enumerate beyond its hard size guard.
struct SizeGuardError : std::runtime_error {
    explicit SizeGuardError(const std::string &msg) : std::runtime_error(msg) {}
};

// Thrown when an internal pipeline invariant is violated. These indicate a
// bug, never a legal runtime state.
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string &msg) : std::logic_error(msg) {}
};

#define PARCLUST_CHECK(cond, msg)                                        \
    do {                                                                 \
        if (!(cond)) throw ::parclust::ContractViolation(msg);           \
    } while (0)

}  // namespace parclust
