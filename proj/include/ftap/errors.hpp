#pragma once

#include <stdexcept>
#include <string>

namespace ftap {

/// Malformed or inconsistent input (bad dimensions, unparsable rationals,
/// invalid trees, densities that are not strictly positive, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace ftap
